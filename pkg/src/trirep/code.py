"""Linear codes over GF(p) and Q.

Coordinates are 0-based throughout the Python API.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field as dc_field
from typing import Iterator, Sequence

from . import linalg
from .field import FieldSpec, integerize_basis

DEFAULT_CODEWORD_BUDGET = int(os.environ.get("TRIREP_BUDGET_CODEWORDS", 10**7))


class CodeError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed the configured size cap."""


@dataclass(frozen=True)
class Codeword:
    coords: tuple
    coeffs: tuple | None = None

    @property
    def support(self) -> frozenset:
        return frozenset(i for i, x in enumerate(self.coords) if x != 0)

    @property
    def mask(self) -> int:
        m = 0
        for i, x in enumerate(self.coords):
            if x != 0:
                m |= 1 << i
        return m


def weight(c) -> int:
    """Number of nonzero coordinates of a codeword or plain vector."""
    coords = c.coords if isinstance(c, Codeword) else c
    return sum(1 for x in coords if x != 0)


@dataclass(frozen=True)
class LinearCode:
    field: FieldSpec
    length: int
    basis: tuple = dc_field(default=())

    def __post_init__(self):
        F = self.field
        if self.length < 0:
            raise CodeError("negative length")
        basis = []
        for v in self.basis:
            v = tuple(F.coerce(x) for x in v)
            if len(v) != self.length:
                raise CodeError(f"basis vector of length {len(v)}, expected {self.length}")
            basis.append(v)
        if linalg.rank(F, basis) != len(basis):
            raise CodeError("basis vectors are linearly dependent")
        object.__setattr__(self, "basis", tuple(basis))

    @classmethod
    def spanned_by(cls, field: FieldSpec, length: int, vectors: Sequence[Sequence]) -> "LinearCode":
        """Code spanned by arbitrary vectors; a dependent family is thinned out."""
        vectors = [tuple(field.coerce(x) for x in v) for v in vectors]
        keep = linalg.independent_subset(field, vectors)
        return cls(field, length, tuple(vectors[i] for i in keep))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def size(self) -> int | None:
        return self.field.modulus ** self.dimension if self.field.is_finite else None

    def combine(self, coeffs: Sequence) -> tuple:
        F = self.field
        out = [F.zero] * self.length
        for a, b in zip(coeffs, self.basis):
            if a == 0:
                continue
            for i, x in enumerate(b):
                if x != 0:
                    out[i] = F.add(out[i], F.mul(a, x))
        return tuple(out)

    def contains(self, vector: Sequence) -> bool:
        return self.coefficients(vector) is not None

    def coefficients(self, vector: Sequence) -> list | None:
        F = self.field
        vector = tuple(F.coerce(x) for x in vector)
        if len(vector) != self.length:
            raise CodeError("length mismatch")
        if not self.basis:
            return [] if all(x == 0 for x in vector) else None
        return linalg.express(F, self.basis, vector)

    def same_code(self, other: "LinearCode") -> bool:
        return (self.field == other.field and self.length == other.length
                and linalg.same_row_space(self.field, self.basis, other.basis))


def _check_budget(code: LinearCode, budget: int | None):
    if not code.field.is_finite:
        raise CodeError("cannot enumerate a code over Q")
    budget = DEFAULT_CODEWORD_BUDGET if budget is None else budget
    size = code.size()
    if size > budget:
        raise BudgetExceeded(
            f"{code.field}^{code.dimension} = {size} codewords exceeds budget {budget}")


def enumerate_codewords(code: LinearCode, budget: int | None = None) -> Iterator[Codeword]:
    """All codewords with their coefficient vectors, lexicographic in the coefficients."""
    _check_budget(code, budget)
    for coeffs in itertools.product(code.field.elements(), repeat=code.dimension):
        yield Codeword(code.combine(coeffs), tuple(coeffs))


def puncture(code: LinearCode, S) -> LinearCode:
    """Delete the coordinates in S (0-based) from every codeword."""
    S = set(S)
    bad = [i for i in S if not 0 <= i < code.length]
    if bad:
        raise CodeError(f"puncture index out of range: {sorted(bad)}")
    keep = [i for i in range(code.length) if i not in S]
    vectors = [tuple(b[i] for i in keep) for b in code.basis]
    return LinearCode.spanned_by(code.field, len(keep), vectors)


def minimal_supports(masks) -> set[int]:
    """Support masks that strictly contain no other nonzero support in the family."""
    distinct = sorted(set(m for m in masks if m), key=lambda m: bin(m).count("1"))
    minimal = []
    for m in distinct:
        if not any((s & m) == s for s in minimal):
            minimal.append(m)
    return set(minimal)


def minimal_codewords(code: LinearCode, budget: int | None = None) -> list[Codeword]:
    """Nonzero codewords whose support contains no strictly smaller nonzero support."""
    words = list(enumerate_codewords(code, budget))
    minimal = minimal_supports(w.mask for w in words)
    return [w for w in words if w.mask in minimal]


def degree(c, basis_or_code) -> int:
    """Number of nonzero coefficients in the expansion of c over the basis."""
    if isinstance(c, Codeword) and c.coeffs is not None:
        return sum(1 for a in c.coeffs if a != 0)
    code = basis_or_code
    coords = c.coords if isinstance(c, Codeword) else c
    coeffs = code.coefficients(coords)
    if coeffs is None:
        raise CodeError("vector is not in the span of the basis")
    return sum(1 for a in coeffs if a != 0)


def double_code(code: LinearCode) -> LinearCode:
    """Each basis vector concatenated with itself; the code of length 2n."""
    return LinearCode(code.field, 2 * code.length, tuple(b + b for b in code.basis))


def systematic_form(code: LinearCode) -> LinearCode:
    """Same code with its basis in reduced row echelon form."""
    rref = linalg.reduced_row_echelon(code.field, code.basis, code.length)
    return LinearCode(code.field, code.length, tuple(rref))


def is_representable_basis(code: LinearCode) -> tuple[bool, LinearCode]:
    """Check that every basis vector lies in a cyclic additive subgroup.

    Over GF(p) the additive group is cyclic, so any basis qualifies. Over Q a
    vector qualifies once it is integral; the witness is the integerized basis.
    """
    if code.field.is_finite:
        return True, code
    scaled = integerize_basis(code.basis)
    return True, LinearCode(code.field, code.length, tuple(scaled))
