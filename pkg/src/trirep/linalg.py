"""Sparse exact Gaussian elimination over a :class:`FieldSpec`.

Rows are ``dict[int, value]`` with no stored zeros. The echelon is kept fully
reduced: every pivot row has a 1 at its pivot and no entry at any other pivot
column, so reducing a new row needs one pass over its pivot columns.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Sequence

from .field import FieldSpec


class SparseEchelon:
    def __init__(self, field: FieldSpec):
        self.field = field
        self.pivots: dict[int, dict] = {}
        # column -> pivot columns whose rows hold a non-pivot entry there
        self._users: dict[int, set[int]] = defaultdict(set)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _axpy(self, target: dict, coeff, src: dict, owner: int | None = None):
        """target -= coeff * src, in place; keeps the column index of `owner`."""
        F = self.field
        for c, v in src.items():
            old = target.get(c)
            new = F.neg(F.mul(coeff, v)) if old is None else F.sub(old, F.mul(coeff, v))
            if new == 0:
                if old is not None:
                    del target[c]
                    if owner is not None:
                        self._users[c].discard(owner)
            else:
                target[c] = new
                if owner is not None and old is None:
                    self._users[c].add(owner)

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        for c in [c for c in row if c in self.pivots]:
            coeff = row.get(c)
            if coeff is not None:
                self._axpy(row, coeff, self.pivots[c])
        return row

    def add_row(self, row: dict) -> int | None:
        """Insert a row; return its pivot column, or None if it was dependent."""
        F = self.field
        row = self.reduce({c: v for c, v in row.items() if v != 0})
        if not row:
            return None
        piv = min(row)
        scale = F.inv(row[piv])
        if scale != 1:
            row = {c: F.mul(v, scale) for c, v in row.items()}
        for owner in list(self._users.get(piv, ())):
            orow = self.pivots[owner]
            coeff = orow[piv]
            self._axpy(orow, coeff, row, owner=owner)
        self._users.pop(piv, None)
        self.pivots[piv] = row
        for c in row:
            if c != piv:
                self._users[c].add(piv)
        return piv

    def kernel_basis(self, ncols: int) -> list[dict]:
        """Null-space basis of the inserted rows: one vector per free column."""
        F = self.field
        basis = []
        for f in range(ncols):
            if f in self.pivots:
                continue
            vec = {f: F.one}
            for owner in self._users.get(f, ()):
                vec[owner] = F.neg(self.pivots[owner][f])
            basis.append(vec)
        return basis


def rows_from_dense(field: FieldSpec, vectors: Iterable[Sequence]) -> list[dict]:
    out = []
    for v in vectors:
        v = (field.coerce(x) for x in v)
        out.append({i: x for i, x in enumerate(v) if x != 0})
    return out


def rank(field: FieldSpec, vectors: Iterable[Sequence]) -> int:
    ech = SparseEchelon(field)
    for r in rows_from_dense(field, vectors):
        ech.add_row(r)
    return ech.rank


def independent_subset(field: FieldSpec, vectors: Sequence[Sequence]) -> list[int]:
    """Indices of a maximal independent subfamily, greedily in input order."""
    ech = SparseEchelon(field)
    keep = []
    for i, r in enumerate(rows_from_dense(field, vectors)):
        if ech.add_row(r) is not None:
            keep.append(i)
    return keep


def reduced_row_echelon(field: FieldSpec, vectors: Sequence[Sequence], length: int) -> list[tuple]:
    """Reduced row echelon basis of the row space, ordered by pivot column."""
    ech = SparseEchelon(field)
    for r in rows_from_dense(field, vectors):
        ech.add_row(r)
    out = []
    for piv in sorted(ech.pivots):
        row = ech.pivots[piv]
        out.append(tuple(row.get(i, field.zero) for i in range(length)))
    return out


def express(field: FieldSpec, basis: Sequence[Sequence], vector: Sequence) -> list | None:
    """Coefficients a with sum a_i basis_i == vector, or None if not in the span.

    `basis` must be linearly independent. Each basis row is tagged with an
    identity block so the residual of `vector` carries minus its coefficients.
    """
    n = len(vector)
    d = len(basis)
    ech = SparseEchelon(field)
    for i, b in enumerate(basis):
        row = rows_from_dense(field, [b])[0]
        row[n + i] = field.one
        piv = ech.add_row(row)
        if piv is None or piv >= n:
            raise ValueError("basis is linearly dependent")
    res = ech.reduce(rows_from_dense(field, [vector])[0])
    if any(c < n for c in res):
        return None
    return [field.neg(res.get(n + i, field.zero)) for i in range(d)]


def same_row_space(field: FieldSpec, a: Sequence[Sequence], b: Sequence[Sequence]) -> bool:
    ra, rb = rank(field, a), rank(field, b)
    return ra == rb == rank(field, list(a) + list(b))
