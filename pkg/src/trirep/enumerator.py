"""Weight enumerators of codes and kernels, and the mod-e recovery maps."""

from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .code import (
    DEFAULT_CODEWORD_BUDGET, BudgetExceeded, CodeError, LinearCode, enumerate_codewords,
)
from .complex import KernelBasis


class EnumeratorError(ValueError):
    pass


class LaurentPolynomial:
    """Sparse polynomial in k variables with integer exponents and coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int = 1, terms: Mapping | Iterable = ()):
        if nvars < 1:
            raise EnumeratorError("need at least one variable")
        self.nvars = nvars
        acc: dict = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exps, c in items:
            exps = (exps,) if isinstance(exps, int) else tuple(int(x) for x in exps)
            if len(exps) != nvars:
                raise EnumeratorError(f"exponent vector {exps} has wrong length")
            acc[exps] = acc.get(exps, 0) + c
        self.terms = {k: v for k, v in sorted(acc.items()) if v != 0}

    @classmethod
    def one(cls, nvars: int = 1):
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, exps, coeff: int = 1):
        exps = (exps,) if isinstance(exps, int) else tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def from_counter(cls, counts: Counter, nvars: int = 1):
        return cls(nvars, counts.items())

    def _check(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        if other.nvars != self.nvars:
            raise EnumeratorError("variable count mismatch")
        return other

    def __eq__(self, other):
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(self.terms.items())))

    def __add__(self, other):
        other = self._check(other)
        return LaurentPolynomial(self.nvars, list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self):
        return LaurentPolynomial(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPolynomial(self.nvars, {k: v * other for k, v in self.terms.items()})
        other = self._check(other)
        out = []
        for a, x in self.terms.items():
            for b, y in other.terms.items():
                out.append((tuple(i + j for i, j in zip(a, b)), x * y))
        return LaurentPolynomial(self.nvars, out)

    __rmul__ = __mul__

    def map_exponents(self, fn, nvars: int | None = None):
        """New polynomial with every exponent vector replaced by fn(exps)."""
        return LaurentPolynomial(nvars or self.nvars,
                                 [(fn(k), v) for k, v in self.terms.items()])

    def substitute(self, weights: Sequence[int]):
        """Univariate image under x_j -> x^{weights[j]}."""
        if len(weights) != self.nvars:
            raise EnumeratorError("one weight per variable required")
        return self.map_exponents(lambda ex: (sum(a * w for a, w in zip(ex, weights)),), 1)

    def marginal(self):
        """Set every variable equal to x."""
        return self.substitute([1] * self.nvars)

    def evaluate(self, *values):
        if len(values) != self.nvars:
            raise EnumeratorError("one value per variable required")
        total = 0
        for exps, c in self.terms.items():
            term = Fraction(c)
            for v, a in zip(values, exps):
                term *= Fraction(v) ** a
            total += term
        return total

    def coefficient(self, exps) -> int:
        exps = (exps,) if isinstance(exps, int) else tuple(exps)
        return self.terms.get(exps, 0)

    def degree_range(self) -> tuple:
        """(min, max) total degree of the stored terms."""
        degs = [sum(k) for k in self.terms]
        return (min(degs), max(degs)) if degs else (0, 0)

    def to_json(self) -> dict:
        return {"vars": self.nvars,
                "terms": [{"exps": list(k), "coeff": v} for k, v in self.terms.items()]}

    @classmethod
    def from_json(cls, data: Mapping):
        try:
            k = int(data["vars"])
            return cls(k, [(tuple(t["exps"]), int(t["coeff"])) for t in data["terms"]])
        except (KeyError, TypeError) as err:
            raise EnumeratorError(f"malformed polynomial JSON: {err}") from None

    def __repr__(self):
        return f"LaurentPolynomial({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        names = ["x"] if self.nvars == 1 else [f"x{i + 1}" for i in range(self.nvars)]
        for exps, c in sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), kv[0])):
            mono = "*".join(n if a == 1 else f"{n}^{a}" for n, a in zip(names, exps) if a)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}" if self.nvars == 1 else f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def _nonzero(v) -> int:
    return sum(1 for x in v if x != 0)


# -- codes --------------------------------------------------------------------

def weight_enumerator(code: LinearCode, budget: int | None = None) -> LaurentPolynomial:
    counts = Counter(_nonzero(c.coords) for c in enumerate_codewords(code, budget))
    return LaurentPolynomial.from_counter(counts)


def extended_weight_enumerator(code: LinearCode, k: int, budget: int | None = None) -> LaurentPolynomial:
    """Enumerator of the codewords that use exactly k basis vectors."""
    counts = Counter(_nonzero(c.coords) for c in enumerate_codewords(code, budget)
                     if _nonzero(c.coeffs) == k)
    return LaurentPolynomial.from_counter(counts)


def _check_assignment(lam: Sequence[int], length: int, k: int):
    if len(lam) != length:
        raise EnumeratorError(f"assignment covers {len(lam)} of {length} coordinates")
    bad = [x for x in lam if not 1 <= x <= k]
    if bad:
        raise EnumeratorError(f"variable index out of range 1..{k}: {bad[0]}")


def _multi_exps(v, lam, k) -> tuple:
    out = [0] * k
    for x, j in zip(v, lam):
        if x != 0:
            out[j - 1] += 1
    return tuple(out)


def multivariate_weight_enumerator(code: LinearCode, lam: Sequence[int], k: int | None = None,
                                   budget: int | None = None) -> LaurentPolynomial:
    """Sum over codewords of prod_i x_{lam[i]} over the support; lam is 1-based."""
    k = max(lam, default=1) if k is None else k
    _check_assignment(lam, code.length, k)
    counts = Counter(_multi_exps(c.coords, lam, k) for c in enumerate_codewords(code, budget))
    return LaurentPolynomial.from_counter(counts, k)


# -- kernels ------------------------------------------------------------------

def kernel_codewords(K: KernelBasis, budget: int | None = None) -> Iterator[tuple]:
    """Every vector of the span of K, lexicographic in the coefficients."""
    F = K.field
    if not F.is_finite:
        raise CodeError("cannot enumerate a kernel over Q")
    budget = DEFAULT_CODEWORD_BUDGET if budget is None else budget
    if F.modulus ** K.dimension > budget:
        raise BudgetExceeded(f"{F.modulus}^{K.dimension} kernel vectors exceeds budget {budget}")
    n = len(K.triangles)
    sparse = [[(i, x) for i, x in enumerate(v) if x != 0] for v in K.vectors]
    for coeffs in itertools.product(F.elements(), repeat=K.dimension):
        out = [F.zero] * n
        for a, vec in zip(coeffs, sparse):
            if a == 0:
                continue
            for i, x in vec:
                out[i] = F.add(out[i], F.mul(a, x))
        yield tuple(out)


def kernel_weight_enumerator(K: KernelBasis, budget: int | None = None) -> LaurentPolynomial:
    counts = Counter(_nonzero(v) for v in kernel_codewords(K, budget))
    return LaurentPolynomial.from_counter(counts)


def kernel_extended_weight_enumerator(rep, k: int, budget: int | None = None) -> LaurentPolynomial:
    """Kernel vectors of degree k, the degree read off through inverse_f."""
    counts = Counter()
    for v in kernel_codewords(rep.kernel, budget):
        c = rep.inverse_f(v)
        if _nonzero(c.coeffs) == k:
            counts[_nonzero(v)] += 1
    return LaurentPolynomial.from_counter(counts)


def kernel_multivariate_enumerator(K: KernelBasis, lam: Mapping, k: int,
                                   budget: int | None = None) -> LaurentPolynomial:
    """lam maps every triangle of K to a variable index in 1..k."""
    missing = [t for t in K.triangles if t not in lam]
    if missing:
        raise EnumeratorError(f"assignment misses triangle {missing[0]}")
    order = [lam[t] for t in K.triangles]
    _check_assignment(order, len(order), k)
    counts = Counter(_multi_exps(v, order, k) for v in kernel_codewords(K, budget))
    return LaurentPolynomial.from_counter(counts, k)


def representation_assignment(rep, lam: Sequence[int], k: int | None = None) -> dict:
    """Lift a coordinate assignment of C to the triangles of the representation.

    Both copies mu(i), mu(i + n) get lam[i]; every other triangle gets the
    reserved index k, which may coincide with a class already in use.
    """
    n = rep.n
    k = max(lam, default=1) if k is None else k
    _check_assignment(lam, n, k)
    out = {t: k for t in rep.triangles}
    for i, t in enumerate(rep.mu):
        out[t] = lam[i % n]
    return out


# -- recovery -----------------------------------------------------------------

def _halve(x: int) -> int:
    if x % 2:
        raise EnumeratorError(f"odd exponent {x} where an even one was expected")
    return x // 2


def recover_code_enumerator(poly: LaurentPolynomial, e: int, halve: bool = True) -> LaurentPolynomial:
    """Map a_i x^i to a_i x^{(i mod e)/2} (or x^{i mod e} without halving)."""
    if e <= 0:
        raise EnumeratorError("e must be positive")
    if poly.nvars != 1:
        raise EnumeratorError("univariate recovery needs a univariate polynomial")
    fn = (lambda ex: (_halve(ex[0] % e),)) if halve else (lambda ex: (ex[0] % e,))
    return poly.map_exponents(fn)


def recover_multivariate(poly: LaurentPolynomial, e: int, reserved: int | None = None,
                         halve: bool = True) -> LaurentPolynomial:
    """Reduce the reserved variable (1-based, default the last) mod e, then halve all."""
    if e <= 0:
        raise EnumeratorError("e must be positive")
    r = poly.nvars if reserved is None else reserved
    if not 1 <= r <= poly.nvars:
        raise EnumeratorError(f"reserved variable {r} out of range")

    def fn(ex):
        ex = tuple(x % e if j == r - 1 else x for j, x in enumerate(ex))
        return tuple(_halve(x) for x in ex) if halve else ex
    return poly.map_exponents(fn)


__all__ = [
    "LaurentPolynomial", "EnumeratorError", "weight_enumerator", "extended_weight_enumerator",
    "multivariate_weight_enumerator", "kernel_codewords", "kernel_weight_enumerator",
    "kernel_extended_weight_enumerator", "kernel_multivariate_enumerator",
    "representation_assignment", "recover_code_enumerator", "recover_multivariate",
]
