"""Exact arithmetic over GF(p) and the rationals.

Linear algebra in this package works on *raw* values for speed: plain ``int``
residues in ``[0, p)`` for GF(p) and :class:`fractions.Fraction` for Q.
:class:`FieldSpec` owns the arithmetic on raw values; :class:`FieldElement`
is the checked, operator-friendly wrapper used at API boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, isqrt
from typing import Iterable, Sequence


class FieldError(ValueError):
    """Invalid field specification or illegal field operation."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    kind: str  # "gf" or "q"
    modulus: int | None = None

    def __post_init__(self):
        if self.kind == "gf":
            if not isinstance(self.modulus, int) or not is_prime(self.modulus):
                raise FieldError(f"GF modulus must be prime, got {self.modulus!r}")
        elif self.kind == "q":
            if self.modulus is not None:
                raise FieldError("rationals take no modulus")
        else:
            raise FieldError(f"unknown field kind {self.kind!r}")

    @classmethod
    def gf(cls, p: int) -> "FieldSpec":
        return cls("gf", p)

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("q")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse the literal syntax ``gf:<p>`` or ``q``."""
        text = text.strip().lower()
        if text == "q":
            return cls.rationals()
        if text.startswith("gf:"):
            try:
                p = int(text[3:])
            except ValueError:
                raise FieldError(f"bad field literal {text!r}") from None
            return cls.gf(p)
        raise FieldError(f"bad field literal {text!r}")

    @property
    def is_finite(self) -> bool:
        return self.kind == "gf"

    @property
    def order(self) -> int | None:
        return self.modulus

    @property
    def literal(self) -> str:
        return f"gf:{self.modulus}" if self.kind == "gf" else "q"

    def __str__(self):
        return f"GF({self.modulus})" if self.kind == "gf" else "Q"

    # -- raw-value arithmetic -------------------------------------------------

    @property
    def zero(self):
        return 0 if self.kind == "gf" else Fraction(0)

    @property
    def one(self):
        return 1 if self.kind == "gf" else Fraction(1)

    def coerce(self, x):
        """Convert ints, Fractions, literals or elements to a raw value."""
        if isinstance(x, FieldElement):
            if x.field != self:
                raise FieldError(f"element of {x.field} used in {self}")
            return x.value
        if isinstance(x, str):
            return self.parse_literal(x)
        if self.kind == "gf":
            if isinstance(x, Fraction):
                if x.denominator % self.modulus == 0:
                    raise FieldError(f"{x} has no image in {self}")
                return x.numerator * pow(x.denominator, -1, self.modulus) % self.modulus
            return int(x) % self.modulus
        return Fraction(x)

    def parse_literal(self, tok: str):
        tok = tok.strip()
        try:
            if "/" in tok:
                num, den = tok.split("/")
                return self.coerce(Fraction(int(num), int(den)))
            return self.coerce(int(tok))
        except (ValueError, ZeroDivisionError):
            raise FieldError(f"bad {self} literal {tok!r}") from None

    def format(self, x) -> str:
        return str(x)

    def add(self, a, b):
        return (a + b) % self.modulus if self.kind == "gf" else a + b

    def sub(self, a, b):
        return (a - b) % self.modulus if self.kind == "gf" else a - b

    def neg(self, a):
        return -a % self.modulus if self.kind == "gf" else -a

    def mul(self, a, b):
        return a * b % self.modulus if self.kind == "gf" else a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        return pow(a, -1, self.modulus) if self.kind == "gf" else 1 / Fraction(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self) -> range:
        if self.kind != "gf":
            raise FieldError("Q is infinite")
        return range(self.modulus)

    def __call__(self, x) -> "FieldElement":
        return FieldElement(self, self.coerce(x))


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: object

    def _check(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldError(f"mixed-field operands: {self.field} and {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.add(self.value, other.value))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.sub(self.value, other.value))

    def __rsub__(self, other):
        return -(self - other)

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FieldElement(self.field, self.field.mul(self.value, other.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise FieldError("inversion of zero")
        return FieldElement(self.field, self.field.inv(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field}({self.value})"

    def __str__(self):
        return str(self.value)


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def n_times(n: int, g: FieldElement) -> FieldElement:
    """The n-fold sum g + g + ... + g (zero for n = 0)."""
    if n < 0:
        raise FieldError("n_times needs n >= 0")
    return FieldElement(g.field, g.field.mul(g.field.coerce(n), g.value))


def cyclic_decompose_raw(field: FieldSpec, values: Sequence) -> tuple[object, list[int], list[int]]:
    """Write each nonzero raw value as ``sign * (multiplier x g)``.

    Over GF(p) the generator is 1 and the multiplier the residue itself. Over Q
    the values must be integers; the generator is the gcd of their absolute
    values and the sign is split off so that multipliers are positive.
    """
    if any(v == 0 for v in values):
        raise FieldError("cyclic_decompose needs nonzero values")
    if field.kind == "gf":
        return field.one, [int(v) for v in values], [1] * len(values)
    if any(Fraction(v).denominator != 1 for v in values):
        raise FieldError("cyclic_decompose over Q needs integral values; integerize first")
    ints = [int(v) for v in values]
    if not ints:
        return field.one, [], []
    g = reduce(gcd, (abs(v) for v in ints))
    return Fraction(g), [abs(v) // g for v in ints], [1 if v > 0 else -1 for v in ints]


def cyclic_decompose(values: Sequence[FieldElement]) -> tuple[FieldElement, list[int], list[int]]:
    if not values:
        raise FieldError("cyclic_decompose needs at least one value")
    field = values[0].field
    for v in values:
        if v.field != field:
            raise FieldError("mixed-field operands")
    g, mults, signs = cyclic_decompose_raw(field, [v.value for v in values])
    return FieldElement(field, g), mults, signs


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def integerize_vector(vec: Iterable) -> tuple:
    vec = tuple(Fraction(x) for x in vec)
    scale = reduce(lcm, (x.denominator for x in vec), 1)
    return tuple(x * scale for x in vec)


def integerize_basis(basis: Iterable[Iterable]) -> list[tuple]:
    """Scale each rational vector by the lcm of its denominators."""
    return [integerize_vector(v) for v in basis]
