"""Fields of computation and an overflow-safe float representation.

Every numeric routine in the package works on *raw* values (``Fraction``,
``int`` residues, ``float``) and asks a :class:`ScalarMode` for the few
operations that differ between fields: conversion, inversion, reduction
after accumulation and rescaling of whole vectors.  Keeping elements raw
lets the prime-field kernels run on plain Python ints.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalNumber

from sympy import isprime

__all__ = [
    "ModeMismatchError",
    "ScaledValue",
    "scaled_from",
    "scaled_mul",
    "scaled_pow",
    "ScalarMode",
    "ExactRational",
    "PrimeField",
    "ScaledFloat",
    "RATIONAL",
    "FLOAT",
    "parse_exact",
    "mode_from_name",
]


class ModeMismatchError(TypeError):
    """Raised when values from two different scalar modes meet."""


# ---------------------------------------------------------------------------
# ScaledValue
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScaledValue:
    """``sign * mantissa * 2**exp2`` with ``mantissa`` in [1, 2).

    Zero is the unique triple ``(0, 0.0, 0)``.  ``exp2`` is a Python int, so
    magnitudes far outside the double range are representable.
    """

    sign: int
    mantissa: float
    exp2: int

    def __post_init__(self):
        if self.sign == 0:
            if self.mantissa != 0 or self.exp2 != 0:
                raise ValueError("zero must be stored as (0, 0.0, 0)")
        elif self.sign not in (-1, 1) or not 1.0 <= self.mantissa < 2.0:
            raise ValueError(f"denormalized ScaledValue {self!r}")

    def __mul__(self, other: ScaledValue) -> ScaledValue:
        if not isinstance(other, ScaledValue):
            return NotImplemented
        return scaled_mul(self, other)

    def __neg__(self) -> ScaledValue:
        return ScaledValue(-self.sign, self.mantissa, self.exp2)

    def is_zero(self) -> bool:
        return self.sign == 0

    def to_float(self) -> float:
        """Native float; raises ``OverflowError`` if out of range."""
        return self.sign * math.ldexp(self.mantissa, self.exp2)

    def log2abs(self) -> float:
        if self.sign == 0:
            return -math.inf
        return self.exp2 + math.log2(self.mantissa)

    def rel_diff(self, other: ScaledValue) -> float:
        """Relative difference ``|self - other| / max(|self|, |other|)``."""
        if self.sign == 0 and other.sign == 0:
            return 0.0
        if self.sign == 0 or other.sign == 0:
            return 1.0
        e = max(self.exp2, other.exp2)
        a = self.sign * math.ldexp(self.mantissa, self.exp2 - e)
        b = other.sign * math.ldexp(other.mantissa, other.exp2 - e)
        return abs(a - b) / max(abs(a), abs(b))

    def decimal(self, digits: int = 12) -> str:
        """Decimal approximation, valid even when the value overflows a double."""
        if self.sign == 0:
            return "0"
        log10 = self.log2abs() * math.log10(2.0)
        e10 = math.floor(log10)
        mant = 10.0 ** (log10 - e10)
        if mant >= 10.0:  # rounding at the boundary
            mant /= 10.0
            e10 += 1
        sign = "-" if self.sign < 0 else ""
        return f"{sign}{mant:.{digits}g}e{e10:+d}"

    def __str__(self) -> str:
        return f"{self.sign * self.mantissa!r}*2^{self.exp2}"


ZERO = ScaledValue(0, 0.0, 0)
ONE = ScaledValue(1, 1.0, 0)


def _normalized(x: float, exp2: int) -> ScaledValue:
    if x == 0.0:
        return ZERO
    m, e = math.frexp(abs(x))  # m in [0.5, 1)
    return ScaledValue(1 if x > 0 else -1, m * 2.0, exp2 + e - 1)


def scaled_from(x) -> ScaledValue:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot scale non-finite value {x}")
    return _normalized(x, 0)


def scaled_mul(a: ScaledValue, b: ScaledValue) -> ScaledValue:
    if a.sign == 0 or b.sign == 0:
        return ZERO
    m = a.mantissa * b.mantissa  # in [1, 4)
    e = a.exp2 + b.exp2
    if m >= 2.0:
        m *= 0.5
        e += 1
    return ScaledValue(a.sign * b.sign, m, e)


def scaled_pow(a: ScaledValue, n: int) -> ScaledValue:
    """``a**n`` by square-and-multiply.  ``0**0`` is 1 by convention."""
    if n < 0:
        raise ValueError("negative exponent")
    result = ONE
    base = a
    while n:
        if n & 1:
            result = scaled_mul(result, base)
        n >>= 1
        if n:
            base = scaled_mul(base, base)
    return result


# ---------------------------------------------------------------------------
# Scalar modes
# ---------------------------------------------------------------------------


def parse_exact(text) -> Fraction:
    """Parse ``"3"``, ``"-7/2"`` or an int/Fraction into a ``Fraction``.

    Floats and decimal strings are refused: exact modes must not silently
    absorb rounding error.
    """
    if isinstance(text, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    if isinstance(text, _RationalNumber):
        return Fraction(text.numerator, text.denominator)
    if isinstance(text, float):
        raise ModeMismatchError(f"float {text!r} given to an exact mode")
    s = str(text).strip()
    if any(ch in s for ch in ".eE") and "/" not in s:
        raise ValueError(f"{s!r} is not an exact integer or rational")
    return Fraction(s)


class ScalarMode:
    """Field-of-computation contract.

    Subclasses define how raw values are created, inverted and kept small.
    ``normalize`` rescales a whole vector and returns the power of two that
    was factored out; exact modes always return exponent 0.
    """

    name = "abstract"
    exact = True
    zero = 0
    one = 1

    def convert(self, x):
        raise NotImplementedError

    def reduce(self, x):
        return x

    def inv(self, x):
        raise NotImplementedError

    def is_zero(self, x) -> bool:
        return x == 0

    def normalize(self, vec: list) -> tuple[list, int]:
        return vec, 0

    def check_same(self, other: ScalarMode) -> None:
        if self != other:
            raise ModeMismatchError(f"cannot mix {self} with {other}")

    def __repr__(self) -> str:
        return self.name


class ExactRational(ScalarMode):
    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def convert(self, x) -> Fraction:
        return parse_exact(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def __eq__(self, other):
        return isinstance(other, ExactRational)

    def __hash__(self):
        return hash("rational")


class PrimeField(ScalarMode):
    """Integers modulo a word-sized odd prime ``p``; elements are ints in [0, p)."""

    def __init__(self, p: int):
        p = int(p)
        if p <= 2 or p >= 2**64 or not isprime(p):
            raise ValueError(f"PrimeField modulus must be an odd prime below 2**64, got {p}")
        self.p = p
        self.name = f"prime({p})"

    def convert(self, x) -> int:
        if isinstance(x, int) and not isinstance(x, bool):
            return x % self.p
        q = parse_exact(x)
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator of {q} vanishes mod {self.p}")
        return q.numerator * pow(den, self.p - 2, self.p) % self.p

    def reduce(self, x) -> int:
        return x % self.p

    def inv(self, x) -> int:
        x %= self.p
        if x == 0:
            raise ZeroDivisionError(f"inverse of zero mod {self.p}")
        return pow(x, self.p - 2, self.p)

    def is_zero(self, x) -> bool:
        return x % self.p == 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("prime", self.p))


class ScaledFloat(ScalarMode):
    """Double precision with vector-level power-of-two rescaling."""

    name = "float"
    exact = False
    zero = 0.0
    one = 1.0

    def convert(self, x) -> float:
        if isinstance(x, str):
            s = x.strip()
            v = float(Fraction(s)) if "/" in s else float(s)
        else:
            v = float(x)
        if not math.isfinite(v):
            raise ValueError(f"non-finite scalar {x!r}")
        return v

    def inv(self, x) -> float:
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1.0 / x

    def normalize(self, vec: list) -> tuple[list, int]:
        big = max((abs(v) for v in vec), default=0.0)
        if big == 0.0:
            return vec, 0
        e = math.frexp(big)[1]
        return [math.ldexp(v, -e) for v in vec], e

    def __eq__(self, other):
        return isinstance(other, ScaledFloat)

    def __hash__(self):
        return hash("float")


RATIONAL = ExactRational()
FLOAT = ScaledFloat()

DEFAULT_PRIME = 2**61 - 1


def mode_from_name(name: str, prime: int = DEFAULT_PRIME) -> ScalarMode:
    name = name.lower()
    if name in ("rational", "exact"):
        return RATIONAL
    if name == "float":
        return FLOAT
    if name in ("prime", "primefield"):
        return PrimeField(prime)
    raise ValueError(f"unknown scalar mode {name!r}")
