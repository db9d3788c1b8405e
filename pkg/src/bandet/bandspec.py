"""Banded Toeplitz families.

Coefficient layout (``s`` superdiagonals, ``r`` subdiagonals, ``k = s + r``)::

        col:  j=i-?  ...   j=i    j=i+1  ...  j=i+s
    row i:  a_{s+r} ... a_{s+1}  a_0    a_1   ...  a_s

i.e. ``coeffs[0]`` is the main diagonal, ``coeffs[1..s]`` walk *outward*
above it and ``coeffs[s+1..s+r]`` walk outward below it.  For the
tridiagonal case ``[a, b, c]`` gives ``[[a, b], [c, a]]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .scalar import parse_exact

__all__ = [
    "BandSpec",
    "BandSpecError",
    "LengthMismatch",
    "ZeroLeadingCoefficient",
    "ZeroTrailingCoefficient",
    "NegativeBandwidth",
    "validate",
    "transpose",
    "dense",
]


class BandSpecError(ValueError):
    code = "InvalidBandSpec"


class LengthMismatch(BandSpecError):
    code = "LengthMismatch"


class ZeroLeadingCoefficient(BandSpecError):
    """The outermost superdiagonal coefficient ``a_s`` is zero."""

    code = "ZeroLeadingCoefficient"


class ZeroTrailingCoefficient(BandSpecError):
    """The outermost subdiagonal coefficient ``a_{s+r}`` is zero."""

    code = "ZeroTrailingCoefficient"


class NegativeBandwidth(BandSpecError):
    code = "NegativeBandwidth"


@dataclass(frozen=True)
class BandSpec:
    s: int
    r: int
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def k(self) -> int:
        return self.s + self.r

    @property
    def a_s(self):
        return self.coeffs[self.s]

    @property
    def a_last(self):
        return self.coeffs[self.s + self.r]

    @classmethod
    def from_strings(cls, s: int, r: int, coeffs, exact: bool = True) -> BandSpec:
        """Build from text coefficients (``"3"``, ``"-7/2"``; decimals if not exact)."""
        if exact:
            vals = [parse_exact(c) for c in coeffs]
        else:
            vals = [_parse_loose(c) for c in coeffs]
        return cls(int(s), int(r), tuple(vals))

    def to_json(self) -> dict:
        return {"s": self.s, "r": self.r, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj, exact: bool = True) -> BandSpec:
        if isinstance(obj, (str, bytes)):
            obj = json.loads(obj)
        try:
            return cls.from_strings(obj["s"], obj["r"], obj["coeffs"], exact=exact)
        except KeyError as exc:
            raise BandSpecError(f"spec JSON is missing key {exc}") from None

    def __str__(self) -> str:
        cs = ",".join(str(c) for c in self.coeffs)
        return f"BandSpec(s={self.s}, r={self.r}, coeffs=[{cs}])"


def _parse_loose(c):
    if isinstance(c, (int, float, Fraction)):
        return c
    c = str(c).strip()
    try:
        return parse_exact(c)
    except ValueError:
        return float(c)


def validate(spec: BandSpec) -> BandSpec:
    if spec.s < 0 or spec.r < 0:
        raise NegativeBandwidth(f"bandwidths must be nonnegative, got s={spec.s}, r={spec.r}")
    if len(spec.coeffs) != spec.k + 1:
        raise LengthMismatch(
            f"expected {spec.k + 1} coefficients for s={spec.s}, r={spec.r}, got {len(spec.coeffs)}"
        )
    if spec.a_s == 0:
        raise ZeroLeadingCoefficient(f"a_s = a_{spec.s} must be nonzero")
    if spec.a_last == 0:
        raise ZeroTrailingCoefficient(f"a_(s+r) = a_{spec.k} must be nonzero")
    return spec


def transpose(spec: BandSpec) -> BandSpec:
    """Spec of the transposed family: super- and subdiagonal blocks swap."""
    c = spec.coeffs
    sup = c[1 : spec.s + 1]
    sub = c[spec.s + 1 :]
    return BandSpec(spec.r, spec.s, (c[0],) + tuple(sub) + tuple(sup))


def entry(spec: BandSpec, d: int):
    """Coefficient on diagonal ``d = i - j`` (0 if outside the band)."""
    if d == 0:
        return spec.coeffs[0]
    if -spec.s <= d < 0:
        return spec.coeffs[-d]
    if 0 < d <= spec.r:
        return spec.coeffs[spec.s + d]
    return 0


def dense(spec: BandSpec, n: int) -> list[list]:
    if n < 1:
        raise ValueError("n must be positive")
    zero = spec.coeffs[0] * 0
    diag = {d: entry(spec, d) for d in range(-spec.s, spec.r + 1)}
    return [[diag.get(i - j, zero) for j in range(n)] for i in range(n)]
