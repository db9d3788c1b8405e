"""Companion matrix of a band and its characteristic polynomial.

For a band with ``a_s != 0`` the companion matrix is ``k x k`` with first
column::

    -(a_{s-1}, ..., a_1, a_0, a_{s+1}, ..., a_{s+r}) / a_s

and ones on the superdiagonal.  It is stored by its first column only.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bandspec import BandSpec, BandSpecError, validate
from .scalar import RATIONAL, ScalarMode

__all__ = [
    "Companion",
    "CharPoly",
    "ModulusDividesLeadingCoefficient",
    "build",
    "charpoly",
    "shift_lambda",
    "from_charpoly",
]


class ModulusDividesLeadingCoefficient(BandSpecError):
    code = "ModulusDividesLeadingCoefficient"


@dataclass(frozen=True)
class CharPoly:
    """Monic ``x**k + c[k-1] x**(k-1) + ... + c[0]``; ``coeffs`` holds c[0..k-1]."""

    coeffs: tuple
    mode: ScalarMode = RATIONAL

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def full(self) -> list:
        """All k+1 coefficients, lowest degree first, including the leading 1."""
        return list(self.coeffs) + [self.mode.one]

    def __call__(self, x):
        acc = self.mode.one
        for c in reversed(self.coeffs):
            acc = self.mode.reduce(acc * x + c)
        return acc


@dataclass(frozen=True)
class Companion:
    first_col: tuple
    mode: ScalarMode = RATIONAL

    @property
    def k(self) -> int:
        return len(self.first_col)

    def to_dense(self) -> list[list]:
        k = self.k
        z, o = self.mode.zero, self.mode.one
        rows = []
        for i in range(k):
            row = [z] * k
            row[0] = self.first_col[i]
            if i + 1 < k:
                row[i + 1] = o
            rows.append(row)
        return rows

    def matvec(self, v: list) -> list:
        """``C @ v`` in O(k)."""
        x0 = v[0]
        red = self.mode.reduce
        out = [red(self.first_col[i] * x0 + v[i + 1]) for i in range(self.k - 1)]
        out.append(red(self.first_col[-1] * x0))
        return out

    def charpoly(self) -> CharPoly:
        return CharPoly(tuple(self.mode.reduce(-c) for c in reversed(self.first_col)), self.mode)


def _scaled_coeffs(spec: BandSpec, mode: ScalarMode) -> tuple[list, object]:
    validate(spec)
    if spec.s < 1:
        raise BandSpecError("companion matrix needs s >= 1; use the triangular path for s = 0")
    vals = [mode.convert(c) for c in spec.coeffs]
    if mode.is_zero(vals[spec.s]):
        raise ModulusDividesLeadingCoefficient(f"a_s = {spec.a_s} vanishes in {mode}")
    inv = mode.inv(vals[spec.s])
    return [mode.reduce(v * inv) for v in vals], inv


def build(spec: BandSpec, mode: ScalarMode = RATIONAL) -> Companion:
    q, _ = _scaled_coeffs(spec, mode)
    s = spec.s
    col = [q[s - 1 - t] for t in range(s)] + q[s + 1 :]
    return Companion(tuple(mode.reduce(-c) for c in col), mode)


def charpoly(spec: BandSpec, mode: ScalarMode = RATIONAL) -> CharPoly:
    return build(spec, mode).charpoly()


def from_charpoly(chi: CharPoly) -> Companion:
    """Companion matrix whose characteristic polynomial is ``chi``."""
    red = chi.mode.reduce
    return Companion(tuple(red(-c) for c in reversed(chi.coeffs)), chi.mode)


def shift_lambda(spec: BandSpec, lam) -> BandSpec:
    """Same band with ``a_0`` replaced by ``a_0 - lam``."""
    return BandSpec(spec.s, spec.r, (spec.coeffs[0] - lam,) + spec.coeffs[1:])
