"""Determinants of banded Toeplitz matrices in O(k^2 log n + s^3).

For ``n >= k`` the determinant is

    det(T_n) = (-1)**(n*s) * a_s**n * det(M)

with ``M`` the upper-left ``s x s`` block of ``C**n``.  Smaller ``n`` falls
back to a dense oracle, and bands with no super- or subdiagonals are
triangular.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from . import oracle
from .bandspec import BandSpec, dense, transpose, validate
from .companion import build, shift_lambda
from .matpow import OpCounter, SmallBlock, Strategy, resolve_strategy, upper_left_block
from .scalar import (
    RATIONAL,
    ScalarMode,
    ScaledValue,
    scaled_from,
    scaled_mul,
    scaled_pow,
)

__all__ = ["Path", "DetResult", "det", "det_shifted", "small_det", "normalize_orientation"]


class Path(enum.Enum):
    FAST_POLYMOD = "FastPolyMod"
    FAST_DENSE = "FastDense"
    DENSE_ORACLE = "DenseOracle"
    REDUCTION_ORACLE = "ReductionOracle"
    CLOSED_FORM = "ClosedForm"
    TRIANGULAR = "Triangular"


@dataclass(frozen=True)
class DetResult:
    value: object
    n: int
    path: Path
    mode: ScalarMode


def small_det(block: SmallBlock | list, mode: ScalarMode = RATIONAL):
    """Determinant of the small block.

    Exact modes use elimination without rounding; float mode returns a
    ``ScaledValue`` and folds in the block's power-of-two scale.
    """
    if isinstance(block, SmallBlock):
        rows, exp2 = block.as_lists(), block.exp2
    else:
        rows, exp2 = [list(r) for r in block], 0
    if mode.exact:
        return oracle.dense_det(rows, mode)
    d = oracle.dense_det_lu(rows)
    if d.is_zero():
        return d
    return scaled_mul(d, ScaledValue(1, 1.0, exp2 * len(rows)))


def normalize_orientation(spec: BandSpec) -> BandSpec:
    """Transpose when s > r so the small block is min(s, r) square."""
    return transpose(spec) if spec.s > spec.r else spec


def _pow(mode: ScalarMode, x, n: int):
    if not mode.exact:
        return scaled_pow(scaled_from(x), n)
    if hasattr(mode, "p"):
        return pow(x, n, mode.p)
    return x**n


def _mul(mode: ScalarMode, x, y):
    if not mode.exact:
        return scaled_mul(x, y)
    return mode.reduce(x * y)


def det(spec: BandSpec, n: int, strategy: Strategy | str = Strategy.AUTO,
        mode: ScalarMode = RATIONAL, counter: OpCounter | None = None) -> DetResult:
    validate(spec)
    return _det(spec, n, Strategy(strategy), mode, counter)


def _det(spec, n, strategy, mode, counter):
    if n < 1:
        raise ValueError("n must be a positive integer")

    if spec.s == 0 or spec.r == 0:
        a0 = mode.convert(spec.coeffs[0])
        return DetResult(_pow(mode, a0, n), n, Path.TRIANGULAR, mode)

    work = normalize_orientation(spec)
    comp = build(work, mode)  # raises if a_s vanishes in the field
    if n < work.k:
        return DetResult(oracle.dense_det(dense(work, n), mode), n, Path.DENSE_ORACLE, mode)

    chosen = resolve_strategy(strategy, mode, n, work.k)
    block = upper_left_block(comp, n, work.s, chosen, counter)
    a_s = mode.convert(work.a_s)
    value = _mul(mode, _pow(mode, a_s, n), small_det(block, mode))
    if (n * work.s) % 2:
        value = -value if not mode.exact else mode.reduce(-value)
    path = Path.FAST_POLYMOD if chosen is Strategy.POLYMOD else Path.FAST_DENSE
    return DetResult(value, n, path, mode)


def det_shifted(spec: BandSpec, n: int, lam, strategy: Strategy | str = Strategy.AUTO,
                mode: ScalarMode = RATIONAL, counter: OpCounter | None = None) -> DetResult:
    """``det(T_n - lam*I)``: the same algorithm on the band with ``a_0 - lam``."""
    validate(spec)
    # the shifted band keeps a_s and a_(s+r) unless it is triangular, where they are unused
    return _det(shift_lambda(spec, lam), n, Strategy(strategy), mode, counter)
