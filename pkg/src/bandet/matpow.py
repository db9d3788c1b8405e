"""Powers of a companion matrix.

Two independent routes to the data we need from ``C**n``:

* ``dense_pow`` -- binary powering of the full k x k matrix, O(k**3 log n).
* ``polymod_pow`` + ``block_from_residue`` -- square-and-multiply on
  ``x**n mod ch_C(x)``, O(k**2 log n).  It rests on the identity::

      (C**n)[l][m] = coefficient of x**(k-l) in  x**(n+k-m) mod ch_C(x)

  (1-based ``l, m``), which follows from the columns of ``C**n`` being
  shifted windows of the same linear recurrence.

In float mode matrices and residues carry a shared power-of-two exponent
so entries stay near 1 no matter how large ``n`` is.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

from .companion import CharPoly, Companion
from .scalar import ScalarMode

__all__ = [
    "OpCounter",
    "PolyResidue",
    "ScaledMatrix",
    "SmallBlock",
    "Strategy",
    "UnvalidatedPathWarning",
    "dense_pow",
    "polymod_pow",
    "block_from_residue",
    "upper_left_block",
    "naive_pow",
]


class UnvalidatedPathWarning(UserWarning):
    """Polynomial residue arithmetic in float mode has no cross-check."""


class Strategy(enum.Enum):
    AUTO = "auto"
    DENSE = "dense"
    POLYMOD = "polymod"


# n >= AUTO_POLYMOD_FACTOR * k switches AUTO to the residue path
AUTO_POLYMOD_FACTOR = 4


@dataclass
class OpCounter:
    """Per-call instrumentation; pass one in, read it afterwards."""

    polymul: int = 0
    matmul: int = 0
    shifts: int = 0


@dataclass(frozen=True)
class PolyResidue:
    """``x**n mod chi`` as coefficients c[0..k-1], times ``2**exp2``.

    ``exp2`` is always 0 in exact modes.
    """

    coeffs: tuple
    n: int
    exp2: int = 0


@dataclass(frozen=True)
class ScaledMatrix:
    rows: tuple
    exp2: int = 0

    def as_lists(self) -> list[list]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class SmallBlock:
    """Upper-left ``s x s`` block of ``C**n`` (times ``2**exp2`` in float mode)."""

    rows: tuple
    exp2: int = 0
    path: Strategy = field(default=Strategy.DENSE, compare=False)

    @property
    def s(self) -> int:
        return len(self.rows)

    def as_lists(self) -> list[list]:
        return [list(r) for r in self.rows]


# ---------------------------------------------------------------------------
# dense route
# ---------------------------------------------------------------------------


def _matmul(a: list, b: list, mode: ScalarMode) -> list:
    red = mode.reduce
    bt = list(zip(*b))
    return [[red(sum(x * y for x, y in zip(row, col))) for col in bt] for row in a]


def _rescale(rows: list, mode: ScalarMode) -> tuple[list, int]:
    if mode.exact:
        return rows, 0
    k = len(rows)
    flat, e = mode.normalize([v for r in rows for v in r])
    return [flat[i * k : (i + 1) * k] for i in range(k)], e


def _c_times(comp: Companion, x: list) -> list:
    """``C @ X`` for a square X, row-wise in O(k**2)."""
    red = comp.mode.reduce
    top = x[0]
    k = comp.k
    out = []
    for i in range(k):
        f = comp.first_col[i]
        if i + 1 < k:
            nxt = x[i + 1]
            out.append([red(f * t + u) for t, u in zip(top, nxt)])
        else:
            out.append([red(f * t) for t in top])
    return out


def dense_pow(comp: Companion, n: int, counter: OpCounter | None = None) -> ScaledMatrix:
    """Binary powering, most significant bit first.  ``C**0`` is the identity."""
    if n < 0:
        raise ValueError("negative exponent")
    mode = comp.mode
    k = comp.k
    if n == 0:
        ident = [[mode.one if i == j else mode.zero for j in range(k)] for i in range(k)]
        return ScaledMatrix(tuple(map(tuple, ident)), 0)
    acc = comp.to_dense()
    exp2 = 0
    for bit in bin(n)[3:]:
        acc = _matmul(acc, acc, mode)
        exp2 *= 2
        if counter is not None:
            counter.matmul += 1
        if bit == "1":
            acc = _c_times(comp, acc)
            if counter is not None:
                counter.matmul += 1
        acc, e = _rescale(acc, mode)
        exp2 += e
    return ScaledMatrix(tuple(map(tuple, acc)), exp2)


def naive_pow(comp: Companion, n: int) -> list[list]:
    """``C @ C @ ... @ C`` by repeated full multiplication (test oracle; exact modes)."""
    mode = comp.mode
    k = comp.k
    dense_c = comp.to_dense()
    acc = [[mode.one if i == j else mode.zero for j in range(k)] for i in range(k)]
    for _ in range(n):
        acc = _matmul(acc, dense_c, mode)
    return acc


# ---------------------------------------------------------------------------
# residue route
# ---------------------------------------------------------------------------


def _reduce_poly(prod: list, chi: CharPoly) -> list:
    """Reduce a coefficient list of any length modulo the monic ``chi``."""
    k = chi.k
    c = chi.coeffs
    red = chi.mode.reduce
    prod = list(prod)
    for d in range(len(prod) - 1, k - 1, -1):
        lead = red(prod[d])
        if lead:
            base = d - k
            for j in range(k):
                prod[base + j] -= lead * c[j]
    return [red(v) for v in prod[:k]] + [chi.mode.zero] * (k - len(prod))


def _square_mod(a: list, chi: CharPoly) -> list:
    k = len(a)
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j in range(k):
                prod[i + j] += ai * a[j]
    return _reduce_poly(prod, chi)


def _times_x(a: list, chi: CharPoly) -> list:
    """``x * a mod chi`` in O(k)."""
    red = chi.mode.reduce
    lead = a[-1]
    out = [red(-lead * chi.coeffs[0])]
    for j in range(1, chi.k):
        out.append(red(a[j - 1] - lead * chi.coeffs[j]))
    return out


def _mul_mod(a: list, b: list, chi: CharPoly) -> list:
    k = chi.k
    prod = [0] * (2 * k - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _reduce_poly(prod, chi)


def residue_mul(a: PolyResidue, b: PolyResidue, chi: CharPoly) -> PolyResidue:
    """Product of two residues modulo ``chi``; represents ``x**(a.n + b.n)``."""
    coeffs, e = chi.mode.normalize(_mul_mod(list(a.coeffs), list(b.coeffs), chi))
    return PolyResidue(tuple(coeffs), a.n + b.n, a.exp2 + b.exp2 + e)


def polymod_pow(chi: CharPoly, n: int, counter: OpCounter | None = None) -> PolyResidue:
    """``x**n mod chi`` by square-and-multiply over the bits of ``n``.

    Multiplying by ``x`` is a shift, so only squarings count as polynomial
    multiplications: at most ``floor(log2 n)`` of them.
    """
    if n < 0:
        raise ValueError("negative exponent")
    mode = chi.mode
    k = chi.k
    one = [mode.one] + [mode.zero] * (k - 1)
    if n == 0:
        return PolyResidue(tuple(_reduce_poly(one, chi)), 0, 0)
    acc = _reduce_poly([mode.zero, mode.one], chi)
    exp2 = 0
    for bit in bin(n)[3:]:
        acc = _square_mod(acc, chi)
        exp2 *= 2
        if counter is not None:
            counter.polymul += 1
        if bit == "1":
            acc = _times_x(acc, chi)
            if counter is not None:
                counter.shifts += 1
        if not mode.exact:
            acc, e = mode.normalize(acc)
            exp2 += e
    return PolyResidue(tuple(acc), n, exp2)


def block_from_residue(chi: CharPoly, base: PolyResidue, s: int,
                       counter: OpCounter | None = None) -> SmallBlock:
    """Upper-left ``s x s`` block of ``C**n`` from the residue of ``x**n``.

    Walks ``x**n`` up to ``x**(n+k-1)`` by k-1 shifts; column ``m`` of the
    block is read from ``x**(n+k-m)``.
    """
    k = chi.k
    if not 1 <= s <= k:
        raise ValueError(f"block size {s} outside 1..{k}")
    windows = [list(base.coeffs)]
    for _ in range(k - 1):
        windows.append(_times_x(windows[-1], chi))
        if counter is not None:
            counter.shifts += 1
    # windows[t] holds x**(n+t); column m (1-based) uses t = k - m
    rows = tuple(
        tuple(windows[k - m][k - l] for m in range(1, s + 1)) for l in range(1, s + 1)
    )
    return SmallBlock(rows, base.exp2, Strategy.POLYMOD)


def resolve_strategy(strategy: Strategy, mode: ScalarMode, n: int, k: int) -> Strategy:
    strategy = Strategy(strategy)
    if strategy is Strategy.AUTO:
        if not mode.exact:
            return Strategy.DENSE
        return Strategy.POLYMOD if n >= AUTO_POLYMOD_FACTOR * k else Strategy.DENSE
    if strategy is Strategy.POLYMOD and not mode.exact:
        warnings.warn("polynomial residue path is unvalidated in float mode",
                      UnvalidatedPathWarning, stacklevel=3)
    return strategy


def upper_left_block(comp: Companion, n: int, s: int,
                     strategy: Strategy = Strategy.AUTO,
                     counter: OpCounter | None = None) -> SmallBlock:
    if n < 0:
        raise ValueError("negative exponent")
    strategy = resolve_strategy(strategy, comp.mode, n, comp.k)
    if strategy is Strategy.POLYMOD:
        chi = comp.charpoly()
        return block_from_residue(chi, polymod_pow(chi, n, counter), s, counter)
    full = dense_pow(comp, n, counter)
    rows = tuple(tuple(r[:s]) for r in full.rows[:s])
    return SmallBlock(rows, full.exp2, Strategy.DENSE)
