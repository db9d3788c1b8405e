"""Ground-truth determinant engines.

``dense_det_bareiss`` is the reference every other path is checked
against.  ``reduction_det`` replays the column-elimination argument that
turns ``det(T_n)`` into a small determinant, one row at a time, without
ever forming a power of the companion matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bandspec import BandSpec, dense, entry, validate
from .scalar import RATIONAL, ScalarMode, ScaledValue, scaled_from, scaled_mul

__all__ = [
    "dense_det_bareiss",
    "dense_det_field",
    "dense_det_lu",
    "dense_det",
    "build_A0",
    "build_B",
    "build_P",
    "f_map",
    "F_map",
    "ReductionState",
    "reduction_det",
    "chain_det",
]


def _bareiss_int(m: list[list[int]]) -> int:
    n = len(m)
    a = [row[:] for row in m]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        piv = a[i][i]
        row_i = a[i]
        for r in range(i + 1, n):
            row_r = a[r]
            f = row_r[i]
            row_r[i + 1 :] = [
                (piv * x - f * y) // prev for x, y in zip(row_r[i + 1 :], row_i[i + 1 :])
            ]
            row_r[i] = 0
        prev = piv
    return sign * a[-1][-1]


def dense_det_bareiss(m: list[list]) -> Fraction:
    """Exact determinant by fraction-free elimination.

    Rational entries are cleared row by row to integers first, so the
    elimination itself only ever does exact integer division.
    """
    n = len(m)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    rows = []
    scale = 1
    for row in m:
        q = [Fraction(x) for x in row]
        den = math.lcm(*(x.denominator for x in q))
        rows.append([int(x * den) for x in q])
        scale *= den
    return Fraction(_bareiss_int(rows), scale)


def dense_det_field(m: list[list], mode: ScalarMode) -> object:
    """Gaussian elimination with inverses, for exact fields (prime fields mainly)."""
    n = len(m)
    a = [[mode.convert(x) if not isinstance(x, int) else mode.reduce(x) for x in row] for row in m]
    det = mode.one
    for i in range(n):
        piv_row = next((r for r in range(i, n) if not mode.is_zero(a[r][i])), None)
        if piv_row is None:
            return mode.zero
        if piv_row != i:
            a[i], a[piv_row] = a[piv_row], a[i]
            det = mode.reduce(-det)
        piv = a[i][i]
        det = mode.reduce(det * piv)
        inv = mode.inv(piv)
        for r in range(i + 1, n):
            f = mode.reduce(a[r][i] * inv)
            if f:
                a[r] = [mode.reduce(x - f * y) for x, y in zip(a[r], a[i])]
    return det


def dense_det_lu(m: list[list]) -> ScaledValue:
    """Partial-pivot elimination in doubles; the pivot product is scaled.

    Each row is first rescaled by a power of two (exact) so entries of any
    magnitude stay representable.  A singular matrix gives zero or a tiny
    value, never an exception.
    """
    n = len(m)
    if n == 0:
        return ScaledValue(1, 1.0, 0)
    a = []
    exp_total = 0
    for row in m:
        vals = [float(x) for x in row]
        big = max(abs(v) for v in vals)
        if big == 0.0:
            return ScaledValue(0, 0.0, 0)
        e = math.frexp(big)[1]
        a.append([math.ldexp(v, -e) for v in vals])
        exp_total += e
    acc = ScaledValue(1, 1.0, exp_total)
    for i in range(n):
        p = max(range(i, n), key=lambda r: abs(a[r][i]))
        if a[p][i] == 0.0:
            return ScaledValue(0, 0.0, 0)
        if p != i:
            a[i], a[p] = a[p], a[i]
            acc = -acc
        piv = a[i][i]
        acc = scaled_mul(acc, scaled_from(piv))
        row_i = a[i]
        for r in range(i + 1, n):
            f = a[r][i] / piv
            if f != 0.0:
                a[r] = [x - f * y for x, y in zip(a[r], row_i)]
    return acc


def dense_det(m: list[list], mode: ScalarMode = RATIONAL):
    """Dispatch to the oracle appropriate for ``mode``."""
    if not mode.exact:
        return dense_det_lu(m)
    if mode == RATIONAL:
        return dense_det_bareiss(m)
    return dense_det_field(m, mode)


# ---------------------------------------------------------------------------
# reduction chain
# ---------------------------------------------------------------------------


def build_A0(spec: BandSpec) -> list[list]:
    """k x s starting block: the nonzero part of the first s columns of T_n."""
    return [[entry(spec, i - j) for j in range(spec.s)] for i in range(spec.k)]


def build_B(spec: BandSpec, n: int) -> list[list]:
    """n x (n-s) block: columns s+1..n of T_n."""
    s = spec.s
    return [[entry(spec, i - j - s) for j in range(n - s)] for i in range(n)]


def build_P(spec: BandSpec, n: int, A: list[list]) -> list[list]:
    """``[B_n | A over zeros]``.  For s <= n < k only the top n rows of A are used."""
    if n < spec.s:
        raise ValueError(f"n={n} smaller than s={spec.s}")
    B = build_B(spec, n)
    zero = spec.coeffs[0] * 0
    out = []
    for i in range(n):
        right = list(A[i]) if i < len(A) else [zero] * spec.s
        out.append(B[i] + right)
    return out


def _f_column(spec: BandSpec) -> list:
    # entries 2..k+1 of the first column of P: a_{s-1}, ..., a_0, a_{s+1}, ..., a_{s+r}
    s = spec.s
    c = spec.coeffs
    return [c[s - 1 - t] for t in range(s)] + list(c[s + 1 :])


def f_map(spec: BandSpec, x: list) -> list:
    """The linear map whose matrix is the companion matrix."""
    col = _f_column(spec)
    a_s = Fraction(spec.a_s)
    k = spec.k
    head = x[0]
    return [(x[t + 1] if t + 1 < k else 0) - head * Fraction(col[t]) / a_s for t in range(k)]


def F_map(spec: BandSpec, A: list[list]) -> list[list]:
    cols = [f_map(spec, [row[j] for row in A]) for j in range(spec.s)]
    return [list(r) for r in zip(*cols)]


@dataclass
class ReductionState:
    """Current matrix is ``[B_m | top m rows of A]`` with ``m = n - i``.

    Invariant: ``det(T_n) == sign * factor * det(current)``.
    """

    spec: BandSpec
    n: int
    i: int
    A: list
    factor: Fraction
    sign: int

    @property
    def m(self) -> int:
        return self.n - self.i

    def current(self) -> list[list]:
        return build_P(self.spec, self.m, self.A)

    def step(self) -> None:
        """Clear the first row against its lone ``a_s`` and drop row/column 1.

        Adding ``-b_j / a_s`` times column 1 to the column holding ``b_j``
        zeroes the first row except ``a_s``; the (1,1) minor is again of the
        form ``[B_{m-1} | A']`` and ``A'`` is ``F(A)``.
        """
        spec = self.spec
        if self.m <= spec.s:
            raise ValueError("reduction already collapsed to the s x s block")
        a_s = Fraction(spec.a_s)
        col = _f_column(spec)
        b = self.A[0]
        k, s = spec.k, spec.s
        new_a = []
        for row in range(k):
            below = self.A[row + 1] if row + 1 < k else [0] * s
            new_a.append([below[j] - Fraction(b[j]) / a_s * col[row] for j in range(s)])
        self.A = new_a
        self.factor *= a_s
        self.i += 1


def start_reduction(spec: BandSpec, n: int) -> ReductionState:
    validate(spec)
    if spec.s < 1 or spec.r < 1:
        raise ValueError("reduction chain needs s >= 1 and r >= 1")
    if n < spec.k:
        raise ValueError(f"reduction chain needs n >= k = {spec.k}")
    A0 = [[Fraction(x) for x in row] for row in build_A0(spec)]
    sign = -1 if ((n - 1) * spec.s) % 2 else 1
    return ReductionState(spec, n, 0, A0, Fraction(1), sign)


def chain_det(spec: BandSpec, n: int, i: int) -> Fraction:
    """``(-1)**((n-1)s) * a_s**i * det(P_{n-i,i})`` with the P matrix materialized."""
    if not 0 <= i <= n - spec.s:
        raise ValueError(f"step index {i} outside 0..{n - spec.s}")
    st = start_reduction(spec, n)
    for _ in range(i):
        st.step()
    return st.sign * st.factor * dense_det_bareiss(st.current())


def reduction_det(spec: BandSpec, n: int) -> Fraction:
    """det(T_n) by running the elimination chain to the s x s block.

    The first n-k steps shrink ``P_{n,0}`` to ``[B_k | A_{n-k}]``; the next r
    steps continue the same elimination inside that k x k matrix and leave
    the top s x s block of ``A_{n-s}``.
    """
    st = start_reduction(spec, n)
    for _ in range(n - spec.s):
        st.step()
    block = [row[: spec.s] for row in st.A[: spec.s]]
    return st.sign * st.factor * dense_det_bareiss(block)
