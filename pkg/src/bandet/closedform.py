"""Closed-form determinants from the roots of the characteristic polynomial.

Tridiagonal bands reduce to Lucas sequences of the first kind.  For
pentadiagonal bands the determinant depends only on the root multiplicity
pattern of the quartic ``ch_C``; each of the five patterns has its own
formula ``det(T_n) = c**n * E / D``.

Roots are supplied by the caller.  Nothing here factors polynomials.
"""

from __future__ import annotations

import cmath
from collections import Counter
from fractions import Fraction

from .bandspec import BandSpec, validate
from .companion import CharPoly, from_charpoly
from .matpow import dense_pow
from .scalar import RATIONAL, ScalarMode

__all__ = [
    "RootMultiset",
    "lucas_U",
    "tridiag_det",
    "tridiag_binet",
    "penta_case_of",
    "penta_det",
    "CASES",
]

CASES = {(1, 1, 1, 1): "I", (2, 1, 1): "II", (2, 2): "III", (3, 1): "IV", (4,): "V"}


class RootMultiset(tuple):
    """Tuple of ``(root, multiplicity)`` pairs, highest multiplicity first."""

    def __new__(cls, pairs):
        if isinstance(pairs, dict):
            pairs = pairs.items()
        merged = Counter()
        order = []
        for root, mult in pairs:
            mult = int(mult)
            if mult < 1:
                raise ValueError(f"multiplicity {mult} of root {root} must be positive")
            if root in merged:
                raise ValueError(f"root {root} listed twice")
            merged[root] = mult
            order.append(root)
        ranked = sorted(order, key=lambda x: -merged[x])  # stable: ties keep input order
        return super().__new__(cls, ((r, merged[r]) for r in ranked))

    @property
    def degree(self) -> int:
        return sum(m for _, m in self)

    @property
    def pattern(self) -> tuple:
        return tuple(m for _, m in self)


def lucas_U(P, Q, n: int, mode: ScalarMode = RATIONAL):
    """``U_n(P, Q)`` with ``U_0 = 0``, ``U_1 = 1``, ``U_{n+2} = P U_{n+1} - Q U_n``.

    Read off ``[[P, 1], [-Q, 0]]**n = [[U_{n+1}, U_n], [., .]]``.
    """
    if n < 0:
        raise ValueError("negative index")
    P, Q = mode.convert(P), mode.convert(Q)
    comp = from_charpoly(CharPoly((Q, mode.reduce(-P)), mode))
    return dense_pow(comp, n).rows[0][1]


def tridiag_det(spec: BandSpec, n: int, mode: ScalarMode = RATIONAL):
    """``(-1)**n * b**n * U_{n+1}(-a/b, c/b)`` for the band ``[a, b, c]``."""
    if spec.s != 1 or spec.r != 1:
        raise ValueError(f"tridiagonal formula needs s = r = 1, got s={spec.s}, r={spec.r}")
    validate(spec)
    if n < 1:
        raise ValueError("n must be positive")
    if not mode.exact:
        raise ValueError("tridiag_det runs in exact modes; use tridiag_binet for floats")
    a, b, c = (mode.convert(x) for x in spec.coeffs)
    binv = mode.inv(b)
    u = lucas_U(mode.reduce(-a * binv), mode.reduce(c * binv), n + 1, mode)
    bn = pow(b, n, mode.p) if hasattr(mode, "p") else b**n
    val = mode.reduce(bn * u)
    return mode.reduce(-val) if n % 2 else val


def tridiag_binet(a, b, c, n: int) -> complex:
    """Floating evaluation via the roots of ``x**2 - a x + bc`` (needs ``a*a != 4bc``)."""
    disc = cmath.sqrt(complex(a) * a - 4 * complex(b) * c)
    if disc == 0:
        raise ZeroDivisionError("repeated root: Binet form undefined")
    alpha, beta = (a + disc) / 2, (a - disc) / 2
    return (alpha ** (n + 1) - beta ** (n + 1)) / disc


def penta_case_of(roots) -> str:
    roots = roots if isinstance(roots, RootMultiset) else RootMultiset(roots)
    if roots.degree != 4:
        raise ValueError(f"multiplicities sum to {roots.degree}, need 4")
    try:
        return CASES[roots.pattern]
    except KeyError:
        raise ValueError(f"multiplicity pattern {roots.pattern} is not a quartic case") from None


def _case_I(l1, l2, l3, l4, n):
    p = n + 2
    E = ((l2 - l3) * (l1 - l4) * ((l2 * l3) ** p + (l1 * l4) ** p)
         - (l1 - l3) * (l2 - l4) * ((l1 * l3) ** p + (l2 * l4) ** p)
         + (l1 - l2) * (l3 - l4) * ((l1 * l2) ** p + (l3 * l4) ** p))
    D = (l1 - l2) * (l1 - l3) * (l1 - l4) * (l2 - l3) * (l2 - l4) * (l3 - l4)
    return E / D


def _case_II(l1, l2, l3, n):
    E = (l1 ** (1 + n) * (l1 ** (3 + n) * (l2 - l3)
                          + l2 ** (2 + n) * (l1 * (-(2 + n) * l1 + l2 + n * l2)
                                             + ((3 + n) * l1 - (2 + n) * l2) * l3))
         + l3 ** (2 + n) * (l2 ** (2 + n) * (l2 - l3)
                            + l1 ** (1 + n) * ((2 + n) * l1 ** 2 + (2 + n) * l2 * l3
                                               - l1 * ((3 + n) * l2 + l3 + n * l3))))
    D = (l1 - l2) ** 2 * (l1 - l3) ** 2 * (l2 - l3)
    return E / D


def _case_III(l1, l2, n):
    E = (l1 ** (4 + 2 * n)
         - (2 + n) ** 2 * (l1 * l2) ** (1 + n) * (l1 ** 2 + l2 ** 2)
         + 2 * (3 + 4 * n + n ** 2) * (l1 * l2) ** (2 + n)
         + l2 ** (4 + 2 * n))
    D = (l1 - l2) ** 4
    return E / D


def _case_IV(l1, l2, n):
    E = (2 + n) * l1 ** n * ((1 + n) * (l1 ** (3 + n) - l2 ** (3 + n))
                             - (3 + n) * l1 ** (2 + n) * l2
                             + (3 + n) * l1 * l2 ** (2 + n))
    D = 2 * (l1 - l2) ** 3
    return E / D


def _case_V(l1, n):
    return Fraction((n + 3) * (n + 2) ** 2 * (n + 1), 12) * l1 ** (2 * n)


def _exact(x):
    if isinstance(x, float):
        raise TypeError("closed forms are exact-only; pass Fraction/int roots")
    if isinstance(x, int):
        return Fraction(x)
    return x


def penta_det(roots, c, n: int):
    """Pentadiagonal ``det(T_n)`` from the roots of ``ch_C`` and ``c = a_2``.

    Valid for ``n >= 4``.  Roots must be exact (ints, Fractions, or any
    exact number type closed under +, -, *, /).
    """
    roots = roots if isinstance(roots, RootMultiset) else RootMultiset(roots)
    case = penta_case_of(roots)
    if n < 4:
        raise ValueError("pentadiagonal closed forms hold for n >= 4")
    c = _exact(c)
    ls = [_exact(r) for r, _ in roots]
    if case == "I":
        ed = _case_I(*ls, n)
    elif case == "II":
        ed = _case_II(*ls, n)
    elif case == "III":
        ed = _case_III(*ls, n)
    elif case == "IV":
        ed = _case_IV(*ls, n)
    else:
        ed = _case_V(*ls, n)
    return c ** n * ed
