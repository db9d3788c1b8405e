import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import strategies as st

from bandet.bandspec import BandSpec

# Pentadiagonal worked examples: coefficients (a, b, c, d, e), roots of ch_C,
# and the published closed form for det(T_n), n >= 4.
WORKED_EXAMPLES = {
    "I": (
        (101, -17, 1, -247, 210),
        [(2, 1), (3, 1), (5, 1), (7, 1)],
        lambda n: Fraction(-6 * 10 ** (n + 2) + 5 * 15 ** (n + 2) + 6 ** (n + 2)
                           - 6 * 21 ** (n + 2) + 5 * 14 ** (n + 2) + 35 ** (n + 2), 120),
    ),
    "II": (
        (17, -7, 1, -17, 6),
        [(1, 2), (2, 1), (3, 1)],
        lambda n: Fraction(2 ** (n + 2) * (2 * n + 3) - 3 ** (n + 2) * (2 * n + 5)
                           + 6 ** (n + 2) + 1, 4),
    ),
    "III": (
        (37, -10, 1, -60, 36),
        [(2, 2), (3, 2)],
        lambda n: Fraction(4 ** (n + 2) + 9 ** (n + 2) - (n * (n + 4) + 16) * 6 ** (n + 1)),
    ),
    "IV": (
        (30, -9, 1, -44, 24),
        [(2, 3), (3, 1)],
        lambda n: Fraction(2 ** (n - 1) * (n + 2) * (3 ** (n + 2) * (n - 3) + 2 ** (n + 2) * (n + 7))),
    ),
    "V": (
        (24, -8, 1, -32, 16),
        [(2, 4)],
        lambda n: Fraction(4 ** (n - 1), 3) * (n + 3) * (n + 2) ** 2 * (n + 1),
    ),
}


def penta(coeffs) -> BandSpec:
    return BandSpec(2, 2, tuple(Fraction(c) for c in coeffs))


def cofactor_det(m):
    """Leibniz expansion; independent of every elimination routine."""
    n = len(m)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        prod = 1
        for i, p in enumerate(perm):
            prod *= m[i][p]
        total += -prod if inv % 2 else prod
    return total


def random_band(rng: random.Random, k: int, bound: int = 9, s=None) -> BandSpec:
    if s is None:
        s = rng.randint(1, k - 1)
    coeffs = [rng.randint(-bound, bound) for _ in range(k + 1)]
    nz = [v for v in range(-bound, bound + 1) if v]
    coeffs[s] = rng.choice(nz)
    coeffs[k] = rng.choice(nz)
    return BandSpec(s, k - s, tuple(Fraction(c) for c in coeffs))


@st.composite
def bands(draw, k_min=2, k_max=6, bound=9):
    k = draw(st.integers(k_min, k_max))
    s = draw(st.integers(1, k - 1))
    nz = st.integers(-bound, bound).filter(bool)
    coeffs = [draw(st.integers(-bound, bound)) for _ in range(k + 1)]
    coeffs[s] = draw(nz)
    coeffs[k] = draw(nz)
    return BandSpec(s, k - s, tuple(Fraction(c) for c in coeffs))


@pytest.fixture
def rng():
    return random.Random(20240611)
