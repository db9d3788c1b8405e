import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from bandet.bandspec import BandSpec, dense
from bandet.companion import build
from bandet.matpow import dense_pow
from bandet.oracle import (
    F_map,
    build_A0,
    build_P,
    chain_det,
    dense_det_bareiss,
    dense_det_field,
    dense_det_lu,
    reduction_det,
    start_reduction,
)
from bandet.scalar import PrimeField, ScaledValue

from conftest import WORKED_EXAMPLES, bands, cofactor_det, penta, random_band


def test_bareiss_small():
    assert dense_det_bareiss([[7]]) == 7
    assert dense_det_bareiss([[1 if i == j else 0 for j in range(6)] for i in range(6)]) == 1
    assert dense_det_bareiss([[1, 2], [3, 4]]) == -2
    assert dense_det_bareiss([]) == 1


def test_bareiss_needs_pivoting():
    assert dense_det_bareiss([[0, 1], [1, 0]]) == -1
    assert dense_det_bareiss([[0, 0], [1, 0]]) == 0


def test_bareiss_rejects_non_square():
    with pytest.raises(ValueError):
        dense_det_bareiss([[1, 2]])


@settings(max_examples=60)
@given(st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=7),
                                min_size=n, max_size=n), min_size=n, max_size=n)))
def test_bareiss_matches_cofactor(m):
    assert dense_det_bareiss(m) == cofactor_det(m)


def test_field_elimination_matches_bareiss_mod_p(rng):
    f = PrimeField(1_000_003)
    for _ in range(20):
        n = rng.randint(1, 7)
        m = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
        assert dense_det_field(m, f) == dense_det_bareiss(m) % f.p


def test_lu_examples():
    assert dense_det_lu([[2, 0, 0], [0, 2, 0], [0, 0, 2]]) == ScaledValue(1, 1.0, 3)
    assert dense_det_lu([[0, 1, 0], [1, 0, 0], [0, 0, 1]]).to_float() == -1.0
    assert dense_det_lu([[1, 2], [2, 4]]).is_zero() or abs(dense_det_lu([[1, 2], [2, 4]]).to_float()) < 1e-12


def test_lu_matches_bareiss_10x10(rng):
    for _ in range(5):
        m = [[rng.randint(-20, 20) for _ in range(10)] for _ in range(10)]
        exact = dense_det_bareiss(m)
        got = dense_det_lu(m).to_float()
        assert got == pytest.approx(float(exact), rel=1e-9)


# --- reduction chain -------------------------------------------------------


def test_A0_tridiagonal():
    assert build_A0(BandSpec(1, 1, ("a", "b", "c"))) == [["a"], ["c"]]


def test_A0_pentadiagonal():
    assert build_A0(BandSpec(2, 2, tuple("abcde"))) == [["a", "b"], ["d", "a"], ["e", "d"], [0, "e"]]


def test_P0_is_column_rotation_of_T():
    spec = BandSpec(2, 1, (F(1), F(2), F(3), F(4)))
    n = 6
    T = dense(spec, n)
    P = build_P(spec, n, build_A0(spec))
    rotated = [row[spec.s:] + row[: spec.s] for row in T]
    assert P == rotated


@settings(max_examples=30, deadline=None)
@given(bands(k_max=5), st.integers(0, 7))
def test_T_and_P0_determinants(spec, extra):
    n = spec.k + extra
    P0 = build_P(spec, n, build_A0(spec))
    lhs = dense_det_bareiss(dense(spec, n))
    assert lhs == (-1) ** ((n - 1) * spec.s) * dense_det_bareiss(P0)


@settings(max_examples=30, deadline=None)
@given(bands(k_max=5))
def test_F_is_left_multiplication_by_C(spec):
    C = build(spec).to_dense()
    A = [[F(x) for x in row] for row in build_A0(spec)]
    for i in range(1, 11):
        nxt = F_map(spec, A)
        assert nxt == [[sum(C[r][t] * A[t][j] for t in range(spec.k)) for j in range(spec.s)]
                       for r in range(spec.k)]
        A = nxt
        Ci = dense_pow(build(spec), i).rows
        A0 = build_A0(spec)
        assert A == [[sum(Ci[r][t] * A0[t][j] for t in range(spec.k)) for j in range(spec.s)]
                     for r in range(spec.k)]


def test_reduction_state_tracks_F():
    spec = penta(WORKED_EXAMPLES["II"][0])
    st_ = start_reduction(spec, 9)
    A = st_.A
    st_.step()
    assert st_.A == F_map(spec, A)
    assert st_.factor == spec.a_s and st_.i == 1


def test_chain_consistency_all_steps(rng):
    for _ in range(12):
        k = rng.randint(2, 5)
        spec = random_band(rng, k)
        n = rng.randint(k, 12)
        truth = dense_det_bareiss(dense(spec, n))
        for i in range(0, n - spec.s + 1):
            assert chain_det(spec, n, i) == truth


def test_reduction_example_I_n5():
    spec = penta(WORKED_EXAMPLES["I"][0])
    assert reduction_det(spec, 5) == dense_det_bareiss(dense(spec, 5))


def test_reduction_tridiagonal_n6():
    assert reduction_det(BandSpec(1, 1, (F(2), F(1), F(1))), 6) == 7


def test_reduction_zero_steps():
    spec = penta((3, 1, 2, -1, 4))
    n = 7
    P0 = build_P(spec, n, build_A0(spec))
    assert chain_det(spec, n, 0) == (-1) ** ((n - 1) * 2) * dense_det_bareiss(P0)


def test_reduction_requires_n_ge_k():
    with pytest.raises(ValueError):
        reduction_det(penta((3, 1, 2, -1, 4)), 3)


@settings(max_examples=40, deadline=None)
@given(bands(k_max=5), st.integers(0, 25))
def test_formula_for_C_times_A0(spec, extra):
    """det(top s x s of C^(n-s) A0) == (-a_s)^s * det(top-left s x s of C^n)."""
    s = spec.s
    n = s + 1 + extra
    comp = build(spec)
    A0 = build_A0(spec)
    Cns = dense_pow(comp, n - s).rows
    prod = [[sum(Cns[r][t] * A0[t][j] for t in range(spec.k)) for j in range(s)] for r in range(s)]
    Cn = dense_pow(comp, n).rows
    block = [list(Cn[r][:s]) for r in range(s)]
    assert dense_det_bareiss(prod) == (-F(spec.a_s)) ** s * dense_det_bareiss(block)
