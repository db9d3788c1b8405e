import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bandet.bandspec import (
    BandSpec,
    LengthMismatch,
    NegativeBandwidth,
    ZeroLeadingCoefficient,
    ZeroTrailingCoefficient,
    dense,
    transpose,
    validate,
)
from bandet.oracle import dense_det_bareiss

from conftest import bands


def test_validate_accepts_tridiagonal():
    spec = BandSpec(1, 1, ("a", "b", "c"))
    assert validate(spec) is spec


@pytest.mark.parametrize(
    "spec, err",
    [
        (BandSpec(2, 2, (1, 2, 0, 4, 5)), ZeroLeadingCoefficient),
        (BandSpec(2, 2, (1, 2, 3, 4, 0)), ZeroTrailingCoefficient),
        (BandSpec(2, 2, (1, 2, 3, 4)), LengthMismatch),
        (BandSpec(-1, 2, (1, 2)), NegativeBandwidth),
    ],
)
def test_validate_errors(spec, err):
    with pytest.raises(err) as info:
        validate(spec)
    assert info.value.code == err.code


def test_error_codes_are_distinct():
    codes = {e.code for e in (ZeroLeadingCoefficient, ZeroTrailingCoefficient, LengthMismatch)}
    assert len(codes) == 3


def test_dense_layout():
    assert dense(BandSpec(1, 1, ("a", "b", "c")), 2) == [["a", "b"], ["c", "a"]]
    assert dense(BandSpec(2, 2, tuple("abcde")), 3) == [
        ["a", "b", "c"],
        ["d", "a", "b"],
        ["e", "d", "a"],
    ]
    assert dense(BandSpec(2, 1, (7, 1, 2, 3)), 1) == [[7]]


def test_dense_asymmetric_band():
    m = dense(BandSpec(2, 1, (0, 1, 2, 3)), 4)
    assert m == [[0, 1, 2, 0], [3, 0, 1, 2], [0, 3, 0, 1], [0, 0, 3, 0]]


def test_transpose_examples():
    assert transpose(BandSpec(1, 1, ("a", "b", "c"))) == BandSpec(1, 1, ("a", "c", "b"))
    assert transpose(BandSpec(2, 1, ("a", "b", "c", "d"))) == BandSpec(1, 2, ("a", "d", "b", "c"))


def test_transpose_preserves_det_n5():
    spec = BandSpec(2, 1, tuple(map(Fraction, (4, -3, 2, 5))))
    assert dense_det_bareiss(dense(transpose(spec), 5)) == dense_det_bareiss(dense(spec, 5))


@given(bands(k_max=5), st.integers(1, 20))
def test_transpose_is_matrix_transpose(spec, n):
    m = dense(spec, n)
    assert dense(transpose(spec), n) == [list(col) for col in zip(*m)]
    assert transpose(transpose(spec)) == spec


@given(bands(k_max=5), st.integers(1, 12))
def test_dense_is_toeplitz(spec, n):
    m = dense(spec, n)
    for i in range(1, n):
        for j in range(1, n):
            assert m[i][j] == m[i - 1][j - 1]
    assert len({x for row in m for x in row}) <= spec.k + 2  # band values plus zero


def test_json_roundtrip():
    spec = BandSpec.from_strings(2, 1, ["3", "-7/2", "1", "5"])
    text = json.dumps(spec.to_json())
    assert json.loads(text) == {"s": 2, "r": 1, "coeffs": ["3", "-7/2", "1", "5"]}
    assert BandSpec.from_json(text) == spec


def test_from_strings_float_mode():
    spec = BandSpec.from_strings(1, 1, ["0.5", "2", "1/4"], exact=False)
    assert spec.coeffs == (0.5, 2, Fraction(1, 4))
    with pytest.raises(ValueError):
        BandSpec.from_strings(1, 1, ["0.5", "2", "1"], exact=True)
