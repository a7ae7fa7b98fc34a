import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motivic_nearby.lpoly import LPoly
from motivic_nearby.srseries import (
    SrSeries,
    coefficient_extract,
    from_resolution_factor,
    limit_T_infinity,
    p_term,
    series_arith,
)

L = LPoly.L()


def test_generators_are_single_terms():
    assert p_term(0, 1).terms == {((0, 1),): 1}
    assert p_term(-1, 1).terms == {((-1, 1),): 1}
    assert p_term(2, 3).terms == {((2, 3),): 1}


def test_t_exponent_must_be_positive():
    with pytest.raises(ValueError):
        p_term(1, 0)


@pytest.mark.parametrize("N,nu", [(1, 1), (6, 5), (2, 2)])
def test_resolution_factor(N, nu):
    assert from_resolution_factor(N, nu) == p_term(-nu, N)


def test_arithmetic():
    assert series_arith(p_term(0, 1), p_term(0, 1), "add").terms == {((0, 1),): 2}
    assert series_arith(p_term(0, 1), p_term(0, 2), "mul").terms == {((0, 1), (0, 2)): 1}
    assert series_arith(p_term(-1, 1), L, "scalar").terms == {((-1, 1),): L}


def test_coefficients():
    assert coefficient_extract(p_term(-1, 1), 3) == LPoly.L(-3)
    assert coefficient_extract(p_term(0, 2), 3) == 0
    assert coefficient_extract(p_term(0, 1) * p_term(0, 1), 3) == 2
    assert coefficient_extract(SrSeries.constant(5), 0) == 5
    assert coefficient_extract(SrSeries(), 4) == 0


def test_limits():
    assert limit_T_infinity(p_term(3, 7)) == -1
    assert limit_T_infinity(SrSeries.constant(4)) == 4
    assert limit_T_infinity(p_term(1, 2) * p_term(-3, 5)) == 1


@given(st.integers(1, 30), st.integers(1, 30))
def test_resolution_factor_limit(N, nu):
    assert limit_T_infinity(from_resolution_factor(N, nu)) == -1


factor = st.tuples(st.integers(-4, 4), st.integers(1, 4))
term = st.tuples(st.lists(factor, max_size=4), st.integers(-5, 5))
series = st.lists(term, max_size=5).map(
    lambda ts: sum((SrSeries({tuple(fs): c}) for fs, c in ts), SrSeries()))


@given(series, series, st.integers(-4, 4))
def test_limit_is_linear(a, b, c):
    assert limit_T_infinity(a + b) == limit_T_infinity(a) + limit_T_infinity(b)
    assert limit_T_infinity(a * c) == c * limit_T_infinity(a)


@given(series, series, st.integers(0, 6))
def test_coefficients_of_product_convolve(a, b, n):
    conv = sum(coefficient_extract(a, k) * coefficient_extract(b, n - k) for k in range(n + 1))
    assert coefficient_extract(a * b, n) == conv


@given(st.lists(factor, max_size=4))
def test_product_limit_is_signed(fs):
    s = SrSeries({tuple(fs): 1})
    assert limit_T_infinity(s) == (-1) ** len(fs)


def test_coefficients_match_truncated_expansion():
    # p_{e,i} = sum_m L^{em} T^{im}: compare against explicit truncated products
    rng = random.Random(3)
    for _ in range(20):
        fs = [(rng.randint(-2, 2), rng.randint(1, 3)) for _ in range(rng.randint(1, 3))]
        upto = 8
        poly = {0: LPoly(1)}
        for e, i in fs:
            geo = {i * m: LPoly.L(e * m) for m in range(1, upto // i + 1)}
            nxt = {}
            for a, ca in poly.items():
                for b, cb in geo.items():
                    if a + b <= upto:
                        nxt[a + b] = nxt.get(a + b, LPoly()) + ca * cb
            poly = nxt
        s = SrSeries({tuple(fs): 1})
        for n in range(upto + 1):
            assert coefficient_extract(s, n) == poly.get(n, 0)


def test_json_is_nested_arrays():
    s = p_term(-1, 1) * p_term(-2, 2) + SrSeries.constant(3)
    assert s.to_json() == [[3, []], [1, [[-2, 2], [-1, 1]]]]
