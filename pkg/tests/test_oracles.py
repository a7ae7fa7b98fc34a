import cmath

import pytest

from motivic_nearby.oracles import (
    brieskorn_lambda,
    brieskorn_lambda_closed,
    brute_force_compact_faces,
    cyclotomic,
    root_of_unity_sum,
    torus_curve_euler,
)
from motivic_nearby.poly import parse_polynomial


def test_cyclotomic_polynomials():
    assert cyclotomic(1) == (-1, 1)
    assert cyclotomic(6) == (1, -1, 1)
    assert cyclotomic(12) == (1, 0, -1, 0, 1)


@pytest.mark.parametrize("exps,M", [([1, 5], 6), ([0, 1, 2, 3, 4], 5), ([1, 2, 3, 4], 5), ([2, 10], 12)])
def test_character_sums_against_floats(exps, M):
    approx = sum(cmath.exp(2j * cmath.pi * e / M) for e in exps)
    assert root_of_unity_sum(exps, M) == round(approx.real)
    assert abs(approx.imag) < 1e-9


def test_non_rational_sum_rejected():
    with pytest.raises(ValueError):
        root_of_unity_sum([1], 5)


@pytest.mark.parametrize("a,b", [(2, 3), (2, 5), (3, 4), (4, 6), (5, 7)])
def test_brieskorn_closed_form(a, b):
    for n in range(1, a * b + 1):
        assert brieskorn_lambda((a, b), n) == brieskorn_lambda_closed(a, b, n)


def test_cusp_eigenvalues():
    assert [brieskorn_lambda((2, 3), n) for n in range(1, 7)] == [0, 2, 3, 2, 0, -1]


def test_curve_oracle_examples():
    assert torus_curve_euler(parse_polynomial("x + y - 1")) == -1
    assert torus_curve_euler(parse_polynomial("x^2 + y^3 - 1")) == -6
    assert torus_curve_euler(parse_polynomial("x^2 + 2*x*y + y^2 - 1")) == -2


def test_brute_force_faces():
    assert brute_force_compact_faces([(2, 0), (0, 3)]) == {((2, 0),), ((0, 3),), ((0, 3), (2, 0))}
