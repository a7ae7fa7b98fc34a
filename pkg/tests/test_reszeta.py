import json

import pytest

from motivic_nearby.cones import RelOpenCone, parse_cone
from motivic_nearby.errors import RefusedComputation
from motivic_nearby.jets import jet_count, multi_jet_count
from motivic_nearby.lpoly import LPoly
from motivic_nearby.motring import ClassExpr, count_points, lambda_table, torus_bundle
from motivic_nearby.poly import parse_polynomial
from motivic_nearby.reszeta import (
    FIXTURES,
    acampo_lambda,
    coordinate_datum,
    datum_from_json,
    load_fixture,
    nearby_cycles,
    truncated_nearby,
    truncated_zeta,
    zeta_series,
)
from motivic_nearby.srseries import SrSeries, coefficient_extract, limit_T_infinity, p_term

SINGLE = ("line", "node", "cusp")
PRODUCTS = ("product_2_3", "product_2_5", "product_3_4")


def test_all_fixtures_load_and_round_trip():
    for name in FIXTURES:
        R = load_fixture(name)
        assert datum_from_json(json.loads(json.dumps(R.to_json()))) == R


def test_line_zeta():
    R = load_fixture("line")
    Z = zeta_series(R)
    (atom,) = [a for c in Z.terms.values() for a in c.terms]
    assert Z == SrSeries({((-1, 1),): ClassExpr.of(atom)})


def test_cusp_zeta_has_seven_terms():
    Z = zeta_series(load_fixture("cusp"))
    assert len(Z.terms) == 7
    assert {k for k in Z.terms} >= {((-5, 6),), ((-5, 6), (-2, 2)), ((-5, 6), (-1, 1))}


def test_empty_datum():
    R = datum_from_json({"p": 1, "dim": 1, "divisors": [], "strata": []})
    assert not zeta_series(R) and nearby_cycles(R) == 0


def test_line_nearby_is_single_torus():
    assert nearby_cycles(load_fixture("line")) == ClassExpr.of(torus_bundle([1], monomial=[(1,)], base_label="E_{E}"))


def test_cusp_nearby_signs():
    S = nearby_cycles(load_fixture("cusp"))
    signs = sorted((a.rank, int(c.evaluate(1))) for a, c in S.terms.items())
    assert signs == [(1, 1)] * 4 + [(2, -1)] * 3


def test_node_nearby_term_count():
    S = nearby_cycles(load_fixture("node"))
    assert len(S.terms) == 5  # singletons E0, S1, S2 and the two crossings


@pytest.mark.parametrize("name", SINGLE + PRODUCTS)
def test_minus_limit_equals_nearby_cycles(name):
    R = load_fixture(name)
    which = 0 if R.p == 1 else "F"
    assert -limit_T_infinity(zeta_series(R, which)) == nearby_cycles(R, which)


@pytest.mark.parametrize("name", SINGLE)
def test_acampo_formula(name):
    R = load_fixture(name)
    table = lambda_table(nearby_cycles(R, restrict=True), 12)
    assert list(table) == [acampo_lambda(R, n) for n in range(1, 13)]


class TestTruncated:
    def test_diagonal_ray_on_product(self):
        R = load_fixture("product_2_3")
        C, _ = parse_cone("a=b; a>0; b>0")
        S = truncated_nearby(R, C)
        ((atom, coeff),) = S.terms.items()
        assert atom.rank == 2 and coeff == -1

    def test_edge_ray_on_coordinates(self):
        C, _ = parse_cone("2a=3b; a>0; b>0")
        S = truncated_nearby(coordinate_datum(2), C)
        ((atom, coeff),) = S.terms.items()
        assert atom.rank == 2 and coeff == -1

    def test_empty_cone(self):
        C = RelOpenCone(2, (), ((1, 0), (-1, 0)))
        assert truncated_nearby(coordinate_datum(2), C) == 0
        assert not truncated_zeta(coordinate_datum(2), C, (1, 1))

    def test_orthant_on_coordinates(self):
        R = coordinate_datum(2)
        Z = truncated_zeta(R, RelOpenCone.positive_orthant(2), (1, 1), restrict=True)
        assert set(Z.terms) == {((-1, 1), (-1, 1))}

    @pytest.mark.parametrize("name,literal", [
        ("product_2_3", "a=b; a>0; b>0"),
        ("product_2_3", "a>0; b>0"),
        ("product_3_4", "3a=2b; a>0; b>0"),
        ("cusp", "a>0"),
    ])
    def test_limit_independent_of_ell(self, name, literal):
        R = load_fixture(name)
        C, _ = parse_cone(literal)
        S = truncated_nearby(R, C)
        ells = [(1,), (2,)] if R.p == 1 else [(1, 1), (2, 3)]
        results = [limit_T_infinity(truncated_zeta(R, C, ell)) for ell in ells]
        assert results[0] == results[1] == S

    def test_ell_must_be_positive(self):
        with pytest.raises(ValueError):
            truncated_zeta(coordinate_datum(2), RelOpenCone.positive_orthant(2), (1, -1))


def test_restriction_needs_factor_data():
    with pytest.raises(RefusedComputation):
        load_fixture("cusp").restrict([1])


@pytest.mark.parametrize("name,q,n", [("line", 3, 2), ("node", 3, 2), ("cusp", 2, 3), ("cusp", 5, 1)])
def test_jet_counts_match_zeta_coefficients(name, q, n):
    R = load_fixture(name)
    g = parse_polynomial(R.functions[0], list(R.variables))
    brute, _ = jet_count(g, n, q)
    assert brute == q ** (n * R.dim) * count_points(coefficient_extract(zeta_series(R), n), q)


@pytest.mark.parametrize("literal", ["a>0; b>0", "a>b; b>0", "a=b; a>0", "2b>a; 2a>b"])
@pytest.mark.parametrize("q", [2, 3])
def test_multi_jet_counts_match_truncated_coefficients(literal, q):
    R = coordinate_datum(2)
    C, _ = parse_cone(literal)
    Z = truncated_zeta(R, C, (1, 1), restrict=True)
    x, y = parse_polynomial("x", ["x", "y"]), parse_polynomial("y", ["x", "y"])
    for m in range(2, 4 if q == 3 else 5):
        brute = sum(multi_jet_count([x, y], (a, m - a), q) for a in range(1, m) if C.contains((a, m - a)))
        assert brute == q ** (2 * m) * count_points(coefficient_extract(Z, m), q)
