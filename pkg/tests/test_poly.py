from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motivic_nearby.errors import ParseError
from motivic_nearby.newton import build_polyhedron
from motivic_nearby.poly import (
    SparsePoly,
    eval_finite_field,
    face_restriction,
    gradient,
    parse_polynomial,
    quasi_degree,
    render,
)

XY = ["x", "y"]


def P(text, names=XY):
    return parse_polynomial(text, names)


class TestParse:
    def test_sum_of_powers(self):
        assert P("x^2 + y^3").terms == {(2, 0): 1, (0, 3): 1}

    def test_cancellation_gives_zero(self):
        p = P("x*y - x*y")
        assert p.is_zero() and dict(p.terms) == {}

    def test_mixed_terms(self):
        assert P("2*x^2*y + y^3 - 5").terms == {(2, 1): 2, (0, 3): 1, (0, 0): -5}

    def test_parentheses_and_powers_expand(self):
        assert P("(x+y)^2") == P("x^2 + 2*x*y + y^2")

    def test_rational_coefficients(self):
        assert P("1/2*x + 3/4").terms == {(1, 0): Fraction(1, 2), (0, 0): Fraction(3, 4)}

    def test_inferred_variables_are_sorted(self):
        p = parse_polynomial("y + x^2")
        assert p.nvars == 2 and p.terms == {(2, 0): 1, (0, 1): 1}

    @pytest.mark.parametrize("bad", ["x^", "x + * y", "(x + y", "x y z)", "x^-1^"])
    def test_malformed_input_reports_position(self, bad):
        with pytest.raises(ParseError) as info:
            P(bad)
        assert info.value.position is not None or "position" not in str(info.value)

    def test_unknown_variable_rejected(self):
        with pytest.raises(ParseError):
            parse_polynomial("x + z", XY)


class TestFaceRestriction:
    def test_edge_keeps_both_vertices(self):
        f = P("x^2 + y^3")
        edge = next(fc for fc in build_polyhedron(f).faces if fc.dim == 1)
        assert face_restriction(f, edge) == f

    def test_vertex(self):
        f = P("x^2 + y^3")
        vertex = next(fc for fc in build_polyhedron(f).faces if fc.vertices == ((2, 0),))
        assert face_restriction(f, vertex) == P("x^2")

    def test_interior_point_changes_hull(self):
        f = P("x^2 + x*y + y^3")
        faces = build_polyhedron(f).faces
        polys = {face_restriction(f, fc) for fc in faces if fc.dim == 1}
        assert polys == {P("x^2 + x*y"), P("x*y + y^3")}


def test_gradient_examples():
    assert gradient(P("x^2 + y^3")) == (P("2*x"), P("3*y^2"))
    assert gradient(SparsePoly.constant(2, 5)) == (SparsePoly(2), SparsePoly(2))
    assert gradient(P("x^2*y")) == (P("2*x*y"), P("x^2"))


def test_quasi_degree_examples():
    assert quasi_degree(P("x^2 + y^3")) == ((3, 2), 6)
    assert quasi_degree(P("x + y")) == ((1, 1), 1)
    assert quasi_degree(P("x*y")) == ((1, 1), 2)


def test_finite_field_evaluation():
    f = P("x^2 + y^3")
    assert eval_finite_field(f, (1, 1), 5) == 2
    assert eval_finite_field(f, (2, 2), 5) == 2
    with pytest.raises(ValueError):
        eval_finite_field(parse_polynomial("1/2*x", ["x"]), (1,), 2)


def test_render_uses_names_and_signs():
    assert render(P("x^2 - 3*x*y + 1/2"), XY) == "x^2 - 3*x*y + 1/2"


# ---------------------------------------------------------------- properties

exponents = st.tuples(st.integers(0, 4), st.integers(0, 4))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0)
polys = st.dictionaries(exponents, coeffs, max_size=6).map(lambda d: SparsePoly(2, d))


@given(polys)
def test_parse_render_round_trip(p):
    assert parse_polynomial(render(p, XY), XY) == p


@given(polys, polys)
def test_gradient_leibniz(a, b):
    for da, db, dab in zip(gradient(a), gradient(b), gradient(a * b)):
        assert dab == da * b + a * db


@given(polys.filter(lambda p: not p.is_zero()))
def test_quasi_degree_constant_on_every_face(p):
    for face in build_polyhedron(p).faces:
        fp = face_restriction(p, face)
        assert all(sum(wi * ei for wi, ei in zip(face.weights, e)) == face.degree for e in fp.support)
