import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motivic_nearby.cones import extreme_rays
from motivic_nearby.hull import polytope_normalized_volume
from motivic_nearby.linalg import dot
from motivic_nearby.newton import (
    build_polyhedron,
    ell_positive_on_closure,
    ell_value,
    face_of_covector,
    face_status,
    nondegeneracy_report,
)
from motivic_nearby.oracles import brute_force_compact_faces
from motivic_nearby.poly import parse_polynomial

XY = ["x", "y"]


def G(text, names=XY):
    return build_polyhedron(parse_polynomial(text, names))


def face_point_sets(Gm):
    return {tuple(sorted(f.points)) for f in Gm.faces}


class TestHull:
    def test_two_points(self):
        Gm = build_polyhedron([(2, 0), (0, 3)])
        assert set(Gm.vertices) == {(2, 0), (0, 3)}
        (edge,) = [f for f in Gm.faces if f.dim == 1]
        assert edge.weights == (3, 2)

    def test_single_point(self):
        Gm = build_polyhedron([(1, 1)])
        assert Gm.vertices == ((1, 1),)
        assert [f.dim for f in Gm.faces] == [0]

    def test_point_below_edge_is_a_vertex(self):
        Gm = build_polyhedron([(2, 0), (1, 1), (0, 3)])
        assert (1, 1) in Gm.vertices

    def test_negative_exponents_rejected(self):
        with pytest.raises(ValueError):
            build_polyhedron([(1, -1)])

    @pytest.mark.parametrize("support", [
        [(2, 0), (0, 3)],
        [(2, 0), (1, 1), (0, 3)],
        [(4, 0), (2, 1), (0, 3), (1, 2)],
        [(3, 0, 0), (0, 4, 0), (0, 0, 5), (1, 1, 1)],
        [(2, 0, 0), (0, 2, 0), (0, 0, 2), (1, 1, 0)],
        [(5, 0), (3, 1), (1, 2), (0, 6), (2, 2)],
    ])
    def test_against_brute_force_normals(self, support):
        expected = brute_force_compact_faces(support, height=12)
        assert face_point_sets(build_polyhedron(support)) == expected


class TestFaces:
    def test_cusp_faces_and_tags(self):
        faces = {f.vertices: f.J for f in G("x^2 + y^3").faces}
        assert faces == {((2, 0),): frozenset({2}), ((0, 3),): frozenset({1}), ((0, 3), (2, 0)): frozenset()}

    def test_monomial_single_face(self):
        (f,) = G("x*y").faces
        assert f.vertices == ((1, 1),) and f.J == frozenset()

    def test_interior_lattice_point_stays_on_edge(self):
        Gm = G("x^2 + x*y + y^2")
        tags = {f.vertices: f.J for f in Gm.faces}
        assert tags == {((2, 0),): frozenset({2}), ((0, 2),): frozenset({1}), ((0, 2), (2, 0)): frozenset()}
        edge = next(f for f in Gm.faces if f.dim == 1)
        assert (1, 1) in edge.points

    def test_dual_cones_of_cusp(self):
        Gm = G("x^2 + y^3")
        by_v = {f.vertices: f for f in Gm.faces}
        assert extreme_rays(by_v[((0, 3), (2, 0))].dual_cone) == [(3, 2)]
        # (2,0) minimizes when 2a1 < 3a2
        assert by_v[((2, 0),)].dual_cone.contains((1, 1))
        assert not by_v[((2, 0),)].dual_cone.contains((3, 1))
        assert by_v[((0, 3),)].dual_cone.contains((3, 1))

    def test_line_has_three_cones(self):
        assert len(G("x + y").faces) == 3


class TestSupportFunction:
    def test_values(self):
        Gm = G("x^2 + y^3")
        assert ell_value(Gm, (1, 1)) == 2
        assert ell_value(Gm, (3, 2)) == 6
        assert ell_value(Gm, (0, 0)) == 0

    def test_face_of_covector(self):
        Gm = G("x^2 + y^3")
        assert face_of_covector(Gm, (1, 1)).vertices == ((2, 0),)
        assert face_of_covector(Gm, (3, 2)).dim == 1
        assert face_of_covector(Gm, (1, 2)).vertices == ((2, 0),)

    def test_nonpositive_covector_rejected(self):
        with pytest.raises(ValueError):
            ell_value(G("x^2 + y^3"), (1, -1))


POLYS = ["x^2 + y^3", "x^2*y + y^4 + x^5", "x^3 + x*y + y^3", "x^4 + x^2*y^2 + y^5 + x*y^3"]


@pytest.mark.parametrize("text", POLYS)
def test_fan_partitions_positive_orthant(text):
    Gm = G(text)
    rng = random.Random(7)
    for _ in range(300):
        a = (rng.randint(1, 50), rng.randint(1, 50))
        hits = [f for f in Gm.faces if f.dual_cone.contains(a)]
        assert len(hits) == 1
        assert hits[0] is face_of_covector(Gm, a) or hits[0].vertices == face_of_covector(Gm, a).vertices
        ell = ell_value(Gm, a)
        assert all(dot(a, b) == ell for b in hits[0].points)


@pytest.mark.parametrize("text", POLYS + ["x*y", "x + y^2", "x^2*y + x*y^3"])
def test_open_part_iff_ell_positive_on_closure(text):
    Gm = G(text)
    for f in Gm.faces:
        assert ell_positive_on_closure(Gm, f) == (not f.J)


support_2d = st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=6).filter(
    lambda s: (0, 0) not in s)


@given(support_2d, st.tuples(st.integers(0, 9), st.integers(0, 9)), st.integers(0, 5))
def test_ell_positively_homogeneous(support, a, lam):
    Gm = build_polyhedron(support)
    assert ell_value(Gm, tuple(lam * x for x in a)) == lam * ell_value(Gm, a)


@given(support_2d, st.tuples(st.integers(0, 9), st.integers(0, 9)), st.tuples(st.integers(0, 9), st.integers(0, 9)))
def test_ell_superadditive(support, a, b):
    Gm = build_polyhedron(support)
    s = tuple(x + y for x, y in zip(a, b))
    assert ell_value(Gm, s) >= ell_value(Gm, a) + ell_value(Gm, b)


@given(support_2d)
def test_hull_matches_brute_force(support):
    assert face_point_sets(build_polyhedron(support)) == brute_force_compact_faces(support, height=14)


class TestNondegeneracy:
    def test_cusp_nondegenerate(self):
        for rep in nondegeneracy_report(parse_polynomial("x^2 + y^3", XY)):
            assert not rep.strong.degenerate and not rep.kouchnirenko.degenerate

    def test_square_of_line_degenerate_with_exact_witness(self):
        reports = nondegeneracy_report(parse_polynomial("x^2 + 2*x*y + y^2", XY))
        edge = next(r for r in reports if r.face.dim == 1)
        assert edge.kouchnirenko.kind == "degenerate_char0"
        point = edge.kouchnirenko.point
        fp = edge.face_poly
        assert fp.evaluate(point) == 0
        assert all(fp.derivative(i).evaluate(point) == 0 for i in range(2))
        assert all(x != 0 for x in point)

    def test_monomial_certified(self):
        strong, kou = face_status(parse_polynomial("x*y", XY))
        assert strong.kind == kou.kind == "certified_nondegenerate"

    def test_binomial_with_dependent_exponents(self):
        # x^2 - y^2 restricted to its edge: exponents (2,0), (0,2) independent, so fine
        strong, _ = face_status(parse_polynomial("x^2 - y^2", XY))
        assert not strong.degenerate
        # x^2*y^2 - x*y: exponents (2,2), (1,1) are dependent; gradient vanishes where xy = 1/2
        strong, kou = face_status(parse_polynomial("x^2*y^2 - x*y", XY))
        assert strong.degenerate and not kou.degenerate

    def test_rational_critical_point_is_found(self):
        strong, _ = face_status(parse_polynomial("x^3 + x*y + y^3 + 1", XY))
        assert strong.kind == "degenerate_char0"
        assert tuple(strong.point) == (Fraction(-1, 3), Fraction(-1, 3))

    def test_statuses_serialize(self):
        strong, _ = face_status(parse_polynomial("x^3 + y^3 + 1", XY))
        js = strong.to_json()
        assert js["status"] == "probabilistically_nondegenerate"
        assert js["primes"]


def test_normalized_volume_of_simplex():
    assert polytope_normalized_volume([(0, 0), (2, 0), (0, 3)]) == 6
    assert polytope_normalized_volume([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]) == 1
    assert polytope_normalized_volume([(0, 0), (1, 1), (2, 2)]) == 0
