"""Nearby cycles of a composition P(f_1, ..., f_p) assembled face by face.

For every J (the functions forced to vanish) and every compact face delta of
the Newton polyhedron of P_J = P|_{y_J = 0} lying in no coordinate
hyperplane, the truncated class S^{sigma(delta)} of f_{J^c} on X_J is pushed
through the convolution operator of the face polynomial P_delta.

On a torus atom [A] with monomial map u -> u^{N_I} the operator emits

    Psi([A]) = -[A \\ {Q = 0}] + [G_m x {Q = 0}],   Q = P_delta(u^{N_I}),

where the second atom is dropped when Q is a monomial (its torus zero set is
empty).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from typing import Sequence

from .cones import extreme_rays, preimage_cone
from .errors import DegenerateFaceError, RefusedComputation
from .linalg import Vector, dot, lcm, primitive
from .motring import (
    TORUS_BUNDLE,
    ClassExpr,
    euler_fiber,
    hypsurf_compl,
    lambda_table,
    milnor_number,
    monodromy_zeta,
    render_zeta,
    triv_nearby,
)
from .newton import FaceData, build_polyhedron, face_status
from .poly import SparsePoly, face_restriction, quasi_degree, render
from .reszeta import ResolutionDatum, coordinate_datum, truncated_nearby


@dataclass(frozen=True)
class FaceContribution:
    J: frozenset[int]
    face: FaceData
    face_poly: SparsePoly
    coefficient: int
    atoms: ClassExpr
    vertices: tuple[Vector, ...]

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        kept = [i for i in range(len(self.vertices[0])) if i + 1 not in self.J]
        local = [names[i] for i in kept] if names else None
        return {
            "J": sorted(self.J),
            "face": [list(v) for v in self.vertices],
            "face_polynomial": render(self.face_poly, local),
            "coefficient": self.coefficient,
            "atoms": self.atoms.to_json(),
        }


def _weights_for(face: FaceData | None, cols: Sequence[Sequence[int]], Q: SparsePoly) -> tuple[Vector, int]:
    if face is None:
        return quasi_degree(Q)
    pre = preimage_cone(cols, face.dual_cone)
    rays = extreme_rays(pre)
    if not rays:
        raise ValueError("the atom's contact cone misses the face's dual cone")
    k = primitive([sum(r[i] for r in rays) for i in range(len(cols))])
    e0 = next(iter(Q.support))
    return k, dot(k, e0)


def psi_face_apply(Pd: SparsePoly, c: ClassExpr, face: FaceData | None = None) -> ClassExpr:
    """Apply the convolution operator of the face polynomial to torus atoms.

    ``face`` fixes the monodromy weights as the canonical lattice point of the
    atom's contact cone; without it the weights come from quasi_degree.
    """
    if face is not None:
        strong, _ = face_status(Pd)
        if strong.degenerate:
            raise DegenerateFaceError(f"face polynomial {render(Pd)} is degenerate ({strong.kind})")
    out = ClassExpr()
    for atom, coeff in c.terms.items():
        if atom.kind != TORUS_BUNDLE or not atom.monomial:
            raise RefusedComputation("the convolution operator needs torus atoms with a monomial map")
        if len(atom.monomial[0]) != Pd.nvars:
            raise ValueError("monomial map and face polynomial disagree on the number of functions")
        Q = Pd.compose_monomial(atom.monomial)
        if Q.is_zero():
            raise DegenerateFaceError(f"{render(Pd)} vanishes identically on the torus atom {atom.describe()}")
        w, N = _weights_for(face, atom.monomial, Q)
        base = dict(base_chi=atom.base_chi, base_count=atom.base_count, base_label=atom.base_label)
        out = out + ClassExpr.of(hypsurf_compl(Q, w, N, **base), -coeff)
        if len(Q.terms) > 1:
            out = out + ClassExpr.of(triv_nearby(Q, w, N, **base), coeff)
    return out


def _embed(v: Vector, J: frozenset[int], p: int) -> Vector:
    it = iter(v)
    return tuple(0 if i + 1 in J else next(it) for i in range(p))


def nearby_open_part(P: SparsePoly, R: ResolutionDatum | None = None,
                     J: frozenset[int] = frozenset(), p_full: int | None = None) -> list[FaceContribution]:
    """Contributions of the faces not in any coordinate hyperplane (the part off f_1...f_p = 0)."""
    R = R or coordinate_datum(P.nvars)
    if R.p != P.nvars:
        raise ValueError(f"P has {P.nvars} variables but the datum carries {R.p} functions")
    if P.is_zero():
        return []
    p_full = p_full or P.nvars
    G = build_polyhedron(P)
    out = []
    for face in G.faces:
        if face.J:
            continue
        Pd = face_restriction(P, face)
        S = truncated_nearby(R, face.dual_cone, restrict=True)
        if not S:
            continue
        atoms = psi_face_apply(Pd, S, face)
        coefficient = sum(int(cf.evaluate(1)) for cf in S.terms.values())
        verts = tuple(_embed(v, J, p_full) for v in face.vertices)
        out.append(FaceContribution(J, face, Pd, coefficient, atoms, verts))
    return out


def nearby_total(P: SparsePoly, R: ResolutionDatum | None = None) -> list[FaceContribution]:
    """All contributions, summed over the subsets J of functions that vanish."""
    R = R or coordinate_datum(P.nvars)
    p = P.nvars
    if R.p != p:
        raise ValueError(f"P has {p} variables but the datum carries {R.p} functions")
    if P.is_zero():
        raise ValueError("the zero polynomial has no nearby fiber")
    if P.evaluate([0] * p) != 0:
        return []
    out = []
    for size in range(p):
        for J in combinations(range(1, p + 1), size):
            PJ = P.set_zero([j - 1 for j in J])
            if PJ.is_zero():
                continue
            out.extend(nearby_open_part(PJ, R.restrict(J), frozenset(J), p))
    return out


def total_class(contribs: Sequence[FaceContribution]) -> ClassExpr:
    out = ClassExpr()
    for c in contribs:
        out = out + c.atoms
    return out


@dataclass(frozen=True)
class NearbyReport:
    contributions: tuple[FaceContribution, ...]
    total: ClassExpr
    lambda_table: tuple
    zeta: dict
    euler_fiber: int
    milnor_number: int

    @property
    def zeta_text(self) -> str:
        return render_zeta(self.zeta)

    def to_json(self, names: Sequence[str] | None = None) -> dict:
        return {
            "contributions": [c.to_json(names) for c in self.contributions],
            "lambda_table": list(self.lambda_table),
            "zeta": self.zeta_text,
            "zeta_exponents": {str(d): e for d, e in sorted(self.zeta.items())},
            "euler_fiber": self.euler_fiber,
            "milnor_number": self.milnor_number,
        }


def nearby_report(P: SparsePoly, R: ResolutionDatum | None = None, upto: int | None = None) -> NearbyReport:
    R = R or coordinate_datum(P.nvars)
    contribs = nearby_total(P, R)
    tot = total_class(contribs)
    zeta = monodromy_zeta(tot)
    period = reduce(lcm, zeta, 1)
    table = lambda_table(tot, max(upto or 0, period))
    chi = euler_fiber(tot)
    return NearbyReport(tuple(contribs), tot, tuple(table), zeta, chi, milnor_number(chi, R.dim))


def face_sets_coherent(P: SparsePoly) -> bool:
    """Faces of Gamma(P_J) off the coordinate hyperplanes match Gamma^J(P) (vertex sets)."""
    p = P.nvars
    G = build_polyhedron(P)
    for size in range(p):
        for J in combinations(range(1, p + 1), size):
            Jset = frozenset(J)
            expected = {f.vertices for f in G.faces if f.J == Jset}
            PJ = P.set_zero([j - 1 for j in J])
            got = set()
            if not PJ.is_zero():
                GJ = build_polyhedron(PJ)
                got = {tuple(sorted(_embed(v, Jset, p) for v in f.vertices)) for f in GJ.faces if not f.J}
            if got != expected:
                return False
    return True
