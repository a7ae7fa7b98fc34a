"""Newton polyhedra conv(supp P + R_+^p): compact faces, dual fan and non-degeneracy."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Sequence

from .cones import RelOpenCone
from .hull import Facet, face_lattice, facets, vertex_indices
from .linalg import Vector, dot, rank
from .poly import SparsePoly, face_restriction, gradient, quasi_degree


@dataclass(frozen=True)
class FaceData:
    """A compact face of a Newton polyhedron together with its dual data.

    ``J`` holds the 1-based coordinate indices i with the face inside
    {alpha_i = 0}. ``dual_cone`` is the relatively open cone of covectors
    a > 0 whose minimum over the polyhedron is attained exactly on the face;
    ``dual_rays`` generate its closure.
    """

    vertices: tuple[Vector, ...]
    points: tuple[Vector, ...]
    dim: int
    J: frozenset[int]
    dual_cone: RelOpenCone
    dual_rays: tuple[Vector, ...]
    interior: Vector
    weights: Vector
    degree: int

    def contains(self, e: Sequence[int]) -> bool:
        """Whether an exponent of the polyhedron lies on this face."""
        return dot(self.interior, e) == self.degree_along(self.interior)

    def degree_along(self, a: Sequence[int]) -> int:
        return dot(a, self.vertices[0])

    @property
    def label(self) -> str:
        return "conv{" + ", ".join(str(v) for v in self.vertices) + "}"


@dataclass(frozen=True)
class NewtonPolyhedron:
    nvars: int
    support: tuple[Vector, ...]
    vertices: tuple[Vector, ...]
    facets: tuple[Facet, ...]
    faces: tuple[FaceData, ...] = field(repr=False)

    def compact_facets(self) -> list[Facet]:
        return [f for f in self.facets if all(x > 0 for x in f.normal)]


def _minimal_points(support: Iterable[Vector]) -> list[Vector]:
    pts = sorted(set(support))
    return [
        p for p in pts
        if not any(q != p and all(a <= b for a, b in zip(q, p)) for q in pts)
    ]


def build_polyhedron(support: Iterable[Sequence[int]] | SparsePoly) -> NewtonPolyhedron:
    if isinstance(support, SparsePoly):
        support = support.support
    supp = sorted({tuple(int(x) for x in e) for e in support})
    if not supp:
        raise ValueError("Newton polyhedron of an empty support (zero polynomial)")
    if any(x < 0 for e in supp for x in e):
        raise ValueError("negative exponent: Newton polyhedra need exponents in N^p")
    p = len(supp[0])
    pts = _minimal_points(supp)
    rays = [tuple(int(i == j) for j in range(p)) for i in range(p)]
    fs = facets(pts, rays)
    lattice = face_lattice(pts, rays, fs)
    vidx = vertex_indices(lattice)
    vertices = tuple(pts[i] for i in vidx)
    vset = set(vertices)
    faces = []
    for f in lattice:
        if f.rays:
            continue
        fpts = tuple(sorted(pts[i] for i in f.points))
        fverts = tuple(v for v in fpts if v in vset)
        faces.append(_face_data(p, fverts, fpts, f.dim, vertices, fs))
    faces.sort(key=lambda fd: (fd.dim, fd.vertices))
    return NewtonPolyhedron(p, tuple(supp), vertices, tuple(fs), tuple(faces))


def _face_data(p, fverts, fpts, dim, all_vertices, fs) -> FaceData:
    v0 = fverts[0]
    eqs = tuple(tuple(a - b for a, b in zip(v, v0)) for v in fverts[1:])
    others = [u for u in all_vertices if u not in fverts]
    ineqs = tuple(tuple(a - b for a, b in zip(u, v0)) for u in others)
    ineqs += tuple(tuple(int(i == j) for j in range(p)) for i in range(p))
    cone = RelOpenCone(p, eqs, ineqs)
    rays = tuple(sorted(f.normal for f in fs if all(dot(f.normal, v) == f.offset for v in fverts)))
    interior = tuple(sum(r[i] for r in rays) for i in range(p))
    J = frozenset(i + 1 for i in range(p) if all(v[i] == 0 for v in fverts))
    mono = SparsePoly(p, {e: 1 for e in fpts})
    try:
        w, N = quasi_degree(mono, normal=interior)
    except ValueError:
        # only the constant vertex (P(0) != 0) has no positive degree
        w, N = interior, 0
    return FaceData(fverts, fpts, dim, J, cone, rays, interior, w, N)


def compact_faces(G: NewtonPolyhedron) -> list[FaceData]:
    return list(G.faces)


def faces_by_J(G: NewtonPolyhedron) -> dict[frozenset[int], list[FaceData]]:
    out: dict[frozenset[int], list[FaceData]] = {}
    for f in G.faces:
        out.setdefault(f.J, []).append(f)
    return out


def ell_value(G: NewtonPolyhedron, a: Sequence[int]) -> int:
    """min over the polyhedron of <a, .> for a covector a >= 0."""
    if len(a) != G.nvars:
        raise ValueError("covector has the wrong length")
    if any(x < 0 for x in a):
        raise ValueError("covector must be nonnegative")
    return min(dot(a, v) for v in G.vertices)


def face_of_covector(G: NewtonPolyhedron, a: Sequence[int]) -> FaceData:
    """The compact face on which <a, .> attains its minimum over the polyhedron."""
    ell = ell_value(G, a)
    hit = tuple(v for v in G.vertices if dot(a, v) == ell)
    for f in G.faces:
        if f.vertices == hit:
            return f
    raise ValueError(f"the minimum of {tuple(a)} is not attained on a single compact face")


def dual_fan(G: NewtonPolyhedron) -> list[tuple[FaceData, RelOpenCone]]:
    return [(f, f.dual_cone) for f in G.faces]


def ell_positive_on_closure(G: NewtonPolyhedron, face: FaceData) -> bool:
    """Is ell_Gamma > 0 on the closed dual cone minus the origin? (checked on generators)"""
    return all(ell_value(G, r) > 0 for r in face.dual_rays)


# ------------------------------------------------------------ non-degeneracy

DEFAULT_PRIMES = {1: (3, 5, 7, 11, 13), 2: (3, 5, 7, 11, 13), 3: (3, 5, 7), 4: (3, 5)}


@dataclass(frozen=True)
class Status:
    """Outcome of a non-degeneracy test for one predicate on one face.

    kind is one of certified_nondegenerate, probabilistically_nondegenerate,
    degenerate_witness (an F_q point, q) or degenerate_char0 (an exact point;
    None when degeneracy is certified by a lattice argument).
    """

    kind: str
    primes: tuple[int, ...] = ()
    point: tuple | None = None
    q: int | None = None

    @property
    def degenerate(self) -> bool:
        return self.kind.startswith("degenerate")

    def to_json(self) -> dict:
        out: dict[str, object] = {"status": self.kind}
        if self.primes:
            out["primes"] = list(self.primes)
        if self.point is not None:
            out["point"] = [str(x) if isinstance(x, Fraction) and x.denominator != 1 else int(x) for x in self.point]
        if self.q is not None:
            out["q"] = self.q
        return out


@dataclass(frozen=True)
class FaceReport:
    face: FaceData
    face_poly: SparsePoly
    strong: Status
    kouchnirenko: Status


def _critical_conditions(F: SparsePoly, with_zero: bool) -> list[SparsePoly]:
    conds = list(gradient(F))
    if with_zero:
        conds.append(F)
    return conds


def _reduces_cleanly(F: SparsePoly, q: int) -> bool:
    try:
        red = F.reduce_mod(q)
    except ZeroDivisionError:
        return False
    except ValueError:
        return False
    return len(red) == len(F.terms)


def _symmetric(x: int, q: int) -> int:
    x %= q
    return x - q if x > q // 2 else x


def _lift_candidates(x: int, q: int) -> list[Fraction]:
    """Small-height rationals reducing to x mod q."""
    out = [Fraction(_symmetric(x, q))]
    for den in range(2, q):
        num = _symmetric(x * den, q)
        fr = Fraction(num, den)
        if fr not in out and fr != 0:
            out.append(fr)
    return [c for c in out if c != 0][:6]


def _exact_lift(conds: list[SparsePoly], point: tuple[int, ...], q: int) -> tuple[Fraction, ...] | None:
    for cand in product(*(_lift_candidates(x, q) for x in point)):
        if all(c.evaluate(cand) == 0 for c in conds):
            return tuple(cand)
    return None


def _probe(F: SparsePoly, with_zero: bool, primes: Sequence[int]) -> Status:
    conds = _critical_conditions(F, with_zero)
    conds_nonzero = [c for c in conds if c]
    clean: list[int] = []
    witnesses: list[tuple[tuple[int, ...], int]] = []
    for q in primes:
        if not _reduces_cleanly(F, q):
            continue
        reduced = [c.reduce_mod(q) for c in conds_nonzero]
        hit = None
        for pt in product(range(1, q), repeat=F.nvars):
            if all(_eval_reduced(r, pt, q) == 0 for r in reduced):
                hit = pt
                break
        if hit is None:
            clean.append(q)
            continue
        exact = _exact_lift(conds_nonzero, hit, q)
        if exact is not None:
            return Status("degenerate_char0", point=exact)
        witnesses.append((hit, q))
    if witnesses and not clean:
        pt, q = witnesses[0]
        return Status("degenerate_witness", point=pt, q=q)
    return Status("probabilistically_nondegenerate", primes=tuple(clean))


def _eval_reduced(terms: dict[Vector, int], pt: Sequence[int], q: int) -> int:
    total = 0
    for e, c in terms.items():
        v = c
        for x, k in zip(pt, e):
            v = v * pow(x, k, q) % q
        total += v
    return total % q


def face_status(F: SparsePoly, primes: Sequence[int] | None = None) -> tuple[Status, Status]:
    """(strong, Kouchnirenko) statuses for a face polynomial on the torus."""
    p = F.nvars
    if primes is None:
        primes = DEFAULT_PRIMES.get(p, (3,))
    terms = sorted(F.terms)
    if len(terms) == 1:
        kou = Status("certified_nondegenerate")
        if any(terms[0]):
            strong = Status("certified_nondegenerate")
        else:
            strong = Status("degenerate_char0", point=tuple(Fraction(1) for _ in range(p)))
        return strong, kou
    if len(terms) == 2:
        kou = Status("certified_nondegenerate")
        if rank([list(terms[0]), list(terms[1])]) == 2:
            return Status("certified_nondegenerate"), kou
        strong = _probe(F, False, primes)
        if strong.kind != "degenerate_char0":
            strong = Status("degenerate_char0")
        return strong, kou
    return _probe(F, False, primes), _probe(F, True, primes)


def nondegeneracy_report(P: SparsePoly, primes: Sequence[int] | None = None) -> list[FaceReport]:
    if P.is_zero():
        raise ValueError("zero polynomial")
    G = build_polyhedron(P)
    out = []
    for f in G.faces:
        Fd = face_restriction(P, f)
        strong, kou = face_status(Fd, primes)
        out.append(FaceReport(f, Fd, strong, kou))
    return out


def newton_report_json(P: SparsePoly, primes: Sequence[int] | None = None, names=None) -> dict:
    from .poly import render

    faces = []
    for rep in nondegeneracy_report(P, primes):
        f = rep.face
        faces.append({
            "vertices": [list(v) for v in f.vertices],
            "dim": f.dim,
            "J": sorted(f.J),
            "dual_cone_generators": [list(r) for r in f.dual_rays],
            "weights": list(f.weights),
            "degree": f.degree,
            "face_polynomial": render(rep.face_poly, names),
            "nondeg": {"strong": rep.strong.to_json(), "kouchnirenko": rep.kouchnirenko.to_json()},
        })
    return {"faces": faces}
