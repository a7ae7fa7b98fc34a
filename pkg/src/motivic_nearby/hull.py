"""Exact facet and face-lattice enumeration for small full-dimensional polyhedra.

A polyhedron is given as conv(points) + cone(rays) with integer data. Facets
come from brute force over generator subsets spanning a hyperplane, which is
plenty at desk scale (a few dozen points, dimension <= 4).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial
from typing import Sequence

from .linalg import Vector, cross, det, dot, primitive, rank


@dataclass(frozen=True)
class Facet:
    """Supporting half-space {x : <normal, x> >= offset} cutting out a facet."""

    normal: Vector
    offset: int


@dataclass(frozen=True)
class Face:
    points: frozenset[int]
    rays: frozenset[int]
    dim: int


def _dim(points: Sequence[Vector], rays: Sequence[Vector], pidx, ridx) -> int:
    pidx = sorted(pidx)
    if not pidx:
        return -1
    p0 = points[pidx[0]]
    vecs = [[a - b for a, b in zip(points[i], p0)] for i in pidx[1:]]
    vecs += [list(rays[j]) for j in ridx]
    return rank(vecs) if vecs else 0


def facets(points: Sequence[Vector], rays: Sequence[Vector] = ()) -> list[Facet]:
    """All facets of conv(points) + cone(rays); the polyhedron must be full-dimensional."""
    if not points:
        raise ValueError("need at least one point")
    n = len(points[0])
    if n == 1:
        cands = {(1,), (-1,)}
        out = []
        for a in sorted(cands):
            if all(dot(a, r) >= 0 for r in rays):
                out.append(Facet(a, min(dot(a, p) for p in points)))
        return out
    found: dict[Vector, int] = {}
    for k in range(1, n + 1):
        if n - k > len(rays):
            continue
        for ps in combinations(points, k):
            base = ps[0]
            pvecs = [[a - b for a, b in zip(p, base)] for p in ps[1:]]
            for rs in combinations(rays, n - k):
                normal = cross(pvecs + [list(r) for r in rs], n)
                if not any(normal):
                    continue
                normal = primitive(normal)
                for a in (normal, tuple(-x for x in normal)):
                    if a in found:
                        continue
                    c = dot(a, base)
                    if all(dot(a, r) >= 0 for r in rays) and all(dot(a, p) >= c for p in points):
                        found[a] = c
    return [Facet(a, c) for a, c in sorted(found.items())]


def face_lattice(points: Sequence[Vector], rays: Sequence[Vector], fs: Sequence[Facet]) -> list[Face]:
    """Every nonempty face, as incidence sets over the point and ray lists."""
    incid = []
    for f in fs:
        pi = frozenset(i for i, p in enumerate(points) if dot(f.normal, p) == f.offset)
        ri = frozenset(j for j, r in enumerate(rays) if dot(f.normal, r) == 0)
        incid.append((pi, ri))
    whole = (frozenset(range(len(points))), frozenset(range(len(rays))))
    seen = {whole}
    queue = [whole]
    while queue:
        pi, ri = queue.pop()
        for fp, fr in incid:
            g = (pi & fp, ri & fr)
            if g[0] and g not in seen:
                seen.add(g)
                queue.append(g)
    faces = [Face(p, r, _dim(points, rays, p, r)) for p, r in seen]
    faces.sort(key=lambda f: (f.dim, sorted(f.points), sorted(f.rays)))
    return faces


def vertex_indices(faces: Sequence[Face]) -> list[int]:
    return sorted(next(iter(f.points)) for f in faces if f.dim == 0 and not f.rays)


def polytope_normalized_volume(points: Sequence[Vector]) -> int:
    """n! times the Euclidean volume of a full-dimensional lattice polytope.

    Uses a pulling triangulation over the face lattice, so every simplex
    determinant is an exact integer.
    """
    pts = sorted(set(tuple(p) for p in points))
    n = len(pts[0])
    if rank([[a - b for a, b in zip(p, pts[0])] for p in pts[1:]] or [[0] * n]) < n:
        return 0
    if n == 1:
        xs = [p[0] for p in pts]
        return max(xs) - min(xs)
    lattice = face_lattice(pts, [], facets(pts))
    verts = set(vertex_indices(lattice))
    faces = {}
    for f in lattice:
        vs = frozenset(f.points & verts)
        faces[vs] = f.dim
    memo: dict[frozenset, list[tuple[int, ...]]] = {}

    def triangulate(vs: frozenset) -> list[tuple[int, ...]]:
        if vs in memo:
            return memo[vs]
        d = faces[vs]
        if d == 0:
            out = [tuple(vs)]
        else:
            apex = min(vs)
            out = []
            for g, gd in faces.items():
                if gd == d - 1 and g < vs and apex not in g:
                    out.extend((apex,) + s for s in triangulate(g))
        memo[vs] = out
        return out

    total = 0
    for simplex in triangulate(frozenset(verts)):
        p0 = pts[simplex[0]]
        total += abs(det([[a - b for a, b in zip(pts[i], p0)] for i in simplex[1:]]))
    return total


def polytope_volume(points: Sequence[Vector]) -> Fraction:
    pts = list(points)
    return Fraction(polytope_normalized_volume(pts), factorial(len(pts[0])))
