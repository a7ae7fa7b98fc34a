"""Small exact linear algebra over Z and Q.

Everything here works on tuples/lists of ints or Fractions; matrices are
lists of rows. Sizes are desk scale (dimension <= 8), so plain Gaussian
elimination is fine.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

Vector = tuple[int, ...]


def dot(a: Sequence, b: Sequence):
    return sum(x * y for x, y in zip(a, b))


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b) if a and b else 0


def primitive(v: Sequence) -> Vector:
    """Scale a rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = reduce(lcm, (x.denominator for x in fr), 1)
    ints = [int(x * den) for x in fr]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def sign_normalize(v: Vector) -> Vector:
    """Make the first nonzero entry positive."""
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


def rref(rows: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in r] for r in rows]
    pivots: list[int] = []
    if not m:
        return m, pivots
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Integer basis (primitive vectors) of {x : rows . x = 0}."""
    if not rows:
        return [tuple(int(i == j) for j in range(ncols)) for i in range(ncols)]
    red, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(primitive(v))
    return basis


def affine_rank(points: Sequence[Sequence]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


def det(mat: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    m = [list(r) for r in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def cross(vectors: Sequence[Sequence[int]], n: int) -> Vector:
    """Generalized cross product of n-1 integer vectors in Z^n.

    The result is orthogonal to every input and vanishes exactly when the
    inputs are linearly dependent.
    """
    assert len(vectors) == n - 1
    out = []
    for i in range(n):
        minor = [[v[j] for j in range(n) if j != i] for v in vectors]
        out.append((-1) ** i * det(minor))
    return tuple(out)


def maximal_minors_gcd(rows: Sequence[Sequence[int]]) -> int:
    """gcd of all k x k minors of a k x n integer matrix of rank k."""
    from itertools import combinations

    k = len(rows)
    n = len(rows[0])
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, abs(det([[r[c] for c in cols] for r in rows])))
        if g == 1:
            break
    return g


def solve_in_basis(basis: Sequence[Sequence[int]], v: Sequence) -> list[Fraction] | None:
    """Coordinates of v in the (independent) basis, or None if v is outside its span."""
    k = len(basis)
    n = len(v)
    aug = [[Fraction(basis[j][i]) for j in range(k)] + [Fraction(v[i])] for i in range(n)]
    red, pivots = rref(aug)
    if k in pivots:
        return None
    coords = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        coords[pc] = row[k]
    return coords
