"""Independent cross-checks that share no code path with the main engines."""
from __future__ import annotations

from functools import lru_cache, reduce
from itertools import product
from math import gcd
from typing import Sequence

from .linalg import dot, lcm
from .poly import SparsePoly
from .reszeta import acampo_lambda  # noqa: F401  (re-exported: the classical resolution formula)


# ------------------------------------------------------- cyclotomic integers

def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials (coefficient lists, lowest degree first; den monic)."""
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    assert lead in (1, -1)
    for i in range(len(num) - len(den), -1, -1):
        c = num[i + len(den) - 1] * lead
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return q, num[: max(len(den) - 1, 1)]


@lru_cache(maxsize=None)
def cyclotomic(M: int) -> tuple[int, ...]:
    """Coefficients of the M-th cyclotomic polynomial, by dividing x^M - 1 by the smaller ones."""
    poly = [-1] + [0] * (M - 1) + [1]
    for d in range(1, M):
        if M % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


def root_of_unity_sum(exponents: Sequence[int], M: int) -> int:
    """Exact value of sum_k zeta_M^{e_k}, required to be a rational integer."""
    vec = [0] * M
    for e in exponents:
        vec[e % M] += 1
    _, rem = _poly_divmod(vec, list(cyclotomic(M)))
    rem = rem + [0] * (1 - len(rem))
    if any(rem[1:]):
        raise ValueError("the character sum is not a rational integer")
    return rem[0]


def brieskorn_lambda(exponents: Sequence[int], n: int) -> int:
    """Lefschetz number of the n-th monodromy power of sum_k x_k^{a_k}.

    Eigenvalues are exp(2 pi i sum_k i_k / a_k) with 1 <= i_k < a_k; the
    reduced cohomology sits in degree p - 1.
    """
    M = reduce(lcm, exponents, 1)
    exps = [n * sum(i * (M // a) for i, a in zip(idx, exponents))
            for idx in product(*(range(1, a) for a in exponents))]
    return 1 + (-1) ** (len(exponents) - 1) * root_of_unity_sum(exps, M)


def brieskorn_lambda_closed(a: int, b: int, n: int) -> int:
    """Two-variable closed form a[a|n] + b[b|n] - ab[lcm(a,b)|n]."""
    l = a * b // gcd(a, b)
    return a * (n % a == 0) + b * (n % b == 0) - a * b * (n % l == 0)


# ----------------------------------------------- exact torus-curve topology

def _squarefree_root_count(coeffs: list, h, x) -> int:
    """Distinct nonzero roots in y of sum c_k y^k over the field Q[x]/(h); coeffs highest first."""
    import sympy

    def red(c):
        return sympy.rem(sympy.expand(c), h, x)

    def strip(cs):
        while cs and cs[0] == 0:
            cs = cs[1:]
        return cs

    def monic(cs):
        inv = sympy.invert(cs[0], h, x)
        return [red(c * inv) for c in cs]

    f = strip([red(c) for c in coeffs])
    while f and f[-1] == 0:
        f = f[:-1]
    if len(f) <= 1:
        return 0
    deg = len(f) - 1
    g = strip([red(c * (deg - i)) for i, c in enumerate(f[:-1])])
    a, b = monic(f), monic(g)
    while b:
        r = list(a)
        while len(r) >= len(b):
            lead = r[0]
            r = [red(rc - lead * bc) for rc, bc in zip(r, b + [0] * (len(r) - len(b)))][1:]
            r = strip(r)
            if not r:
                break
        a, b = b, (monic(r) if r else [])
    return deg - (len(a) - 1)


def torus_curve_euler(Q: SparsePoly, probe: int = 7) -> int:
    """Euler characteristic of {Q = 0} in (C^*)^2 by projecting to the first coordinate.

    chi = sum over the bad fibres of (fibre size - generic size), where the bad
    x are the nonzero roots of the leading and trailing y-coefficients and of
    the y-discriminant. Each irreducible factor of those is handled exactly
    over its residue field; all its roots are Galois conjugate.
    """
    import sympy

    if Q.nvars != 2:
        raise ValueError("curve oracle needs two variables")
    shift = [min(e[i] for e in Q.support) for i in range(2)]
    x, y = sympy.symbols("x y")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x ** (e[0] - shift[0]) * y ** (e[1] - shift[1])
               for e, c in Q.terms.items())
    coeffs = sympy.Poly(expr, y).all_coeffs()
    if len(coeffs) == 1:
        return 0
    factors = set()
    for poly in (coeffs[0], coeffs[-1], sympy.discriminant(expr, y)):
        if poly.free_symbols:
            for fac, _ in sympy.factor_list(poly, x)[1]:
                if sympy.degree(fac, x) > 0 and fac != x:
                    factors.add(sympy.Poly(fac, x).monic().as_expr())
    generic_x = probe
    while any(fac.subs(x, generic_x) == 0 for fac in factors) or generic_x == 0:
        generic_x += 1
    generic = _squarefree_root_count(coeffs, x - generic_x, x)
    return sum(sympy.degree(fac, x) * (_squarefree_root_count(coeffs, fac, x) - generic)
               for fac in factors)


# ------------------------------------------------- brute-force hull faces

def brute_force_compact_faces(support: Sequence[Sequence[int]], height: int = 12) -> set[tuple]:
    """Support-point sets minimizing <a, .> for positive integer covectors a up to `height`."""
    pts = sorted({tuple(p) for p in support})
    p = len(pts[0])
    found = set()
    for a in product(range(1, height + 1), repeat=p):
        if reduce(gcd, a) != 1:
            continue
        m = min(dot(a, s) for s in pts)
        found.add(tuple(s for s in pts if dot(a, s) == m))
    return found
