"""Formal classes of equivariant varieties over X_0 and their numeric realizations.

A :class:`ClassExpr` is a Z[L^{+-1}]-combination of three kinds of atoms:

* ``TORUS_BUNDLE``: a rank-r torus bundle U_I over a stratum, mapping to
  G_m by the monomial of fiber degrees N_i;
* ``HYPSURF_COMPL``: the complement of {Q = 0} in a torus (times a base),
  monodromy by the quasi-homogeneous weights of Q;
* ``TRIV_NEARBY``: G_m times {Q = 0}, with the same weight data.

Realizations: Lefschetz numbers (L -> 1), the monodromy zeta function, the
Euler characteristic of the nearby fiber and F_q point counts (L -> q).
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from math import gcd
from typing import Iterable, Mapping, Sequence

from .errors import GuardExceeded, InconsistencyError, RefusedComputation
from .hull import face_lattice, facets, polytope_normalized_volume
from .linalg import dot, lcm, rank
from .lpoly import LPoly
from .poly import SparsePoly, render

TORUS_BUNDLE = "TORUS_BUNDLE"
HYPSURF_COMPL = "HYPSURF_COMPL"
TRIV_NEARBY = "TRIV_NEARBY"
KINDS = (TORUS_BUNDLE, HYPSURF_COMPL, TRIV_NEARBY)

COUNT_MAX_RANK = 3
COUNT_MAX_Q = 17


class FormulaUnverifiedWarning(UserWarning):
    """The volume formula for a torus hypersurface was used without a passing probe."""


@dataclass(frozen=True)
class Atom:
    kind: str
    base_label: str = "pt"
    base_chi: int = 1
    base_count: tuple[int, ...] | None = (1,)
    rank: int = 0
    degrees: tuple[int, ...] = ()
    Q: SparsePoly | None = None
    weights: tuple[int, ...] = ()
    degree: int = 0
    monomial: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if self.kind == TORUS_BUNDLE:
            if len(self.degrees) != self.rank or any(d <= 0 for d in self.degrees):
                raise ValueError("torus bundle needs one positive fiber degree per torus factor")
            if self.monomial and len(self.monomial) != self.rank:
                raise ValueError("monomial map needs one exponent column per torus factor")
        else:
            if self.Q is None or self.Q.is_zero():
                raise ValueError("hypersurface atoms need a nonzero Q")
            if self.Q.nvars != self.rank or len(self.weights) != self.rank:
                raise ValueError("Q, weights and ambient rank disagree")
            if self.degree <= 0:
                raise ValueError("degree must be positive")
            for e in self.Q.support:
                if dot(self.weights, e) != self.degree:
                    raise ValueError(f"exponent {e} violates <w, e> = {self.degree}")

    def period(self) -> int:
        """Smallest d such that the Lefschetz gate is open exactly at multiples of d."""
        if self.kind == TORUS_BUNDLE:
            return self.degrees[0] if self.rank == 1 else 1
        return reduce(lcm, (self.degree // gcd(self.degree, w) for w in self.weights), 1)

    def gate(self, n: int) -> bool:
        if self.kind == TORUS_BUNDLE:
            return n % self.degrees[0] == 0 if self.rank == 1 else True
        return all((n * w) % self.degree == 0 for w in self.weights)

    def describe(self, names: Sequence[str] | None = None) -> str:
        base = "" if self.base_label == "pt" else f" over {self.base_label}"
        if self.kind == TORUS_BUNDLE:
            return f"[U rank {self.rank}, degrees {list(self.degrees)}{base}]"
        names = names or [f"u{i + 1}" for i in range(self.rank)]
        q = render(self.Q, names)
        if self.kind == HYPSURF_COMPL:
            return f"[G_m^{self.rank} \\ {{{q} = 0}}{base}]"
        return f"[G_m x {{{q} = 0}}{base}]"

    def to_json(self) -> dict:
        out: dict[str, object] = {"kind": self.kind, "base": self.base_label, "base_chi": self.base_chi}
        if self.base_count is not None:
            out["base_count"] = list(self.base_count)
        out["rank"] = self.rank
        if self.kind == TORUS_BUNDLE:
            out["degrees"] = list(self.degrees)
            if self.monomial:
                out["monomial"] = [list(c) for c in self.monomial]
        else:
            out["Q"] = render(self.Q, [f"u{i + 1}" for i in range(self.rank)])
            out["weights"] = list(self.weights)
            out["degree"] = self.degree
        return out


def torus_bundle(degrees: Sequence[int], base_chi: int = 1, base_count: Sequence[int] | None = (1,),
                 base_label: str = "pt", monomial: Sequence[Sequence[int]] = ()) -> Atom:
    """U_I over a base; ``monomial`` optionally records the columns N_i of the map to G_m^p."""
    degrees = tuple(int(d) for d in degrees)
    bc = tuple(base_count) if base_count is not None else None
    cols = tuple(tuple(int(x) for x in c) for c in monomial)
    return Atom(TORUS_BUNDLE, base_label, base_chi, bc, len(degrees), degrees, monomial=cols)


def hypsurf_compl(Q: SparsePoly, weights: Sequence[int], degree: int, base_chi: int = 1,
                  base_count: Sequence[int] | None = (1,), base_label: str = "pt") -> Atom:
    bc = tuple(base_count) if base_count is not None else None
    return Atom(HYPSURF_COMPL, base_label, base_chi, bc, Q.nvars, (), Q, tuple(weights), degree)


def triv_nearby(Q: SparsePoly, weights: Sequence[int], degree: int, base_chi: int = 1,
                base_count: Sequence[int] | None = (1,), base_label: str = "pt") -> Atom:
    bc = tuple(base_count) if base_count is not None else None
    return Atom(TRIV_NEARBY, base_label, base_chi, bc, Q.nvars, (), Q, tuple(weights), degree)


def _lift(c) -> LPoly:
    if isinstance(c, LPoly):
        return c
    if isinstance(c, (int, Fraction)):
        return LPoly(c)
    raise TypeError(f"cannot use {type(c).__name__} as a class coefficient")


class ClassExpr:
    """Normalized combination  sum coeff * [atom]  with LPoly coefficients."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Atom, object] | Iterable[tuple[object, Atom]] | None = None):
        acc: dict[Atom, LPoly] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((a, c) for c, a in (terms or ()))
        for atom, c in items:
            acc[atom] = acc.get(atom, LPoly()) + _lift(c)
        self._terms = {a: c for a, c in acc.items() if c}

    @classmethod
    def of(cls, atom: Atom, coeff=1) -> ClassExpr:
        return cls({atom: coeff})

    @property
    def terms(self) -> dict[Atom, LPoly]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, ClassExpr):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, ClassExpr):
            return NotImplemented
        out = dict(self._terms)
        for a, c in other._terms.items():
            out[a] = out.get(a, LPoly()) + c
        return ClassExpr(out)

    __radd__ = __add__

    def __neg__(self) -> ClassExpr:
        return ClassExpr({a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, ClassExpr):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, LPoly)):
            return ClassExpr({a: c * other for a, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"ClassExpr({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for a in sorted(self._terms, key=_atom_key):
            c = self._terms[a]
            parts.append(f"({c})*{a.describe()}")
        return " + ".join(parts)

    def to_json(self) -> list:
        return [{"coeff": self._terms[a].to_json(), "atom": a.to_json()} for a in sorted(self._terms, key=_atom_key)]


def _atom_key(a: Atom):
    q = tuple(sorted((e, str(c)) for e, c in a.Q.terms.items())) if a.Q is not None else ()
    return (KINDS.index(a.kind), a.base_label, a.rank, a.degrees, a.monomial, a.weights, a.degree, q)


def class_arith(a: ClassExpr, b, op: str) -> ClassExpr:
    if op == "add":
        return a + b
    if op == "scalar_mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


# -------------------------------------------------------- torus hypersurfaces

def _probe_polytope_faces(Q: SparsePoly) -> bool:
    """Kouchnirenko-type probe on every face of conv(supp Q); True if no degeneracy seen."""
    from .newton import _probe, DEFAULT_PRIMES

    supp = sorted(Q.support)
    m = Q.nvars
    primes = DEFAULT_PRIMES.get(m, (3,))
    if len(supp) == 1:
        return True
    full = rank([[a - b for a, b in zip(s, supp[0])] for s in supp[1:]]) == m
    if full:
        lattice = face_lattice(supp, [], facets(supp))
        face_sets = [[supp[i] for i in f.points] for f in lattice if f.dim >= 1]
    else:
        face_sets = [supp]
    for pts in face_sets:
        Fq = Q.restrict_support(pts)
        if len(Fq.terms) < 2:
            continue
        if _probe(Fq, True, primes).degenerate:
            return False
    return True


@lru_cache(maxsize=4096)
def _chi_torus_cached(Q: SparsePoly) -> tuple[int, bool]:
    supp = sorted(Q.support)
    m = Q.nvars
    if len(supp) == 1:
        return 0, True
    r = rank([[a - b for a, b in zip(s, supp[0])] for s in supp[1:]])
    if r < m:
        return 0, True
    value = (-1) ** (m - 1) * polytope_normalized_volume(supp)
    return value, _probe_polytope_faces(Q)


def chi_torus_hypersurface(Q: SparsePoly, m: int | None = None) -> int:
    """Euler characteristic of {Q = 0} in the torus G_m^m (Laurent exponents allowed).

    Uses (-1)^(m-1) m! Vol(conv supp Q) for a full-dimensional Newton polytope
    and 0 otherwise. A FormulaUnverifiedWarning is issued when the face probe
    finds a degenerate face, since the formula then need not hold.
    """
    if Q.is_zero():
        raise ValueError("the zero polynomial vanishes on the whole torus")
    if m is not None and m != Q.nvars:
        raise ValueError("ambient rank disagrees with the number of variables")
    value, verified = _chi_torus_cached(Q)
    if not verified:
        warnings.warn(
            f"non-degeneracy probe failed for {render(Q)}; torus Euler characteristic unverified",
            FormulaUnverifiedWarning,
            stacklevel=2,
        )
    return value


# ---------------------------------------------------------- Lefschetz numbers

def atom_lefschetz(a: Atom, n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    if not a.gate(n):
        return 0
    if a.kind == TORUS_BUNDLE:
        return a.degrees[0] * a.base_chi if a.rank == 1 else 0
    one = SparsePoly.constant(a.rank, 1)
    if a.kind == HYPSURF_COMPL:
        return a.base_chi * chi_torus_hypersurface(a.Q - one)
    return a.base_chi * chi_torus_hypersurface(a.Q)


def _as_int(x: Fraction) -> int | Fraction:
    return x.numerator if x.denominator == 1 else x


def lefschetz_number(c: ClassExpr, n: int):
    total = Fraction(0)
    for a, coeff in c.terms.items():
        lam = atom_lefschetz(a, n)
        if lam:
            total += coeff.evaluate(1) * lam
    return _as_int(total)


def global_period(c: ClassExpr) -> int:
    return reduce(lcm, (a.period() for a in c.terms), 1)


def lambda_table(c: ClassExpr, upto: int | None = None) -> list:
    upto = upto or global_period(c)
    return [lefschetz_number(c, n) for n in range(1, upto + 1)]


def zeta_exponents_from_lambda(table: Sequence, period: int | None = None) -> dict[int, int]:
    """Solve Lambda_n = sum_{d | n} d c_d for n = 1..len(table); returns nonzero c_d."""
    cs: dict[int, Fraction] = {}
    for n in range(1, len(table) + 1):
        acc = Fraction(table[n - 1]) - sum((d * cs[d] for d in cs if n % d == 0), Fraction(0))
        val = acc / n
        if val:
            cs[n] = val
    for d, v in cs.items():
        if v.denominator != 1 or (period is not None and period % d):
            raise InconsistencyError(f"Lefschetz table {list(table)} is not of monodromy type")
    return {d: int(v) for d, v in sorted(cs.items())}


def lambda_from_zeta(exponents: Mapping[int, int], upto: int) -> list[int]:
    return [sum(d * e for d, e in exponents.items() if n % d == 0) for n in range(1, upto + 1)]


def monodromy_zeta(c: ClassExpr) -> dict[int, int]:
    """Exponents c_d with zeta(t) = prod_d (1 - t^d)^(-c_d)."""
    period = global_period(c)
    table = lambda_table(c, period)
    ex = zeta_exponents_from_lambda(table, period)
    if lambda_from_zeta(ex, period) != list(table):
        raise InconsistencyError("monodromy zeta does not reproduce the Lefschetz table")
    return ex


def render_zeta(exponents: Mapping[int, int]) -> str:
    if not exponents:
        return "1"
    parts = []
    for d in sorted(exponents):
        e = -exponents[d]
        base = "(1-t)" if d == 1 else f"(1-t^{d})"
        parts.append(base if e == 1 else f"{base}^({e})")
    return "*".join(parts)


def euler_fiber(c: ClassExpr) -> int:
    return lefschetz_number(c, global_period(c))


def milnor_number(euler: int, p: int) -> int:
    return (-1) ** (p - 1) * (euler - 1)


# -------------------------------------------------------------- point counts

def _eval_count_poly(coeffs: Sequence[int], q: int) -> int:
    return sum(c * q ** k for k, c in enumerate(coeffs))


@lru_cache(maxsize=4096)
def torus_zero_count(Q: SparsePoly, q: int) -> int:
    """#{u in (F_q^*)^m : Q(u) = 0} by enumeration."""
    m = Q.nvars
    if m > COUNT_MAX_RANK or q > COUNT_MAX_Q:
        raise GuardExceeded(f"torus enumeration limited to rank <= {COUNT_MAX_RANK}, q <= {COUNT_MAX_Q}")
    red = Q.reduce_mod(q)
    count = 0
    for pt in product(range(1, q), repeat=m):
        s = 0
        for e, cf in red.items():
            v = cf
            for x, k in zip(pt, e):
                v = v * pow(x, k, q) % q
            s += v
        if s % q == 0:
            count += 1
    return count


def atom_count(a: Atom, q: int) -> int:
    if a.base_count is None:
        raise RefusedComputation(f"atom {a.describe()} has no point-count data")
    base = _eval_count_poly(a.base_count, q)
    if a.kind == TORUS_BUNDLE:
        return base * (q - 1) ** a.rank
    zeros = torus_zero_count(a.Q, q)
    if a.kind == HYPSURF_COMPL:
        return base * ((q - 1) ** a.rank - zeros)
    return base * (q - 1) * zeros


def count_points(c, q: int):
    """Realize L -> q; accepts a ClassExpr, an LPoly or a plain number."""
    if isinstance(c, (int, Fraction)):
        return _as_int(Fraction(c))
    if isinstance(c, LPoly):
        return _as_int(c.evaluate(q))
    total = Fraction(0)
    for a, coeff in c.terms.items():
        total += coeff.evaluate(q) * atom_count(a, q)
    return _as_int(total)
