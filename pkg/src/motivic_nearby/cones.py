"""Relatively open rational polyhedral cones {x : Ax = 0, Bx > 0}.

Feasibility and dimension use exact Fourier-Motzkin elimination; lattice
point series of simplicial cones go through a stellar subdivision into
unimodular cones, whose relatively open faces have product-form series.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .errors import ParseError
from .linalg import (
    Vector,
    dot,
    maximal_minors_gcd,
    nullspace,
    primitive,
    rank,
    rref,
    sign_normalize,
    solve_in_basis,
)
from .srseries import SrSeries


def _canonical_equalities(rows: Sequence[Sequence[int]], n: int) -> tuple[Vector, ...]:
    rows = [r for r in rows if any(r)]
    if not rows:
        return ()
    red, _ = rref(rows)
    return tuple(sorted(sign_normalize(primitive(r)) for r in red))


@dataclass(frozen=True)
class RelOpenCone:
    """The set {x in R^ambient : <e, x> = 0 for e in equalities, <b, x> > 0 for b in inequalities}."""

    ambient: int
    equalities: tuple[Vector, ...] = ()
    inequalities: tuple[Vector, ...] = ()

    def __post_init__(self):
        for r in (*self.equalities, *self.inequalities):
            if len(r) != self.ambient:
                raise ValueError(f"constraint {r} does not live in dimension {self.ambient}")
        object.__setattr__(self, "equalities", _canonical_equalities(self.equalities, self.ambient))
        ineq = {primitive(r) for r in self.inequalities}
        object.__setattr__(self, "inequalities", tuple(sorted(ineq)))

    @classmethod
    def positive_orthant(cls, n: int) -> RelOpenCone:
        return cls(n, (), tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def contains(self, x: Sequence) -> bool:
        return all(dot(e, x) == 0 for e in self.equalities) and all(dot(b, x) > 0 for b in self.inequalities)

    def intersect(self, other: RelOpenCone) -> RelOpenCone:
        if other.ambient != self.ambient:
            raise ValueError("ambient dimensions differ")
        return RelOpenCone(self.ambient, self.equalities + other.equalities, self.inequalities + other.inequalities)

    def __str__(self) -> str:
        return cone_to_text(self)


def _strict_system_feasible(rows: list[list[Fraction]], nvars: int) -> bool:
    """Is {y : M y > 0} nonempty? Exact Fourier-Motzkin elimination."""
    cur = {primitive(r) for r in rows}
    for j in range(nvars):
        if any(not any(r) for r in cur):
            return False
        pos = [r for r in cur if r[j] > 0]
        neg = [r for r in cur if r[j] < 0]
        nxt = {r for r in cur if r[j] == 0}
        for a in pos:
            for b in neg:
                comb = [-b[j] * x + a[j] * y for x, y in zip(a, b)]
                nxt.add(primitive(comb))
        cur = nxt
    return not cur


def cone_dim_nonempty(C: RelOpenCone) -> tuple[bool, int | None]:
    """Exact nonemptiness and dimension (None when empty)."""
    basis = nullspace(list(C.equalities), C.ambient)
    if not C.inequalities:
        return True, len(basis)
    if not basis:
        return False, None
    reduced = [[Fraction(dot(b, k)) for k in basis] for b in C.inequalities]
    if _strict_system_feasible(reduced, len(basis)):
        return True, len(basis)
    return False, None


def preimage_cone(columns: Sequence[Sequence[int]], C: RelOpenCone) -> RelOpenCone:
    """{k in R^I : k > 0, sum_i k_i N_i in C}, where N_i are the given columns."""
    cols = [tuple(c) for c in columns]
    for c in cols:
        if len(c) != C.ambient:
            raise ValueError(f"column {c} does not map into dimension {C.ambient}")
        if any(x < 0 for x in c):
            raise ValueError(f"column {c} has a negative entry")
    m = len(cols)
    eq = [tuple(dot(a, c) for c in cols) for a in C.equalities]
    ineq = [tuple(dot(b, c) for c in cols) for b in C.inequalities]
    ineq += [tuple(int(i == j) for j in range(m)) for i in range(m)]
    return RelOpenCone(m, tuple(eq), tuple(ineq))


def chi_compact(C: RelOpenCone) -> int:
    """Compactly supported Euler characteristic: (-1)^dim if nonempty, else 0."""
    ok, d = cone_dim_nonempty(C)
    return (-1) ** d if ok else 0


def extreme_rays(C: RelOpenCone, nonnegative: bool = False) -> list[Vector]:
    """Primitive extreme rays of the closure of C (optionally intersected with x >= 0).

    Raises ValueError when the closure contains a line.
    """
    ok, d = cone_dim_nonempty(C)
    if not ok or d == 0:
        return []
    n = C.ambient
    eqs = [list(e) for e in C.equalities]
    gens = list(C.inequalities)
    if nonnegative:
        gens += [tuple(int(i == j) for j in range(n)) for i in range(n)]
    r_eq = rank(eqs) if eqs else 0
    need = n - 1 - r_eq
    rays: set[Vector] = set()
    for S in combinations(gens, need):
        rows = eqs + [list(s) for s in S]
        if (rank(rows) if rows else 0) != n - 1:
            continue
        (v,) = nullspace(rows, n)
        hits = [w for w in (v, tuple(-x for x in v)) if all(dot(g, w) >= 0 for g in gens)]
        if len(hits) == 2:
            raise ValueError("cone closure is not pointed")
        rays.update(hits)
    return sorted(rays)


def interior_point(C: RelOpenCone) -> Vector | None:
    """An integer point of C (the sum of the closure's extreme rays), or None if C is empty."""
    ok, d = cone_dim_nonempty(C)
    if not ok:
        return None
    if d == 0:
        return tuple([0] * C.ambient)
    rays = extreme_rays(C)
    return tuple(sum(r[i] for r in rays) for i in range(C.ambient))


def is_simplicial(C: RelOpenCone) -> bool:
    ok, d = cone_dim_nonempty(C)
    return ok and len(extreme_rays(C)) == d


def _parallelepiped_point(gens: list[Vector], mult: int) -> tuple[Vector, list[Fraction]]:
    """A nonzero lattice point sum lambda_i g_i with 0 <= lambda_i < 1."""
    n = len(gens[0])
    for num in product(range(mult), repeat=len(gens)):
        if not any(num):
            continue
        x = [sum(num[i] * gens[i][c] for i in range(len(gens))) for c in range(n)]
        if all(v % mult == 0 for v in x):
            pt = primitive([v // mult for v in x])
            return pt, solve_in_basis(gens, pt)
    raise AssertionError("multiplicity > 1 but no interior lattice point found")


def unimodular_subdivision(rays: Sequence[Vector]) -> list[tuple[Vector, ...]]:
    """Stellar subdivision of the simplicial cone on `rays` into unimodular cones.

    The whole fan is subdivided at each step so faces stay compatible.
    """
    cones: list[frozenset[Vector]] = [frozenset(rays)]
    while True:
        bad = None
        for c in cones:
            m = maximal_minors_gcd(sorted(c))
            if m > 1:
                bad = (sorted(c), m)
                break
        if bad is None:
            return [tuple(sorted(c)) for c in cones]
        gens, m = bad
        pt, coords = _parallelepiped_point(gens, m)
        tau = frozenset(g for g, lam in zip(gens, coords) if lam > 0)
        nxt = []
        for c in cones:
            if tau <= c:
                nxt.extend((c - {g}) | {pt} for g in tau)
            else:
                nxt.append(c)
        cones = nxt


def cone_lattice_series(C: RelOpenCone, weights: Sequence[tuple[int, int]]) -> SrSeries:
    """sum over lattice points k of C of prod_i (L^{e_i} T^{j_i})^{k_i}, as an sr-series.

    `weights` gives (e_i, j_i) for each ambient axis; sum_i j_i k_i must be
    positive on the closure of C minus the origin.
    """
    if len(weights) != C.ambient:
        raise ValueError("one (e, j) weight pair per ambient axis is required")
    ok, d = cone_dim_nonempty(C)
    if not ok:
        return SrSeries()
    if d == 0:
        return SrSeries.constant(1)
    rays = extreme_rays(C)
    if len(rays) != d:
        raise ValueError(f"cone is not simplicial ({len(rays)} rays in dimension {d})")
    e_w = [w[0] for w in weights]
    j_w = [w[1] for w in weights]
    for r in rays:
        if dot(j_w, r) <= 0:
            raise ValueError(f"T-weight is not positive on the ray {r}")
    pieces = unimodular_subdivision(rays)
    faces: set[frozenset[Vector]] = set()
    for c in pieces:
        for k in range(1, len(c) + 1):
            faces.update(frozenset(s) for s in combinations(c, k))
    coords = {}
    terms: dict[tuple, int] = {}
    for face in faces:
        covered = [False] * d
        for g in face:
            if g not in coords:
                coords[g] = solve_in_basis(rays, g)
            for i, lam in enumerate(coords[g]):
                if lam > 0:
                    covered[i] = True
        if not all(covered):
            continue
        key = tuple(sorted((dot(e_w, g), dot(j_w, g)) for g in face))
        terms[key] = terms.get(key, 0) + 1
    return SrSeries(terms)


# ---------------------------------------------------------------- literals

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(>=|<=|=|>|<|[+\-*]))")


def _tokenize(text: str, offset: int) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", offset + pos)
        num, name, op = m.groups()
        kind = "num" if num is not None else ("name" if name is not None else "op")
        out.append((kind, m.group(m.lastindex), offset + m.start(m.lastindex)))
        pos = m.end()
    return out


def _parse_linear(text: str, offset: int, names: list[str], fixed: bool) -> dict[str, Fraction]:
    """Parse a homogeneous linear form like '2a - 3*b' (a lone '0' is allowed)."""
    toks = _tokenize(text, offset)
    out: dict[str, Fraction] = {}
    i = 0
    first = True
    end_pos = offset + len(text)

    def peek():
        return toks[i] if i < len(toks) else ("end", "", end_pos)

    while i < len(toks):
        sign = 1
        kind, val, pos = peek()
        if not first and not (kind == "op" and val in "+-"):
            raise ParseError("missing '+' or '-' between terms", pos)
        while peek()[0] == "op" and peek()[1] in ("+", "-"):
            sign = -sign if peek()[1] == "-" else sign
            i += 1
        coeff = Fraction(1)
        kind, val, pos = peek()
        if kind == "num":
            coeff = Fraction(val)
            i += 1
            if peek()[:2] == ("op", "*"):
                i += 1
            elif peek()[0] != "name":
                if coeff == 0:
                    first = False
                    continue
                raise ParseError("constant terms are not allowed in a homogeneous form", pos)
        kind, val, pos = peek()
        if kind != "name":
            raise ParseError("expected a variable name", pos)
        if val not in names:
            if fixed:
                raise ParseError(f"unknown variable {val!r}", pos)
            names.append(val)
        out[val] = out.get(val, Fraction(0)) + sign * coeff
        i += 1
        first = False
    if first:
        raise ParseError("empty linear form", end_pos)
    return out


def parse_cone(text: str, variables: Sequence[str] | None = None) -> tuple[RelOpenCone, list[str]]:
    """Parse constraints like "2a=3b; a>0; b>0" (chains such as "a>b>0" allowed).

    Variables are bound in order of first appearance unless `variables` is given.
    """
    names = list(variables) if variables else []
    fixed = variables is not None
    eqs: list[dict[str, Fraction]] = []
    ineqs: list[dict[str, Fraction]] = []
    offset = 0
    for chunk in text.split(";"):
        if chunk.strip():
            parts = re.split(r"(>=|<=|=|>|<)", chunk)
            if len(parts) < 3:
                raise ParseError("constraint needs a comparison '=', '>' or '<'", offset)
            pos = offset
            forms = []
            ops = []
            for i, part in enumerate(parts):
                if i % 2 == 0:
                    forms.append(_parse_linear(part, pos, names, fixed))
                else:
                    if part in (">=", "<="):
                        raise ParseError("only strict inequalities describe an open cone", pos)
                    ops.append(part)
                pos += len(part)
            for lhs, op, rhs in zip(forms, ops, forms[1:]):
                diff = dict(lhs)
                for k, v in rhs.items():
                    diff[k] = diff.get(k, Fraction(0)) - v
                if op == "=":
                    eqs.append(diff)
                elif op == ">":
                    ineqs.append(diff)
                else:
                    ineqs.append({k: -v for k, v in diff.items()})
        offset += len(chunk) + 1
    if not names:
        raise ParseError("cone literal mentions no variables", 0)

    def vec(form):
        return primitive([form.get(nm, 0) for nm in names]) if any(form.values()) else tuple([0] * len(names))

    return RelOpenCone(len(names), tuple(vec(f) for f in eqs), tuple(vec(f) for f in ineqs)), names


def parse_covector(text: str, variables: Sequence[str]) -> Vector:
    """Parse a linear form such as "a+b" or "2a+3b" (or a comma list "2,3") into integer coefficients."""
    if re.fullmatch(r"\s*-?\d+(\s*,\s*-?\d+)*\s*", text):
        vals = tuple(int(x) for x in text.split(","))
        if len(vals) != len(variables):
            raise ParseError(f"expected {len(variables)} entries, got {len(vals)}", 0)
        return vals
    form = _parse_linear(text, 0, list(variables), True)
    vals = [form.get(nm, Fraction(0)) for nm in variables]
    if any(v.denominator != 1 for v in vals):
        raise ParseError("covector coefficients must be integers", 0)
    return tuple(int(v) for v in vals)


def cone_to_text(C: RelOpenCone, names: Sequence[str] | None = None) -> str:
    names = list(names) if names else [f"a{i + 1}" for i in range(C.ambient)]

    def form(v):
        parts = []
        for c, nm in zip(v, names):
            if c:
                parts.append(f"{'+' if c > 0 else '-'}{'' if abs(c) == 1 else abs(c)}{nm}")
        s = "".join(parts) or "0"
        return s[1:] if s.startswith("+") else s

    items = [f"{form(e)}=0" for e in C.equalities] + [f"{form(b)}>0" for b in C.inequalities]
    return "; ".join(items) if items else "all"
