"""Exact sparse multivariate (Laurent) polynomials over Q.

A :class:`SparsePoly` is an immutable map from exponent tuples to nonzero
:class:`~fractions.Fraction` coefficients. Negative exponents are allowed
(torus computations) but rejected by the Newton polyhedron code.

>>> P = parse_polynomial("2*x^2*y + y^3 - 5", ["x", "y"])
>>> sorted(P.terms.items())
[((0, 0), Fraction(-5, 1)), ((0, 3), Fraction(1, 1)), ((2, 1), Fraction(2, 1))]
"""
from __future__ import annotations

import re
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .errors import ParseError
from .linalg import Vector, dot, nullspace, primitive, rank

__all__ = [
    "SparsePoly",
    "parse_polynomial",
    "render",
    "gradient",
    "face_restriction",
    "quasi_degree",
    "eval_finite_field",
]


class SparsePoly:
    __slots__ = ("nvars", "_terms", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Sequence[int], object] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[Vector, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} has length {len(exp)}, expected {nvars}")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        self.nvars = nvars
        self._terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def constant(cls, nvars: int, c) -> SparsePoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, i: int) -> SparsePoly:
        return cls(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], c=1) -> SparsePoly:
        return cls(len(exp), {tuple(exp): c})

    # -- container protocol -------------------------------------------------
    @property
    def terms(self) -> Mapping[Vector, Fraction]:
        return MappingProxyType(self._terms)

    @property
    def support(self) -> frozenset[Vector]:
        return frozenset(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SparsePoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == SparsePoly.constant(self.nvars, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"SparsePoly({self.nvars}, {render(self)!r})"

    def __str__(self) -> str:
        return render(self)

    # -- arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> SparsePoly:
        if isinstance(other, SparsePoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return SparsePoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return SparsePoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> SparsePoly:
        return SparsePoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Vector, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return SparsePoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> SparsePoly:
        if k < 0:
            if len(self._terms) != 1:
                raise ValueError("negative powers are only defined for monomials")
            (e, c), = self._terms.items()
            return SparsePoly(self.nvars, {tuple(x * k for x in e): Fraction(1) / c ** -k})
        out = SparsePoly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- structure ------------------------------------------------------------
    def has_negative_exponents(self) -> bool:
        return any(x < 0 for e in self._terms for x in e)

    def derivative(self, i: int) -> SparsePoly:
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = c * e[i]
        return SparsePoly(self.nvars, out)

    def restrict_support(self, keep: Iterable[Vector]) -> SparsePoly:
        keep = set(keep)
        return SparsePoly(self.nvars, {e: c for e, c in self._terms.items() if e in keep})

    def set_zero(self, J: Iterable[int]) -> SparsePoly:
        """Substitute y_j = 0 for j in J and drop those variables."""
        J = set(J)
        rest = [i for i in range(self.nvars) if i not in J]
        out = {}
        for e, c in self._terms.items():
            if any(e[j] != 0 for j in J):
                if any(e[j] < 0 for j in J):
                    raise ValueError("cannot set a variable with negative exponent to zero")
                continue
            out[tuple(e[i] for i in rest)] = c
        return SparsePoly(len(rest), out)

    def compose_monomial(self, columns: Sequence[Sequence[int]]) -> SparsePoly:
        """Substitute y_j = prod_i u_i^{columns[i][j]}.

        ``columns[i]`` is the exponent vector N_i; the result lives in
        ``len(columns)`` variables.
        """
        m = len(columns)
        out: dict[Vector, Fraction] = {}
        for e, c in self._terms.items():
            new = tuple(dot(col, e) for col in columns)
            out[new] = out.get(new, 0) + c
        return SparsePoly(m, out)

    def evaluate(self, point: Sequence) -> Fraction:
        total = Fraction(0)
        for e, c in self._terms.items():
            v = c
            for x, k in zip(point, e):
                v *= Fraction(x) ** k
            total += v
        return total

    def reduce_mod(self, q: int) -> dict[Vector, int]:
        """Coefficients reduced mod q; raises if a denominator is divisible by q."""
        out = {}
        for e, c in self._terms.items():
            if c.denominator % q == 0:
                raise ValueError(f"coefficient {c} has denominator divisible by {q}")
            r = c.numerator * pow(c.denominator, -1, q) % q
            if r:
                out[e] = r
        return out


# -- rendering ------------------------------------------------------------------

def default_names(n: int) -> list[str]:
    if n <= 3:
        return ["x", "y", "z"][:n]
    return [f"y{i + 1}" for i in range(n)]


def _term_key(e: Vector):
    return (-sum(e), tuple(-x for x in e))


def render(P: SparsePoly, names: Sequence[str] | None = None) -> str:
    """Term-normal form: terms by descending total degree, then lex."""
    names = list(names) if names is not None else default_names(P.nvars)
    if P.is_zero():
        return "0"
    pieces = []
    for e in sorted(P.terms, key=_term_key):
        c = P.terms[e]
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k:
                factors.append(f"{name}^{k}")
        mag = abs(c)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = f"{mag}*" + "*".join(factors)
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


# -- parsing --------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        num, name, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(("num", num, start))
        elif name is not None:
            toks.append(("name", name, start))
        else:
            if op not in "+-*^()":
                raise ParseError(f"unexpected character {op!r}", start)
            toks.append(("op", op, start))
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, names: Sequence[str]):
        self.toks = _tokenize(text)
        self.i = 0
        self.names = list(names)
        self.n = len(names)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def expect_op(self, op: str):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, found {val or 'end of input'!r}", pos)

    def parse(self) -> SparsePoly:
        if self.peek()[0] == "end":
            raise ParseError("empty polynomial", 0)
        out = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r}", pos)
        return out

    def expr(self) -> SparsePoly:
        out = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            _, op, _ = self.take()
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> SparsePoly:
        out = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            out = out * self.unary()
        kind, val, pos = self.peek()
        if kind in ("num", "name") or (kind, val) == ("op", "("):
            raise ParseError("missing '*' between factors", pos)
        return out

    def unary(self) -> SparsePoly:
        kind, val, _ = self.peek()
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.unary()
        if (kind, val) == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> SparsePoly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            neg = False
            if self.peek()[:2] == ("op", "-"):
                self.take()
                neg = True
            kind, val, pos = self.take()
            if kind != "num" or "/" in val:
                raise ParseError("exponent must be an integer", pos)
            k = -int(val) if neg else int(val)
            try:
                return base ** k
            except ValueError as exc:
                raise ParseError(str(exc), pos) from None
        return base

    def atom(self) -> SparsePoly:
        kind, val, pos = self.take()
        if kind == "num":
            return SparsePoly.constant(self.n, Fraction(val))
        if kind == "name":
            if val not in self.names:
                raise ParseError(f"unknown variable {val!r}", pos)
            return SparsePoly.variable(self.n, self.names.index(val))
        if (kind, val) == ("op", "("):
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError(f"unexpected {val or 'end of input'!r}", pos)


def infer_variables(text: str) -> list[str]:
    """Variable names occurring in ``text``, sorted."""
    return sorted({m.group(2) for m in _TOKEN.finditer(text) if m.group(2)})


def parse_polynomial(text: str, variables: Sequence[str] | None = None) -> SparsePoly:
    """Parse ``text`` with the grammar ``+ - * ^ ( )``, integer/rational literals.

    ``*`` is mandatory between factors. Raises :class:`ParseError` with the
    offending position on malformed input or unknown variable names.
    """
    if variables is None:
        variables = infer_variables(text)
    return _Parser(text, variables).parse()


# -- operations -------------------------------------------------------------------

def gradient(P: SparsePoly) -> tuple[SparsePoly, ...]:
    return tuple(P.derivative(i) for i in range(P.nvars))


def face_restriction(P: SparsePoly, face) -> SparsePoly:
    """P_delta: the monomials of P whose exponents lie on the compact face.

    ``face`` is a :class:`~motivic_nearby.newton.FaceData` of P's Newton
    polyhedron (anything with ``contains``/``vertices`` works).
    """
    if not set(face.vertices) <= P.support:
        raise ValueError("face does not belong to the Newton polyhedron of P")
    return SparsePoly(P.nvars, {e: c for e, c in P.terms.items() if face.contains(e)})


def quasi_degree(P: SparsePoly, normal: Sequence[int] | None = None) -> tuple[Vector, int]:
    """Weights w >= 0 and degree N with <w, alpha> = N on the support of P.

    When the support pins the hyperplane down, w is its primitive normal.
    Otherwise ``normal`` (e.g. an interior point of the face's dual cone)
    is used, and failing that the primitive sum of the extreme rays of
    {w >= 0 : w orthogonal to the support's affine span}.
    """
    from .cones import RelOpenCone, extreme_rays

    supp = sorted(P.support)
    if not supp:
        raise ValueError("zero polynomial has no quasi-degree")
    p = P.nvars
    s0 = supp[0]
    diffs = [tuple(a - b for a, b in zip(s, s0)) for s in supp[1:]]
    diffs = [d for d in diffs if any(d)]
    ker = nullspace(diffs, p) if diffs else nullspace([], p)
    if not ker:
        raise ValueError("support spans the whole space")
    w: Vector | None = None
    if len(ker) == 1:
        cand = ker[0]
        if all(x >= 0 for x in cand):
            w = cand
        elif all(x <= 0 for x in cand):
            w = tuple(-x for x in cand)
        else:
            raise ValueError("support lies on no hyperplane with nonnegative normal")
    elif normal is not None:
        if any(x < 0 for x in normal) or any(dot(normal, d) for d in diffs):
            raise ValueError("supplied normal does not fit the support")
        w = primitive(normal)
    else:
        cone = RelOpenCone(p, equalities=diffs, inequalities=())
        rays = extreme_rays(cone, nonnegative=True)
        if not rays:
            raise ValueError("support lies on no hyperplane with nonnegative normal")
        w = primitive([sum(col) for col in zip(*rays)])
    N = dot(w, s0)
    if N <= 0:
        raise ValueError("support lies on no hyperplane with positive degree")
    return w, N


def eval_finite_field(P: SparsePoly, point: Sequence[int], q: int) -> int:
    """Evaluate P at a point of F_q^p (q prime); negative exponents need unit entries."""
    total = 0
    for e, c in P.reduce_mod(q).items():
        v = c
        for x, k in zip(point, e):
            if k < 0 and x % q == 0:
                raise ValueError("negative exponent at a zero coordinate")
            v = v * pow(x, k, q) % q
        total += v
    return total % q


def laurent_rank(P: SparsePoly) -> int:
    """Dimension of the affine span of the support (-1 for the zero polynomial)."""
    supp = sorted(P.support)
    if not supp:
        return -1
    return rank([[a - b for a, b in zip(s, supp[0])] for s in supp[1:]]) if len(supp) > 1 else 0
