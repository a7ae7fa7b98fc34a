"""The module A[[T]]_sr spanned by 1 and products of p_{e,i}(T) = L^e T^i / (1 - L^e T^i).

Series are kept in normal form: a dict from the sorted factor multiset
(a tuple of ``(e, i)`` pairs) to a coefficient. The coefficient ring is
pluggable: ints, Fractions, :class:`~motivic_nearby.lpoly.LPoly` or
:class:`~motivic_nearby.motring.ClassExpr` all work, since only ``+``,
unary ``-``, multiplication by an LPoly and truthiness are used.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .lpoly import LPoly

Factor = tuple[int, int]
Key = tuple[Factor, ...]


def _key(factors: Iterable[Factor]) -> Key:
    out = []
    for e, i in factors:
        if int(i) < 1:
            raise ValueError(f"T-exponent of p(e, i) must be >= 1, got {i}")
        out.append((int(e), int(i)))
    return tuple(sorted(out))


class SrSeries:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Iterable[Factor], object] | None = None):
        acc: dict[Key, object] = {}
        for factors, c in (terms or {}).items():
            k = _key(factors)
            acc[k] = acc[k] + c if k in acc else c
        self._terms = {k: c for k, c in acc.items() if c}

    @classmethod
    def constant(cls, c) -> SrSeries:
        return cls({(): c})

    @property
    def terms(self) -> dict[Key, object]:
        return dict(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, SrSeries):
            return self._terms == other._terms
        return NotImplemented

    def __add__(self, other: SrSeries) -> SrSeries:
        if not isinstance(other, SrSeries):
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out[k] + c if k in out else c
        return SrSeries(out)

    def __neg__(self) -> SrSeries:
        return SrSeries({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: SrSeries) -> SrSeries:
        return self + (-other)

    def __mul__(self, other) -> SrSeries:
        if isinstance(other, SrSeries):
            out: dict[Key, object] = {}
            for k1, c1 in self._terms.items():
                for k2, c2 in other._terms.items():
                    k = tuple(sorted(k1 + k2))
                    c = c1 * c2
                    out[k] = out[k] + c if k in out else c
            return SrSeries(out)
        return SrSeries({k: c * other for k, c in self._terms.items()})

    def __rmul__(self, other) -> SrSeries:
        return SrSeries({k: other * c for k, c in self._terms.items()})

    def __repr__(self) -> str:
        return f"SrSeries({self.render()})"

    def render(self, coeff_str: Callable[[object], str] = str) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k in sorted(self._terms, key=lambda k: (len(k), k)):
            prod = "*".join(f"p({e},{i})" for e, i in k) or "1"
            parts.append(f"({coeff_str(self._terms[k])})*{prod}")
        return " + ".join(parts)

    def to_json(self, coeff_json: Callable[[object], object] = lambda c: c) -> list:
        """Nested arrays: ``[[coefficient, [[e, i], ...]], ...]``."""
        return [
            [coeff_json(self._terms[k]), [list(f) for f in k]]
            for k in sorted(self._terms, key=lambda k: (len(k), k))
        ]


def p_term(e: int, i: int) -> SrSeries:
    if i < 1:
        raise ValueError(f"p(e, i) needs i >= 1, got {i}")
    return SrSeries({((e, i),): 1})


def from_resolution_factor(N: int, nu: int) -> SrSeries:
    """1/(T^{-N} L^{nu} - 1), which is p_{-nu, N}."""
    if N < 1:
        raise ValueError(f"multiplicity N must be >= 1, got {N}")
    return p_term(-nu, N)


def series_arith(a: SrSeries, b, op: str) -> SrSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "scalar":
        return b * a
    raise ValueError(f"unknown op {op!r}")


@lru_cache(maxsize=None)
def _expand(key: Key, n: int) -> LPoly:
    """Coefficient of T^n in prod p_{e,i}, as a Laurent polynomial in L."""
    if not key:
        return LPoly(1) if n == 0 else LPoly()
    (e, i), rest = key[0], key[1:]
    min_rest = sum(j for _, j in rest)
    out = LPoly()
    m = 1
    while m * i + min_rest <= n:
        sub = _expand(rest, n - m * i)
        if sub:
            out = out + LPoly.L(e * m) * sub
        m += 1
    return out


def coefficient_extract(S: SrSeries, n: int):
    """Exact coefficient of T^n, expanding p_{e,i} = sum_{m>=1} L^{em} T^{im}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = None
    for k, c in S.terms.items():
        ex = _expand(k, n)
        if not ex:
            continue
        piece = c * ex
        total = piece if total is None else total + piece
    return total if total is not None else 0


def limit_T_infinity(S: SrSeries):
    """The A-linear limit sending a product of |I| factors to (-1)^|I|."""
    total = None
    for k, c in S.terms.items():
        piece = c if len(k) % 2 == 0 else -c
        total = piece if total is None else total + piece
    return total if total is not None else 0
