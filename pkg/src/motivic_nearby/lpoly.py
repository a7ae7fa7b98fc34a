"""Laurent polynomials in the Lefschetz class L."""
from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Mapping


class LPoly:
    """Finite sum  sum_k c_k L^k  with integer (or rational) coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, object] | int | Fraction | None = None):
        if isinstance(coeffs, (int, Fraction)):
            coeffs = {0: coeffs}
        clean = {}
        for k, v in (coeffs or {}).items():
            if v:
                clean[int(k)] = v
        self._c = clean

    @classmethod
    def L(cls, k: int = 1) -> LPoly:
        return cls({k: 1})

    @property
    def coeffs(self) -> Mapping[int, object]:
        return MappingProxyType(self._c)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, LPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._c.items()))

    @staticmethod
    def _lift(other):
        if isinstance(other, LPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return LPoly(other)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out = dict(self._c)
        for k, v in o._c.items():
            out[k] = out.get(k, 0) + v
        return LPoly(out)

    __radd__ = __add__

    def __neg__(self) -> LPoly:
        return LPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        out: dict[int, object] = {}
        for k1, v1 in self._c.items():
            for k2, v2 in o._c.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return LPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LPoly:
        if n < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials in L are invertible")
            (k, v), = self._c.items()
            return LPoly({k * n: Fraction(1) / Fraction(v) ** -n})
        out = LPoly(1)
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, value) -> Fraction:
        """Realize L -> value (1 for Euler characteristics, q for point counts)."""
        value = Fraction(value)
        return sum((Fraction(v) * value ** k for k, v in self._c.items()), Fraction(0))

    def to_json(self) -> dict[str, object]:
        return {str(k): _num_json(v) for k, v in sorted(self._c.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, object]) -> LPoly:
        return cls({int(k): Fraction(v) if isinstance(v, str) else v for k, v in data.items()})

    def __repr__(self) -> str:
        return f"LPoly({self})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for k in sorted(self._c, reverse=True):
            v = self._c[k]
            if k == 0:
                parts.append(str(v))
            else:
                mono = "L" if k == 1 else f"L^{k}"
                parts.append(mono if v == 1 else ("-" + mono if v == -1 else f"{v}*{mono}"))
        return " + ".join(parts).replace("+ -", "- ")


def _num_json(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    return v
