"""Zeta functions and nearby-cycle classes read off combinatorial log-resolution data.

A :class:`ResolutionDatum` lists the divisors E_i of a log-resolution with
their multiplicity vectors N_i (one entry per function f_j) and
discrepancies nu_i, plus the Euler characteristic and point-count
polynomial of every stratum E_I^o. Nothing here computes resolutions.

Data for a family f_j(x_j) of functions on a product of spaces carry their
per-factor data in ``factors``; that structure is what makes the
restriction to X_J = {f_j = 0, j in J} computable.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import product
from pathlib import Path
from typing import Iterable, Sequence

from .cones import RelOpenCone, chi_compact, cone_lattice_series, extreme_rays, preimage_cone
from .errors import RefusedComputation
from .linalg import dot
from .motring import Atom, ClassExpr, torus_bundle
from .srseries import SrSeries, from_resolution_factor


@dataclass(frozen=True)
class Divisor:
    id: str
    N: tuple[int, ...]
    nu: int

    def __post_init__(self):
        if self.nu < 1:
            raise ValueError(f"divisor {self.id}: nu must be >= 1")
        if any(x < 0 for x in self.N):
            raise ValueError(f"divisor {self.id}: multiplicities must be >= 0")


@dataclass(frozen=True)
class BaseClass:
    """Euler characteristic and point-count polynomial (coefficients in q) of a variety."""

    chi: int = 1
    count_poly: tuple[int, ...] | None = (1,)

    def times(self, other: BaseClass) -> BaseClass:
        return BaseClass(self.chi * other.chi, _poly_mul(self.count_poly, other.count_poly))


@dataclass(frozen=True)
class Stratum:
    I: frozenset[str]
    chi: int
    count_poly: tuple[int, ...] | None
    over_X0: bool

    def __post_init__(self):
        if not self.I:
            raise ValueError("strata are indexed by nonempty divisor sets")
        if self.count_poly is not None and sum(self.count_poly) != self.chi:
            raise ValueError(f"stratum {sorted(self.I)}: count_poly(1) != chi")


def _poly_mul(a, b):
    if a is None or b is None:
        return None
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class ResolutionDatum:
    p: int
    dim: int
    divisors: tuple[Divisor, ...]
    strata: tuple[Stratum, ...]
    name: str = ""
    functions: tuple[str, ...] = ()
    variables: tuple[str, ...] = ()
    factors: tuple[ResolutionDatum, ...] = ()
    zero_locus: BaseClass | None = None
    complement: BaseClass | None = None
    base: BaseClass = field(default_factory=BaseClass)

    def __post_init__(self):
        ids = [d.id for d in self.divisors]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate divisor ids")
        for d in self.divisors:
            if len(d.N) != self.p:
                raise ValueError(f"divisor {d.id}: N needs {self.p} entries")
        known = set(ids)
        for s in self.strata:
            if not s.I <= known:
                raise ValueError(f"stratum {sorted(s.I)} mentions unknown divisors")

    def divisor(self, i: str) -> Divisor:
        for d in self.divisors:
            if d.id == i:
                return d
        raise KeyError(i)

    def ordered(self, I: Iterable[str]) -> list[Divisor]:
        order = {d.id: k for k, d in enumerate(self.divisors)}
        return [self.divisor(i) for i in sorted(I, key=order.__getitem__)]

    def restrict(self, J: Iterable[int]) -> ResolutionDatum:
        """Datum of f_{J^c} on X_J = {f_j = 0 : j in J} (J holds 1-based function indices)."""
        J = set(J)
        if not J:
            return self
        if not self.factors:
            raise RefusedComputation(
                f"restricting {self.name or 'the datum'} to f_j = 0 needs per-factor data"
            )
        if not J <= set(range(1, self.p + 1)):
            raise ValueError(f"J={sorted(J)} out of range")
        base = self.base
        for j in sorted(J):
            zl = self.factors[j - 1].zero_locus
            if zl is None:
                raise RefusedComputation(f"factor {j} lacks the class of its zero locus")
            base = base.times(zl)
        keep = [self.factors[j - 1] for j in range(1, self.p + 1) if j not in J]
        return product_datum(keep, base=base, name=f"{self.name}|J={sorted(J)}")

    # -- JSON -----------------------------------------------------------------
    def to_json(self) -> dict:
        out: dict[str, object] = {"p": self.p, "dim": self.dim}
        if self.name:
            out["name"] = self.name
        if self.functions:
            out["functions"] = list(self.functions)
        if self.variables:
            out["vars"] = list(self.variables)
        out["divisors"] = [{"id": d.id, "N": list(d.N), "nu": d.nu} for d in self.divisors]
        out["strata"] = [
            {
                "I": sorted(s.I),
                "chi": s.chi,
                **({"count_poly": list(s.count_poly)} if s.count_poly is not None else {}),
                "over_X0": s.over_X0,
            }
            for s in self.strata
        ]
        if self.zero_locus is not None:
            out["zero_locus"] = _base_json(self.zero_locus)
        if self.complement is not None:
            out["complement"] = _base_json(self.complement)
        if self.factors:
            out["factors"] = [f.to_json() for f in self.factors]
        return out


def _base_json(b: BaseClass) -> dict:
    out: dict[str, object] = {"chi": b.chi}
    if b.count_poly is not None:
        out["count_poly"] = list(b.count_poly)
    return out


def _base_from(d: dict | None) -> BaseClass | None:
    if d is None:
        return None
    cp = d.get("count_poly")
    return BaseClass(int(d["chi"]), tuple(int(x) for x in cp) if cp is not None else None)


def datum_from_json(data: dict) -> ResolutionDatum:
    try:
        meta = dict(
            name=data.get("name", ""),
            functions=tuple(data.get("functions", ())),
            variables=tuple(data.get("vars", ())),
        )
        if "factors" in data and "divisors" not in data:
            factors = [datum_from_json(f) for f in data["factors"]]
            return product_datum(factors, **meta)
        divisors = tuple(
            Divisor(str(d["id"]), tuple(int(x) for x in d["N"]), int(d["nu"])) for d in data["divisors"]
        )
        strata = tuple(
            Stratum(
                frozenset(str(i) for i in s["I"]),
                int(s["chi"]),
                tuple(int(x) for x in s["count_poly"]) if s.get("count_poly") is not None else None,
                bool(s.get("over_X0", True)),
            )
            for s in data["strata"]
        )
        factors = tuple(datum_from_json(f) for f in data.get("factors", ()))
        return ResolutionDatum(
            int(data["p"]), int(data["dim"]), divisors, strata, factors=factors,
            zero_locus=_base_from(data.get("zero_locus")),
            complement=_base_from(data.get("complement")),
            **meta,
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed resolution datum: {exc}") from exc


def load_datum(path: str | Path) -> ResolutionDatum:
    with open(path, encoding="utf-8") as fh:
        return datum_from_json(json.load(fh))


FIXTURES = ("line", "node", "cusp", "product_2_3", "product_2_5", "product_3_4")


def load_fixture(name: str) -> ResolutionDatum:
    """Load a shipped resolution datum by name (see FIXTURES)."""
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    text = resources.files("motivic_nearby").joinpath("fixtures").joinpath(f"{name}.json").read_text(encoding="utf-8")
    return datum_from_json(json.loads(text))


# ------------------------------------------------------------ constructions

def product_datum(factors: Sequence[ResolutionDatum], base: BaseClass | None = None, name: str = "",
                  functions: Sequence[str] = (), variables: Sequence[str] = ()) -> ResolutionDatum:
    """Datum for the family (f_1, ..., f_p) on a product, f_j living on factor j.

    Each factor is a single-function datum with its ``complement`` class
    (the factor minus the divisors); the strata of the product are products
    of factor strata and complements, excluding the all-complement piece.
    """
    base = base or BaseClass()
    p = len(factors)
    divisors: list[Divisor] = []
    options: list[list[tuple[frozenset[str], BaseClass, bool]]] = []
    for j, fac in enumerate(factors):
        if fac.p != 1:
            raise ValueError("product factors must carry a single function")
        if fac.complement is None:
            raise ValueError(f"factor {j + 1} lacks the class of its complement")
        for d in fac.divisors:
            N = [0] * p
            N[j] = d.N[0]
            divisors.append(Divisor(f"{j + 1}:{d.id}", tuple(N), d.nu))
        opts = [(frozenset(), fac.complement, False)]
        for s in fac.strata:
            opts.append((frozenset(f"{j + 1}:{i}" for i in s.I), BaseClass(s.chi, s.count_poly), s.over_X0))
        options.append(opts)
    strata = []
    for combo in product(*options):
        I = frozenset().union(*(c[0] for c in combo))
        if not I:
            continue
        cls = base
        for c in combo:
            cls = cls.times(c[1])
        strata.append(Stratum(I, cls.chi, cls.count_poly, all(c[2] for c in combo)))
    return ResolutionDatum(
        p, sum(f.dim for f in factors), tuple(divisors), tuple(strata), name=name,
        functions=tuple(functions), variables=tuple(variables), factors=tuple(factors), base=base,
    )


def line_datum(power: int = 1) -> ResolutionDatum:
    """x^power on the affine line: one divisor {x = 0} with N = power, nu = 1."""
    return ResolutionDatum(
        1, 1, (Divisor("E", (power,), 1),), (Stratum(frozenset({"E"}), 1, (1,), True),),
        name="line" if power == 1 else f"line^{power}", functions=("x" if power == 1 else f"x^{power}",),
        variables=("x",), zero_locus=BaseClass(1, (1,)), complement=BaseClass(0, (-1, 1)),
    )


def coordinate_datum(p: int) -> ResolutionDatum:
    """The coordinate functions on A^p (the identity resolution)."""
    names = [f"y{i + 1}" for i in range(p)]
    return product_datum([line_datum(1) for _ in range(p)], name=f"coordinates{p}",
                         functions=tuple(names), variables=tuple(names))


def monomial_pair_datum(a: int, b: int) -> ResolutionDatum:
    """(x^a, y^b) on the plane."""
    return product_datum([line_datum(a), line_datum(b)], name=f"product_{a}_{b}",
                         functions=(f"x^{a}", f"y^{b}"), variables=("x", "y"))


# ---------------------------------------------------------------- formulas

def _function_multiplicities(R: ResolutionDatum, which) -> tuple[ResolutionDatum, dict[str, int]]:
    if which in ("F", None):
        return R, {d.id: sum(d.N) for d in R.divisors}
    j = int(which)
    if not 0 <= j < R.p:
        raise ValueError(f"function index {j} out of range for p={R.p}")
    mult = {d.id: d.N[j] for d in R.divisors}
    if any(v == 0 for v in mult.values()):
        if R.factors:
            fac = R.factors[j]
            return fac, {d.id: d.N[0] for d in fac.divisors}
        raise RefusedComputation(f"some divisors do not lie over f_{j + 1} = 0; not a resolution datum for it")
    return R, mult


def _strata(R: ResolutionDatum, restrict: bool) -> list[Stratum]:
    return [s for s in R.strata if s.over_X0 or not restrict]


def stratum_atom(R: ResolutionDatum, s: Stratum, degrees: Sequence[int]) -> Atom:
    divs = R.ordered(s.I)
    label = "E_{" + ",".join(d.id for d in divs) + "}"
    return torus_bundle(degrees, s.chi, s.count_poly, label, monomial=[d.N for d in divs])


def zeta_series(R: ResolutionDatum, which=0, restrict: bool = False) -> SrSeries:
    """sum over strata of [U_I] prod_{i in I} 1/(T^{-N_i} L^{nu_i} - 1)."""
    R, mult = _function_multiplicities(R, which)
    total = SrSeries()
    for s in _strata(R, restrict):
        divs = R.ordered(s.I)
        factor = SrSeries.constant(1)
        for d in divs:
            factor = factor * from_resolution_factor(mult[d.id], d.nu)
        atom = stratum_atom(R, s, [mult[d.id] for d in divs])
        total = total + ClassExpr.of(atom) * factor
    return total


def nearby_cycles(R: ResolutionDatum, which=0, restrict: bool = False) -> ClassExpr:
    """-sum_I (-1)^{|I|} [U_I]."""
    R, mult = _function_multiplicities(R, which)
    out = ClassExpr()
    for s in _strata(R, restrict):
        divs = R.ordered(s.I)
        sign = -((-1) ** len(divs))
        out = out + ClassExpr.of(stratum_atom(R, s, [mult[d.id] for d in divs]), sign)
    return out


def _positive_part(C: RelOpenCone) -> RelOpenCone:
    return C.intersect(RelOpenCone.positive_orthant(C.ambient))


def truncated_zeta(R: ResolutionDatum, C: RelOpenCone, ell: Sequence[int], restrict: bool = False) -> SrSeries:
    """Z^{C,ell}: sum_I [U_I] * (lattice series of N_I^{-1}(C) with weights (-nu_i, ell(N_i)))."""
    if C.ambient != R.p:
        raise ValueError(f"cone lives in dimension {C.ambient}, datum has p={R.p}")
    if len(ell) != R.p:
        raise ValueError("ell needs one entry per function")
    C = _positive_part(C)
    for r in extreme_rays(C):
        if dot(ell, r) <= 0:
            raise ValueError(f"ell is not positive on the cone (fails on ray {r})")
    total = SrSeries()
    for s in _strata(R, restrict):
        divs = R.ordered(s.I)
        pre = preimage_cone([d.N for d in divs], C)
        series = cone_lattice_series(pre, [(-d.nu, dot(ell, d.N)) for d in divs])
        if series:
            atom = stratum_atom(R, s, [sum(d.N) for d in divs])
            total = total + ClassExpr.of(atom) * series
    return total


def truncated_nearby(R: ResolutionDatum, C: RelOpenCone, restrict: bool = False) -> ClassExpr:
    """S^{C}: sum_I chi_c(N_I^{-1}(C)) [U_I]."""
    if C.ambient != R.p:
        raise ValueError(f"cone lives in dimension {C.ambient}, datum has p={R.p}")
    C = _positive_part(C)
    out = ClassExpr()
    for s in _strata(R, restrict):
        divs = R.ordered(s.I)
        chi = chi_compact(preimage_cone([d.N for d in divs], C))
        if chi:
            out = out + ClassExpr.of(stratum_atom(R, s, [sum(d.N) for d in divs]), chi)
    return out


def acampo_lambda(R: ResolutionDatum, n: int, which=0, restrict: bool = True) -> int:
    """sum over single divisors with N_i | n of N_i chi(E_i^o) (the classical formula)."""
    R, mult = _function_multiplicities(R, which)
    total = 0
    for s in _strata(R, restrict):
        if len(s.I) == 1:
            (i,) = s.I
            if n % mult[i] == 0:
                total += mult[i] * s.chi
    return total
