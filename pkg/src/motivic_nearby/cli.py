"""Command-line front end: ``motivic-nearby <subcommand> ...``.

Exit codes: 0 success, 1 bad input, 2 computation refused, 3 failed identity.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Sequence

from .composer import nearby_report, nearby_total, total_class
from .cones import RelOpenCone, cone_to_text, parse_cone, parse_covector
from .errors import GuardExceeded, InconsistencyError, ParseError, RefusedComputation
from .jets import jet_count
from .motring import count_points, lambda_table
from .newton import newton_report_json, nondegeneracy_report
from .poly import SparsePoly, infer_variables, parse_polynomial, render
from .reszeta import (
    FIXTURES,
    ResolutionDatum,
    acampo_lambda,
    load_datum,
    load_fixture,
    nearby_cycles,
    truncated_nearby,
    truncated_zeta,
    zeta_series,
)
from .srseries import coefficient_extract, limit_T_infinity

EXIT_OK, EXIT_INPUT, EXIT_REFUSED, EXIT_INCONSISTENT = 0, 1, 2, 3


def _json_default(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(args, payload: dict, text: Callable[[dict], str]) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True, indent=2, default=_json_default))
    else:
        print(text(payload))


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise ParseError(f"expected a comma-separated list of integers, got {text!r}") from exc


def _vars(args) -> list[str] | None:
    return [v.strip() for v in args.vars.split(",")] if args.vars else None


def _poly(args) -> tuple[SparsePoly, list[str]]:
    names = _vars(args)
    P = parse_polynomial(args.polynomial, names)
    if names is None:
        names = infer_variables(args.polynomial)
    return P, names


def _datum(args, required: bool = True) -> ResolutionDatum | None:
    if args.resolution and args.fixture:
        raise ValueError("give either --resolution or --fixture, not both")
    if args.resolution:
        return load_datum(args.resolution)
    if args.fixture:
        if args.fixture not in FIXTURES:
            raise ValueError(f"unknown fixture {args.fixture!r}; choose from {', '.join(FIXTURES)}")
        return load_fixture(args.fixture)
    if required:
        raise ValueError("a resolution datum is required (--resolution FILE or --fixture NAME)")
    return None


def _which(args):
    return "F" if args.which == "F" else int(args.which)


# ---------------------------------------------------------------- commands

def cmd_newton(args) -> int:
    P, names = _poly(args)
    primes = _int_list(args.q) if args.q else None
    report = newton_report_json(P, primes, names)

    def text(rep):
        lines = []
        for f in rep["faces"]:
            lines.append(
                f"dim {f['dim']} J={f['J']} vertices={f['vertices']} weights={f['weights']} "
                f"degree={f['degree']} rays={f['dual_cone_generators']} P_delta={f['face_polynomial']}"
            )
        return "\n".join(lines)

    _emit(args, report, text)
    return EXIT_OK


def cmd_nondeg(args) -> int:
    P, names = _poly(args)
    primes = _int_list(args.q) if args.q else None
    reports = nondegeneracy_report(P, primes)
    rows = [{
        "vertices": [list(v) for v in rep.face.vertices],
        "J": sorted(rep.face.J),
        "face_polynomial": render(rep.face_poly, names),
        "strong": rep.strong.to_json(),
        "kouchnirenko": rep.kouchnirenko.to_json(),
    } for rep in reports]
    payload = {"faces": rows, "nondegenerate": not any(r.kouchnirenko.degenerate for r in reports)}

    def text(p):
        lines = []
        for r in p["faces"]:
            kou = r["kouchnirenko"]
            witness = f" witness={kou['point']}" if kou.get("point") else ""
            lines.append(f"{r['face_polynomial']}: strong={r['strong']['status']} kouchnirenko={kou['status']}{witness}")
        lines.append("non-degenerate" if p["nondegenerate"] else "DEGENERATE")
        return "\n".join(lines)

    _emit(args, payload, text)
    return EXIT_OK


def _coefficient_rows(S, upto: int, qs: Sequence[int]) -> list[dict]:
    rows = []
    for n in range(upto + 1):
        c = coefficient_extract(S, n)
        rows.append({
            "n": n,
            "class": str(c),
            "counts": {str(q): count_points(c, q) for q in qs},
        })
    return rows


def cmd_zeta(args) -> int:
    R = _datum(args)
    which = _which(args)
    S = zeta_series(R, which)
    qs = _int_list(args.q) if args.q else []
    payload = {
        "datum": R.name,
        "series": S.render(),
        "minus_limit": str(-limit_T_infinity(S)),
        "nearby_cycles": str(nearby_cycles(R, which)),
    }
    if args.order is not None:
        payload["coefficients"] = _coefficient_rows(S, args.order, qs)

    def text(p):
        lines = [f"Z(T) = {p['series']}", f"-lim Z = {p['minus_limit']}"]
        for row in p.get("coefficients", []):
            counts = " ".join(f"#F_{q}={v}" for q, v in row["counts"].items())
            lines.append(f"[T^{row['n']}] {row['class']} {counts}".rstrip())
        return "\n".join(lines)

    _emit(args, payload, text)
    return EXIT_OK


def _cone_and_ell(args, R: ResolutionDatum) -> tuple[RelOpenCone, list[str], list[int] | None]:
    if args.cone:
        C, names = parse_cone(args.cone, _vars(args))
    else:
        C = RelOpenCone.positive_orthant(R.p)
        names = _vars(args) or [f"a{i + 1}" for i in range(R.p)]
    if C.ambient != R.p:
        raise ValueError(f"the cone has {C.ambient} coordinates but the datum has p={R.p}")
    ell = parse_covector(args.ell, names) if args.ell else None
    return C, names, ell


def cmd_truncated(args) -> int:
    R = _datum(args)
    C, names, ell = _cone_and_ell(args, R)
    restrict = args.restrict
    S_class = truncated_nearby(R, C, restrict=restrict)
    payload = {"datum": R.name, "cone": cone_to_text(C, names), "S": str(S_class), "lambda": lambda_table(S_class)}
    if ell is not None:
        Z = truncated_zeta(R, C, ell, restrict=restrict)
        payload["Z"] = Z.render()
        payload["limit_matches"] = limit_T_infinity(Z) == S_class

    def text(p):
        lines = [f"cone: {p['cone']}"]
        if "Z" in p:
            lines.append(f"Z^C = {p['Z']}")
        lines.append(f"S^C = {p['S']}")
        lines.append(f"Lambda = {p['lambda']}")
        return "\n".join(lines)

    _emit(args, payload, text)
    if payload.get("limit_matches") is False:
        return EXIT_INCONSISTENT
    return EXIT_OK


def cmd_nearby(args) -> int:
    P, names = _poly(args)
    R = _datum(args, required=False)
    rep = nearby_report(P, R, upto=args.order)
    payload = rep.to_json(names)

    def text(p):
        lines = []
        for c in p["contributions"]:
            lines.append(f"J={c['J']} face={c['face']} P_delta={c['face_polynomial']} coeff={c['coefficient']}")
        lines.append("Lambda = (" + ", ".join(str(v) for v in p["lambda_table"]) + ")")
        lines.append(f"zeta(t) = {p['zeta']}")
        lines.append(f"chi(fiber) = {p['euler_fiber']}")
        lines.append(f"milnor number = {p['milnor_number']}")
        return "\n".join(lines)

    _emit(args, payload, text)
    return EXIT_OK


def cmd_jets(args) -> int:
    P, names = _poly(args)
    if args.order is None:
        raise ValueError("jets needs --order N")
    qs = _int_list(args.q) if args.q else [2, 3]
    results = {}
    for q in qs:
        total, by_ac = jet_count(P, args.order, q)
        results[str(q)] = {"total": total, "by_ac": {str(a): c for a, c in sorted(by_ac.items())}}
    payload = {"polynomial": args.polynomial, "order": args.order, "counts": results}

    def text(p):
        return "\n".join(f"q={q}: {r['total']}  ac histogram {r['by_ac']}" for q, r in p["counts"].items())

    _emit(args, payload, text)
    return EXIT_OK


# ----------------------------------------------------------- compare suite

def compare_checks(R: ResolutionDatum, order: int = 2, qs: Sequence[int] = (2, 3)) -> list[tuple[str, bool, str]]:
    """Run every cross-check that applies to the datum; returns (name, passed, detail)."""
    checks: list[tuple[str, bool, str]] = []
    which = 0 if R.p == 1 else "F"
    if R.p == 1:
        S = zeta_series(R, 0)
        lim = -limit_T_infinity(S)
        near = nearby_cycles(R, 0)
        checks.append(("minus limit of Z equals nearby cycles", lim == near, str(near)))

        ours = lambda_table(nearby_cycles(R, 0, restrict=True), 12)
        classical = [acampo_lambda(R, n) for n in range(1, 13)]
        checks.append(("Lefschetz numbers match the A'Campo formula", list(ours) == classical, str(classical)))

        if R.functions:
            g = parse_polynomial(R.functions[0], list(R.variables) or None)
            for q in qs:
                for n in range(1, order + 1):
                    try:
                        brute, _ = jet_count(g, n, q)
                    except GuardExceeded:
                        continue
                    predicted = count_points(coefficient_extract(S, n), q) * q ** (n * R.dim)
                    checks.append((f"jet count n={n} q={q}", brute == predicted, f"{brute} vs {predicted}"))
    else:
        lim = -limit_T_infinity(zeta_series(R, which))
        near = nearby_cycles(R, which)
        checks.append(("minus limit of Z equals nearby cycles (sum of functions)", lim == near, str(near)))
        if R.functions:
            names = list(R.variables) or None
            y_sum = parse_polynomial(" + ".join(f"y{i + 1}" for i in range(R.p)), [f"y{i + 1}" for i in range(R.p)])
            via_datum = total_class(nearby_total(y_sum, R))
            direct = parse_polynomial(" + ".join(f"({f})" for f in R.functions), names)
            via_coords = total_class(nearby_total(direct))
            upto = 12
            a = lambda_table(via_datum, upto)
            b = lambda_table(via_coords, upto)
            checks.append(("composition route matches coordinate route", list(a) == list(b), str(list(a))))
    return checks


def cmd_compare(args) -> int:
    R = _datum(args)
    qs = _int_list(args.q) if args.q else [2, 3]
    checks = compare_checks(R, args.order if args.order is not None else 2, qs)
    payload = {"datum": R.name, "checks": [{"name": n, "passed": ok, "detail": d} for n, ok, d in checks]}

    def text(p):
        return "\n".join(f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}  ({c['detail']})" for c in p["checks"])

    _emit(args, payload, text)
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_INCONSISTENT


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="motivic-nearby", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, poly: bool = False, datum: bool = False):
        if poly:
            p.add_argument("polynomial", help='polynomial text, e.g. "x^2 + y^3"')
            p.add_argument("--vars", help="comma-separated variable order, e.g. x,y,z")
        if datum:
            p.add_argument("--resolution", help="resolution datum JSON file")
            p.add_argument("--fixture", help=f"shipped datum: {', '.join(FIXTURES)}")
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized probes (kept for reproducibility)")

    p = sub.add_parser("newton", help="faces, J-tags, dual cones and weights")
    common(p, poly=True)
    p.add_argument("--q", help="primes for the non-degeneracy probe")
    p.set_defaults(func=cmd_newton)

    p = sub.add_parser("nondeg", help="per-face non-degeneracy statuses")
    common(p, poly=True)
    p.add_argument("--q", help="primes for the probe")
    p.set_defaults(func=cmd_nondeg)

    p = sub.add_parser("zeta", help="motivic zeta function of a resolution datum")
    common(p, datum=True)
    p.add_argument("--which", default="0", help="0-based function index, or F for the sum")
    p.add_argument("--order", type=int, help="print coefficients up to T^N")
    p.add_argument("--q", help="field sizes for point counts of the coefficients")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("truncated", help="cone-truncated zeta function and nearby class")
    common(p, datum=True)
    p.add_argument("--vars", help="names of the cone coordinates")
    p.add_argument("--cone", help='cone literal, e.g. "2a=3b; a>0; b>0" (default: open orthant)')
    p.add_argument("--ell", help='positive linear form, e.g. "2a+3b"')
    p.add_argument("--restrict", action="store_true", help="keep only strata over the base point")
    p.set_defaults(func=cmd_truncated)

    p = sub.add_parser("nearby", help="nearby-cycle class of P(f) by the face decomposition")
    common(p, poly=True, datum=True)
    p.add_argument("--order", type=int, help="tabulate Lefschetz numbers at least this far")
    p.set_defaults(func=cmd_nearby)

    p = sub.add_parser("jets", help="brute-force jet-space counts over F_q")
    common(p, poly=True)
    p.add_argument("--order", type=int, help="contact order n")
    p.add_argument("--q", help="primes, e.g. 2,3,5")
    p.set_defaults(func=cmd_jets)

    p = sub.add_parser("compare", help="run the cross-check identities for a datum")
    common(p, datum=True)
    p.add_argument("--order", type=int, help="largest jet order to count (default 2)")
    p.add_argument("--q", help="primes for the counting identity (default 2,3)")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except (RefusedComputation, GuardExceeded) as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_REFUSED
    except (ParseError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
