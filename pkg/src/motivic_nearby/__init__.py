"""Exact Newton-polyhedron combinatorics, motivic zeta functions and nearby-cycle classes."""

from .composer import FaceContribution, NearbyReport, nearby_open_part, nearby_report, nearby_total, psi_face_apply
from .cones import RelOpenCone, chi_compact, cone_lattice_series, parse_cone, preimage_cone
from .errors import DegenerateFaceError, GuardExceeded, InconsistencyError, ParseError, RefusedComputation
from .jets import jet_count, multi_jet_count
from .lpoly import LPoly
from .motring import (
    Atom,
    ClassExpr,
    chi_torus_hypersurface,
    count_points,
    euler_fiber,
    lambda_table,
    lefschetz_number,
    milnor_number,
    monodromy_zeta,
)
from .newton import NewtonPolyhedron, build_polyhedron, ell_value, face_of_covector, face_status, nondegeneracy_report
from .poly import SparsePoly, parse_polynomial, render
from .reszeta import (
    ResolutionDatum,
    acampo_lambda,
    coordinate_datum,
    load_datum,
    load_fixture,
    nearby_cycles,
    truncated_nearby,
    truncated_zeta,
    zeta_series,
)
from .srseries import SrSeries, coefficient_extract, limit_T_infinity, p_term

__all__ = [
    "Atom",
    "ClassExpr",
    "DegenerateFaceError",
    "FaceContribution",
    "GuardExceeded",
    "InconsistencyError",
    "LPoly",
    "NearbyReport",
    "NewtonPolyhedron",
    "ParseError",
    "RefusedComputation",
    "RelOpenCone",
    "ResolutionDatum",
    "SparsePoly",
    "SrSeries",
    "acampo_lambda",
    "build_polyhedron",
    "chi_compact",
    "chi_torus_hypersurface",
    "coefficient_extract",
    "cone_lattice_series",
    "coordinate_datum",
    "count_points",
    "ell_value",
    "euler_fiber",
    "face_of_covector",
    "face_status",
    "jet_count",
    "lambda_table",
    "lefschetz_number",
    "limit_T_infinity",
    "load_datum",
    "load_fixture",
    "milnor_number",
    "monodromy_zeta",
    "multi_jet_count",
    "nearby_cycles",
    "nearby_open_part",
    "nearby_report",
    "nearby_total",
    "nondegeneracy_report",
    "p_term",
    "parse_cone",
    "parse_polynomial",
    "preimage_cone",
    "psi_face_apply",
    "render",
    "truncated_nearby",
    "truncated_zeta",
    "zeta_series",
]
