"""Exact s-multiplicity invariants, lower bounds and lattice-count oracles."""

from .closed_forms import (
    BoundParams,
    best_lower_bound,
    es_parameter_power,
    es_quadric,
    es_regular_power,
    es_regular_power_limit,
    es_veronese,
    lower_bound_main,
    phi,
    small_s_bound,
)
from .exact import PiecewisePoly, QuadraticNumber, UniPoly, format_scalar, parse_scalar, qnum, quad_sign
from .hs import f_profile, find_peak, hs_lattice_count, hs_piecewise, hs_value

__version__ = "0.1.0"

__all__ = [
    "BoundParams",
    "PiecewisePoly",
    "QuadraticNumber",
    "UniPoly",
    "best_lower_bound",
    "es_parameter_power",
    "es_quadric",
    "es_regular_power",
    "es_regular_power_limit",
    "es_veronese",
    "f_profile",
    "find_peak",
    "format_scalar",
    "hs_lattice_count",
    "hs_piecewise",
    "hs_value",
    "lower_bound_main",
    "parse_scalar",
    "phi",
    "qnum",
    "quad_sign",
    "small_s_bound",
]
