"""Growth at infinity of polynomial maps via exact Macaulay resultants."""

__version__ = "0.1.0"

from .analysis import AnalysisReport, analyze, delta0, exponent_bounds, geometric_degree, mu_at_zero
from .macaulay import FormSystem, det_fraction_free, resultant, sylvester_oracle
from .pgcurve import LinearForm, certify_star, choose_G, pg_full, pg_slice
from .polyring import MultiPoly, PolyMap, homogenize, leading_form, parse_system

__all__ = [
    "AnalysisReport",
    "FormSystem",
    "LinearForm",
    "MultiPoly",
    "PolyMap",
    "analyze",
    "certify_star",
    "choose_G",
    "delta0",
    "det_fraction_free",
    "exponent_bounds",
    "geometric_degree",
    "homogenize",
    "leading_form",
    "mu_at_zero",
    "parse_system",
    "pg_full",
    "pg_slice",
    "resultant",
    "sylvester_oracle",
]
