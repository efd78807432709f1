"""Exact arithmetic layer: coefficient fields, polynomials, rational functions and Laurent values."""

from .fields import QQ, TRACKER, TRACKER_FIELD, depends_on_tracker, format_element, to_domain, to_fraction
from .laurent import LaurentValue, laurent_add, laurent_inv, laurent_mul
from .poly import Poly, poly_gcd
from .ratfunc import RatFunc, ratfunc_reduce

__all__ = [
    "QQ",
    "TRACKER",
    "TRACKER_FIELD",
    "LaurentValue",
    "Poly",
    "RatFunc",
    "depends_on_tracker",
    "format_element",
    "laurent_add",
    "laurent_inv",
    "laurent_mul",
    "poly_gcd",
    "ratfunc_reduce",
    "to_domain",
    "to_fraction",
]
