"""Exact arithmetic: polynomials, rational functions, series, expressions."""

from .expr import ExprError, parse
from .poly import Polynomial, T, U, VarId, X
from .ratfun import (
    RatFun,
    clears_h_product,
    h_product,
    has_nice_poles,
    homogeneity_weight,
    interval_form,
    residue_at_zero,
)
from .series import PowerSeries

__all__ = [
    "ExprError",
    "Polynomial",
    "PowerSeries",
    "RatFun",
    "T",
    "U",
    "VarId",
    "X",
    "clears_h_product",
    "h_product",
    "has_nice_poles",
    "homogeneity_weight",
    "interval_form",
    "parse",
    "residue_at_zero",
]
