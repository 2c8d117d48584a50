"""Exact construction and verification of linear extension operators for
Baire-one and first-Borel-class functions on ambiguous subsets of the line."""

from .realset import Interval, RealSet
from .roots import Poly
from .pwfunc import PiecewiseFunc
from .retraction import Retraction, build_retraction, default_g
from .extend import OperatorKind, constant_extend, phi_star, verify_operator
from .notation import parse_piecewise, parse_poly, parse_set

__all__ = [
    "Interval",
    "RealSet",
    "Poly",
    "PiecewiseFunc",
    "Retraction",
    "build_retraction",
    "default_g",
    "OperatorKind",
    "phi_star",
    "constant_extend",
    "verify_operator",
    "parse_set",
    "parse_poly",
    "parse_piecewise",
]

__version__ = "0.1.0"
