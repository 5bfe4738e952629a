"""Ratio averages of characteristic polynomials over the circular beta-ensemble,
computed exactly through Jack and super-Jack functions and checked against quadrature."""

__version__ = "0.1.0"

from .ensemble import AverageValue, EnsembleParams, QuadratureConfig
from .partition import AlphaParam, Partition
from .ratioavg import RatioQuery, TruncationPolicy, cross_check, evaluate
from .symfun import SymPoly

__all__ = [
    "AlphaParam",
    "AverageValue",
    "EnsembleParams",
    "Partition",
    "QuadratureConfig",
    "RatioQuery",
    "SymPoly",
    "TruncationPolicy",
    "cross_check",
    "evaluate",
]
