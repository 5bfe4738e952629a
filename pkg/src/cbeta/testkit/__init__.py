"""Independent oracles and the registered verification grids."""

from .acceptance import ACCEPTANCE, SUITES, CheckResult, run_suite
from .lr import exact_det, lr_coefficient
from .naive import NaivePoly, naive_elementary, naive_monomial, naive_power_sum, oracle_jack
from .oracle import dyson_gamma, oracle_average

__all__ = [
    "ACCEPTANCE",
    "SUITES",
    "CheckResult",
    "NaivePoly",
    "dyson_gamma",
    "exact_det",
    "lr_coefficient",
    "naive_elementary",
    "naive_monomial",
    "naive_power_sum",
    "oracle_average",
    "oracle_jack",
    "run_suite",
]
