"""Sidon sets (Golomb rulers): constructions, search, window statistics and exact bounds."""

from .core import (
    BudgetExceeded,
    NotSidon,
    SidonError,
    SidonSet,
    diff_mask,
    exhaustive_optimal,
    greedy_sidon,
    is_modular_sidon,
    is_sidon,
    normalize,
)
from .constructions import ModularSidonSet, bose, construct, ruzsa, singer
from .windows import et_identity_check, s_statistic, u_partition, trim, v_statistic, window_profile
from .bounds import REFERENCE_PARAMS, BfrParams, combined_bound, delta_formula, theorem1_bound
from .search import SearchConfig, run_search
from .optimize import OptimizerConfig, anneal

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "NotSidon",
    "SidonError",
    "SidonSet",
    "diff_mask",
    "exhaustive_optimal",
    "greedy_sidon",
    "is_modular_sidon",
    "is_sidon",
    "normalize",
    "ModularSidonSet",
    "bose",
    "construct",
    "ruzsa",
    "singer",
    "et_identity_check",
    "s_statistic",
    "u_partition",
    "trim",
    "v_statistic",
    "window_profile",
    "REFERENCE_PARAMS",
    "BfrParams",
    "combined_bound",
    "delta_formula",
    "theorem1_bound",
    "SearchConfig",
    "run_search",
    "OptimizerConfig",
    "anneal",
]
