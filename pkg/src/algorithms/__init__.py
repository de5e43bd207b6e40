"""
Risk-aware combinatorial semi-bandit algorithms and the naive baseline.
"""
from src.algorithms.base import BanditAlgorithm, plan_init_phase
from src.algorithms.cucb_g import (
    CvarCUCBG,
    GaussianCUCBState,
    gaussian_mean_ucb,
    gaussian_variance_lcb,
    select_cucb_g,
)
from src.algorithms.naive import NaiveState, NaiveSuperArmUCB, select_naive
from src.algorithms.registry import ALGORITHMS, build_algorithm, get_algorithm_info
from src.algorithms.sdcb import (
    CvarSDCB,
    DiscretizedCvarSDCB,
    SDCBState,
    sdcb_dominant_cdf,
    select_dsdcb,
    select_sdcb,
)

__all__ = [
    "ALGORITHMS",
    "BanditAlgorithm",
    "CvarCUCBG",
    "CvarSDCB",
    "DiscretizedCvarSDCB",
    "GaussianCUCBState",
    "NaiveState",
    "NaiveSuperArmUCB",
    "SDCBState",
    "build_algorithm",
    "gaussian_mean_ucb",
    "gaussian_variance_lcb",
    "get_algorithm_info",
    "plan_init_phase",
    "sdcb_dominant_cdf",
    "select_cucb_g",
    "select_dsdcb",
    "select_naive",
    "select_sdcb",
]
