"""
Registry of the available algorithms.

This module is the source of truth for algorithm names, the environment
kind each one runs on and the config fields it reads. The CLI and config
validation look algorithms up here instead of hardcoding names.
"""
from typing import Dict, List, Optional

from pydantic import BaseModel

from src.algorithms.base import BanditAlgorithm
from src.algorithms.cucb_g import CvarCUCBG
from src.algorithms.naive import NaiveSuperArmUCB
from src.algorithms.sdcb import CvarSDCB, DiscretizedCvarSDCB
from src.models.config import AlgorithmName, AlgorithmSpec, RoundCounter
from src.models.environment import EnvironmentInstance, EnvironmentKind


class AlgorithmInfo(BaseModel):
    """Information about a registered algorithm."""
    name: str
    title: str
    environment_kind: EnvironmentKind
    description: str
    required_fields: List[str]   # experiment config fields the algorithm reads
    overrides: List[str]         # keys accepted under "overrides"
    init_pulls_per_arm: Optional[int] = None  # None: every super arm once


COMMON_FIELDS = ["alpha", "horizon", "environment.arms", "environment.action_set"]

ALGORITHMS: Dict[str, AlgorithmInfo] = {
    AlgorithmName.CUCB_G.value: AlgorithmInfo(
        name=AlgorithmName.CUCB_G.value,
        title="CVaR-CUCB-G",
        environment_kind=EnvironmentKind.GAUSSIAN,
        description="Mean UCB and variance LCB per arm, Gaussian CVaR index per super arm",
        required_fields=COMMON_FIELDS + ["environment.variance_bounds.N", "environment.variance_bounds.M"],
        overrides=["bound_m", "bound_n", "round_counter"],
        init_pulls_per_arm=2,
    ),
    AlgorithmName.SDCB.value: AlgorithmInfo(
        name=AlgorithmName.SDCB.value,
        title="CVaR-SDCB",
        environment_kind=EnvironmentKind.BOUNDED,
        description="Stochastically dominant arm laws, exact super-arm convolution, CVaR index",
        required_fields=COMMON_FIELDS,
        overrides=["support_cap"],
        init_pulls_per_arm=1,
    ),
    AlgorithmName.D_SDCB.value: AlgorithmInfo(
        name=AlgorithmName.D_SDCB.value,
        title="D-CVaR-SDCB",
        environment_kind=EnvironmentKind.BOUNDED,
        description="CVaR-SDCB with arm laws rounded up to an epsilon grid before convolution",
        required_fields=COMMON_FIELDS,
        overrides=["epsilon", "support_cap"],
        init_pulls_per_arm=1,
    ),
    AlgorithmName.NAIVE.value: AlgorithmInfo(
        name=AlgorithmName.NAIVE.value,
        title="Naive super-arm baseline",
        environment_kind=EnvironmentKind.BOUNDED,
        description="Each super arm treated as an independent arm over its total reward",
        required_fields=COMMON_FIELDS,
        overrides=[],
    ),
}


def get_algorithm_info(name: str) -> Optional[AlgorithmInfo]:
    """Get information about an algorithm by its name."""
    return ALGORITHMS.get(name)


def get_algorithm_names() -> List[str]:
    return list(ALGORITHMS.keys())


def get_algorithms_for_kind(kind: EnvironmentKind) -> List[str]:
    """Names of the algorithms that run on a given environment kind."""
    return [name for name, info in ALGORITHMS.items() if info.environment_kind == kind]


def build_algorithm(spec: AlgorithmSpec, env: EnvironmentInstance, alpha: float, horizon: int) -> BanditAlgorithm:
    """
    Instantiate a fresh policy for one run.

    Args:
        spec: Name and overrides from the config
        env: Validated environment (supplies the action set and, for cucb-g, N and M)
        alpha: Risk level
        horizon: T, used for the default d-sdcb epsilon

    Returns:
        A policy with empty state
    """
    o = spec.overrides
    action_set = env.action_set
    if spec.name == AlgorithmName.CUCB_G:
        return CvarCUCBG(
            action_set, alpha,
            bound_m=o.bound_m if o.bound_m is not None else env.upper_std,
            bound_n=o.bound_n if o.bound_n is not None else env.lower_std,
            round_counter=o.round_counter or RoundCounter.PER_ALGORITHM,
        )
    if spec.name == AlgorithmName.SDCB:
        return CvarSDCB(action_set, alpha, support_cap=o.support_cap)
    if spec.name == AlgorithmName.D_SDCB:
        return DiscretizedCvarSDCB(action_set, alpha, horizon, epsilon=o.epsilon, support_cap=o.support_cap)
    return NaiveSuperArmUCB(action_set, alpha)
