"""
CVaR-SDCB and its discretized variant D-CVaR-SDCB for rewards in [0, 1].

Every round each arm's empirical CDF is lowered by a DKW-style radius to a
stochastically dominant law. Super-arm laws are the convolutions of these,
and the index of a super arm is their CVaR. The discretized variant first
rounds every arm law up to an epsilon grid so convolutions stay small.
"""
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

from src.algorithms.base import BanditAlgorithm, Rewards, clamped_log, plan_init_phase, reward_items
from src.dist import convolve_many, cvar_discrete, discretize_up, dominant_shift
from src.dist.cvar import empirical_from_counts
from src.models.distribution import DiscreteDistribution
from src.models.environment import ActionSet, SuperArm
from src.models.results import SelectionDecision
from src.utils.errors import UnpulledArmError


def dkw_radius(count: int, log_t: float) -> float:
    """C = sqrt(3 log t / (2 T_i))."""
    return math.sqrt(3.0 * log_t / (2.0 * count))


def default_epsilon(alpha: float, max_size: int, horizon: int) -> float:
    """epsilon = alpha / ((L + 1) T)."""
    return alpha / ((max_size + 1) * horizon)


@dataclass
class SDCBState:
    """Per-arm sample multisets (value -> multiplicity) and the round counter"""
    num_arms: int
    alpha: float
    epsilon: Optional[float] = None
    upper_bound: float = 1.0
    support_cap: Optional[int] = None
    t: int = 1
    counts: np.ndarray = field(init=False)
    samples: List[Counter] = field(init=False)
    _empirical: Dict[int, DiscreteDistribution] = field(init=False, default_factory=dict, repr=False)

    def __post_init__(self):
        self.counts = np.zeros(self.num_arms, dtype=np.int64)
        self.samples = [Counter() for _ in range(self.num_arms)]

    def log_term(self) -> float:
        return clamped_log(self.t)

    def sorted_samples(self, arm_id: int) -> np.ndarray:
        """The arm's sample multiset, sorted."""
        values = sorted(self.samples[arm_id])
        return np.repeat(values, [self.samples[arm_id][v] for v in values])

    def empirical(self, arm_id: int) -> DiscreteDistribution:
        dist = self._empirical.get(arm_id)
        if dist is None:
            if self.counts[arm_id] == 0:
                raise UnpulledArmError(arm_id)
            bag = self.samples[arm_id]
            values = np.array(sorted(bag), dtype=float)
            dist = empirical_from_counts(values, np.array([bag[v] for v in values], dtype=float))
            self._empirical[arm_id] = dist
        return dist

    def update(self, super_arm: SuperArm, rewards: Rewards) -> "SDCBState":
        for arm_id, x in reward_items(super_arm, rewards):
            self.samples[arm_id][x] += 1
            self.counts[arm_id] += 1
            self._empirical.pop(arm_id, None)
        self.t += 1
        return self


def sdcb_dominant_cdf(state: SDCBState, arm_id: int) -> DiscreteDistribution:
    """The arm's empirical law shifted down by the DKW radius (mass moved to the upper bound)."""
    count = int(state.counts[arm_id])
    if count == 0:
        raise UnpulledArmError(arm_id)
    return dominant_shift(state.empirical(arm_id), dkw_radius(count, state.log_term()), state.upper_bound)


def sdcb_indices(state: SDCBState, action_set: ActionSet,
                 epsilon: Optional[float] = None) -> Tuple[np.ndarray, Tuple[int, ...]]:
    """
    CVaR of the convolved dominant laws for every super arm.

    Args:
        state: Shared sample history
        action_set: Super arms to index
        epsilon: Grid step; when set every arm law is rounded up before convolving

    Returns:
        (indices, support sizes of the convolved laws)
    """
    arm_laws: Dict[int, DiscreteDistribution] = {}
    for arm_id in sorted(action_set.covered_arms()):
        law = sdcb_dominant_cdf(state, arm_id)
        arm_laws[arm_id] = law if epsilon is None else discretize_up(law, epsilon)

    indices = np.empty(len(action_set))
    supports = []
    for pos, super_arm in enumerate(action_set.super_arms):
        combined = convolve_many([arm_laws[i] for i in super_arm.arm_ids], cap=state.support_cap)
        indices[pos] = cvar_discrete(combined, state.alpha)
        supports.append(combined.size)
    return indices, tuple(supports)


def select_sdcb(state: SDCBState, action_set: ActionSet) -> SelectionDecision:
    """Pick the super arm whose dominant law has the best CVaR."""
    indices, supports = sdcb_indices(state, action_set)
    return SelectionDecision.from_indices(indices, supports)


def select_dsdcb(state: SDCBState, action_set: ActionSet) -> SelectionDecision:
    """As select_sdcb with every arm law rounded up to the state's epsilon grid first."""
    if state.epsilon is None:
        raise ValueError("discretized selection needs an epsilon")
    indices, supports = sdcb_indices(state, action_set, epsilon=state.epsilon)
    return SelectionDecision.from_indices(indices, supports)


class CvarSDCB(BanditAlgorithm):
    """CVaR-SDCB policy"""

    name = "sdcb"

    def __init__(self, action_set: ActionSet, alpha: float,
                 support_cap: Optional[int] = None,
                 epsilon: Optional[float] = None):
        super().__init__(action_set, alpha)
        self.state = SDCBState(
            num_arms=action_set.num_arms,
            alpha=alpha,
            epsilon=epsilon,
            support_cap=support_cap,
        )

    def init_plan(self) -> List[int]:
        return self._positions(plan_init_phase(self.action_set, 1))

    def select(self) -> SelectionDecision:
        return select_sdcb(self.state, self.action_set)

    def update(self, position: int, rewards: Rewards) -> None:
        self.state.update(self.action_set[position], rewards)


class DiscretizedCvarSDCB(CvarSDCB):
    """D-CVaR-SDCB policy; epsilon defaults to alpha / ((L+1) T)"""

    name = "d-sdcb"

    def __init__(self, action_set: ActionSet, alpha: float, horizon: int,
                 epsilon: Optional[float] = None,
                 support_cap: Optional[int] = None):
        if epsilon is None:
            epsilon = default_epsilon(alpha, action_set.max_size, horizon)
        super().__init__(action_set, alpha, support_cap=support_cap, epsilon=epsilon)

    @property
    def epsilon(self) -> float:
        return self.state.epsilon

    def select(self) -> SelectionDecision:
        return select_dsdcb(self.state, self.action_set)
