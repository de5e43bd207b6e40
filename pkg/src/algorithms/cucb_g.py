"""
CVaR-CUCB-G: optimistic CVaR indices for Gaussian arms.

Each arm gets an upper confidence bound on its mean and a lower confidence
bound on its variance (clamped at N^2); a super arm's index is the Gaussian
CVaR built from the summed bounds.
"""
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from src.algorithms.base import BanditAlgorithm, Rewards, clamped_log, plan_init_phase, reward_items
from src.dist.gaussian import gaussian_tail_factor
from src.models.config import RoundCounter
from src.models.environment import ActionSet, SuperArm
from src.models.results import SelectionDecision
from src.utils.errors import UnpulledArmError, VarianceUndefinedError


def cucb_mean_radius(count: int, log_t: float, bound_m: float, max_size: int) -> float:
    """2M * sqrt((L+1) log(t-1) / m)."""
    return 2.0 * bound_m * math.sqrt((max_size + 1) * log_t / count)


def cucb_variance_width(count: int, log_t: float, bound_m: float, max_size: int) -> float:
    """D = M^2 * sqrt(2(L+1) log / (m-1) + 4(L+1)^2 log^2 / (m-1)^2)."""
    dof = count - 1
    l1 = max_size + 1
    return bound_m ** 2 * math.sqrt(2.0 * l1 * log_t / dof + 4.0 * l1 ** 2 * log_t ** 2 / dof ** 2)


@dataclass
class GaussianCUCBState:
    """Running mean and squared-deviation sum per arm, plus the round counter"""
    num_arms: int
    bound_m: float
    bound_n: float
    max_size: int
    alpha: float
    round_counter: RoundCounter = RoundCounter.PER_ALGORITHM
    t: int = 1
    counts: np.ndarray = field(init=False)
    means: np.ndarray = field(init=False)
    sq_dev: np.ndarray = field(init=False)

    def __post_init__(self):
        self.counts = np.zeros(self.num_arms, dtype=np.int64)
        self.means = np.zeros(self.num_arms)
        self.sq_dev = np.zeros(self.num_arms)

    def log_term(self) -> float:
        if self.round_counter == RoundCounter.UNIFIED:
            return clamped_log(self.t)
        return clamped_log(self.t - 1)

    def sample_variance(self, arm_id: int) -> float:
        n = int(self.counts[arm_id])
        if n < 2:
            raise VarianceUndefinedError(arm_id, n)
        return float(self.sq_dev[arm_id] / (n - 1))

    def update(self, super_arm: SuperArm, rewards: Rewards) -> "GaussianCUCBState":
        """One-pass (Welford) mean / squared-deviation update; advances t once."""
        for arm_id, x in reward_items(super_arm, rewards):
            self.counts[arm_id] += 1
            delta = x - self.means[arm_id]
            self.means[arm_id] += delta / self.counts[arm_id]
            self.sq_dev[arm_id] += delta * (x - self.means[arm_id])
        self.t += 1
        return self


def gaussian_mean_ucb(state: GaussianCUCBState, arm_id: int) -> float:
    """mu_hat + 2M sqrt((L+1) log(t-1) / m)."""
    count = int(state.counts[arm_id])
    if count == 0:
        raise UnpulledArmError(arm_id)
    return float(state.means[arm_id]) + cucb_mean_radius(count, state.log_term(), state.bound_m, state.max_size)


def gaussian_variance_lcb(state: GaussianCUCBState, arm_id: int) -> float:
    """max(s_hat^2 - D, N^2)."""
    s2 = state.sample_variance(arm_id)
    width = cucb_variance_width(int(state.counts[arm_id]), state.log_term(), state.bound_m, state.max_size)
    return max(s2 - width, state.bound_n ** 2)


def select_cucb_g(state: GaussianCUCBState, action_set: ActionSet) -> SelectionDecision:
    """
    Index every super arm by sum(mu_tilde) - sqrt(sum(s_tilde^2)) * phi(Phi^-1(alpha)) / alpha
    and pick the largest, ties to the earliest super arm.
    """
    mu_tilde = np.array([gaussian_mean_ucb(state, i) for i in range(state.num_arms)])
    s2_tilde = np.array([gaussian_variance_lcb(state, i) for i in range(state.num_arms)])
    membership = action_set.membership
    indices = membership @ mu_tilde - np.sqrt(membership @ s2_tilde) * gaussian_tail_factor(state.alpha)
    return SelectionDecision.from_indices(indices)


class CvarCUCBG(BanditAlgorithm):
    """CVaR-CUCB-G policy"""

    name = "cucb-g"

    def __init__(self, action_set: ActionSet, alpha: float, bound_m: float, bound_n: float,
                 round_counter: RoundCounter = RoundCounter.PER_ALGORITHM):
        super().__init__(action_set, alpha)
        self.state = GaussianCUCBState(
            num_arms=action_set.num_arms,
            bound_m=bound_m,
            bound_n=bound_n,
            max_size=action_set.max_size,
            alpha=alpha,
            round_counter=round_counter,
        )

    def init_plan(self) -> List[int]:
        return self._positions(plan_init_phase(self.action_set, 2))

    def select(self) -> SelectionDecision:
        return select_cucb_g(self.state, self.action_set)

    def update(self, position: int, rewards: Rewards) -> None:
        self.state.update(self.action_set[position], rewards)
