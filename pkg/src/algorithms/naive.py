"""
Baseline that ignores shared arms: every super arm is a single arm whose
reward is the total of its constituents.

Index = CVaR of the super arm's empirical total-reward law, shifted by the
same DKW-style radius with upper bound L.
"""
from collections import Counter
from dataclasses import dataclass, field
from typing import List

import numpy as np

from src.algorithms.base import BanditAlgorithm, Rewards, clamped_log, reward_items
from src.algorithms.sdcb import dkw_radius
from src.dist import cvar_discrete, dominant_shift
from src.dist.cvar import empirical_from_counts
from src.models.environment import ActionSet, SuperArm
from src.models.results import SelectionDecision
from src.utils.errors import ActionSetError


@dataclass
class NaiveState:
    """Total-reward multisets per super arm"""
    action_set: ActionSet
    alpha: float
    t: int = 1
    plays: np.ndarray = field(init=False)
    totals: List[Counter] = field(init=False)

    def __post_init__(self):
        self.plays = np.zeros(len(self.action_set), dtype=np.int64)
        self.totals = [Counter() for _ in range(len(self.action_set))]

    @property
    def upper_bound(self) -> float:
        return float(self.action_set.max_size)

    def log_term(self) -> float:
        return clamped_log(self.t)

    def update(self, super_arm: SuperArm, rewards: Rewards) -> "NaiveState":
        items = reward_items(super_arm, rewards)
        pos = self.action_set.index_of(super_arm)
        self.totals[pos][sum(r for _, r in items)] += 1
        self.plays[pos] += 1
        self.t += 1
        return self


def select_naive(state: NaiveState, action_set: ActionSet) -> SelectionDecision:
    """Pick the super arm with the best CVaR of its shifted total-reward law."""
    indices = np.empty(len(action_set))
    log_t = state.log_term()
    for pos in range(len(action_set)):
        n = int(state.plays[pos])
        if n == 0:
            raise ActionSetError(f"unplayed super arm {action_set[pos]}")
        bag = state.totals[pos]
        values = np.array(sorted(bag), dtype=float)
        empirical = empirical_from_counts(values, np.array([bag[v] for v in values], dtype=float))
        shifted = dominant_shift(empirical, dkw_radius(n, log_t), state.upper_bound)
        indices[pos] = cvar_discrete(shifted, state.alpha)
    return SelectionDecision.from_indices(indices)


class NaiveSuperArmUCB(BanditAlgorithm):
    """Treat-each-super-arm-as-an-arm baseline"""

    name = "naive"

    def __init__(self, action_set: ActionSet, alpha: float):
        super().__init__(action_set, alpha)
        self.state = NaiveState(action_set=action_set, alpha=alpha)

    def init_plan(self) -> List[int]:
        return list(range(len(self.action_set)))

    def select(self) -> SelectionDecision:
        return select_naive(self.state, self.action_set)

    def update(self, position: int, rewards: Rewards) -> None:
        self.state.update(self.action_set[position], rewards)
