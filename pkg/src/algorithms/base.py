"""
Shared pieces of the bandit algorithms: the policy interface, the
initialization plan and reward bookkeeping.
"""
import math
from abc import ABC, abstractmethod
from typing import ClassVar, Iterable, List, Mapping, Sequence, Tuple, Union

import numpy as np

from src.models.environment import ActionSet, SuperArm
from src.models.results import SelectionDecision
from src.utils.errors import ActionSetError

Rewards = Union[Mapping[int, float], Iterable[Tuple[int, float]]]


def clamped_log(x: float) -> float:
    """max(log x, 0); zero for x <= 1."""
    return math.log(x) if x > 1 else 0.0


def reward_items(super_arm: SuperArm, rewards: Rewards) -> List[Tuple[int, float]]:
    """
    Normalize semi-bandit feedback and check it matches the super arm.

    Raises:
        ActionSetError: for a reward on an arm outside the super arm, or a missing arm
    """
    items = list(rewards.items()) if isinstance(rewards, Mapping) else list(rewards)
    members = set(super_arm.arm_ids)
    seen = set()
    for arm_id, _ in items:
        if arm_id not in members:
            raise ActionSetError(f"reward for arm {arm_id} which is not in super arm {super_arm}")
        if arm_id in seen:
            raise ActionSetError(f"two rewards for arm {arm_id}")
        seen.add(arm_id)
    if seen != members:
        raise ActionSetError(f"missing rewards for arms {sorted(members - seen)} of super arm {super_arm}")
    return [(int(i), float(r)) for i, r in items]


def plan_init_phase(action_set: ActionSet, required_pulls_per_arm: int) -> List[SuperArm]:
    """
    Greedy cover: repeatedly play the super arm holding the most arms that
    still need samples, until every arm has `required_pulls_per_arm`.

    Each super arm is picked at most `required_pulls_per_arm` times, so the
    plan has at most required * |A| entries. Ties go to the earliest super arm.

    Raises:
        ActionSetError: if some arm is in no super arm
    """
    if required_pulls_per_arm not in (1, 2):
        raise ValueError(f"required pulls must be 1 or 2, got {required_pulls_per_arm}")
    missing = set(range(action_set.num_arms)) - action_set.covered_arms()
    if missing:
        raise ActionSetError(f"arms {sorted(missing)} cannot be covered by any super arm")

    membership = action_set.membership
    counts = np.zeros(action_set.num_arms, dtype=int)
    plan: List[SuperArm] = []
    while np.any(counts < required_pulls_per_arm):
        needy = (counts < required_pulls_per_arm).astype(float)
        coverage = membership @ needy
        pos = int(np.argmax(coverage))
        plan.append(action_set[pos])
        counts += membership[pos].astype(int)
    return plan


class BanditAlgorithm(ABC):
    """
    A policy over an action set: an init plan, then select/update rounds.

    Subclasses own their state exclusively; select() never mutates it.
    """

    name: ClassVar[str]

    def __init__(self, action_set: ActionSet, alpha: float):
        self.action_set = action_set
        self.alpha = alpha

    @abstractmethod
    def init_plan(self) -> List[int]:
        """Positions of the super arms to play before the first selection."""

    @abstractmethod
    def select(self) -> SelectionDecision:
        """Pick the super arm for the current round."""

    @abstractmethod
    def update(self, position: int, rewards: Rewards) -> None:
        """Feed back the per-arm rewards of the super arm just played."""

    def _positions(self, super_arms: Sequence[SuperArm]) -> List[int]:
        return [self.action_set.index_of(arm) for arm in super_arms]
