"""
Unit tests for the initialization plan and reward bookkeeping helpers.
"""
import itertools

import numpy as np
import pytest

from src.algorithms.base import clamped_log, plan_init_phase, reward_items
from src.models.environment import ActionSet, SuperArm
from src.utils.errors import ActionSetError

pytestmark = pytest.mark.unit


def ids(plan):
    return [list(arm.arm_ids) for arm in plan]


def test_chain_needs_both():
    action_set = ActionSet.from_lists([[0, 1], [1, 2]], num_arms=3)
    assert ids(plan_init_phase(action_set, 1)) == [[0, 1], [1, 2]]


def test_single_super_arm_twice():
    action_set = ActionSet.from_lists([[0, 1, 2]], num_arms=3)
    assert ids(plan_init_phase(action_set, 2)) == [[0, 1, 2], [0, 1, 2]]


def test_uncoverable_arm():
    action_set = ActionSet.from_lists([[0, 1]], num_arms=3)
    with pytest.raises(ActionSetError):
        plan_init_phase(action_set, 1)


@pytest.mark.parametrize("required", [0, 3])
def test_required_pulls_range(required):
    with pytest.raises(ValueError):
        plan_init_phase(ActionSet.from_lists([[0]], num_arms=1), required)


@pytest.mark.parametrize("seed", range(10))
@pytest.mark.parametrize("required", [1, 2])
def test_random_action_sets_are_covered(seed, required):
    rng = np.random.default_rng(seed)
    k = int(rng.integers(3, 8))
    lists = [sorted(rng.choice(k, size=int(rng.integers(1, 4)), replace=False).tolist()) for _ in range(6)]
    lists += [[i] for i in range(k) if not any(i in a for a in lists)]
    lists = [list(a) for a in dict.fromkeys(tuple(a) for a in lists)]
    action_set = ActionSet.from_lists(lists, num_arms=k)

    plan = plan_init_phase(action_set, required)
    counts = np.zeros(k, dtype=int)
    for arm in plan:
        counts[list(arm.arm_ids)] += 1
    assert np.all(counts >= required)
    assert len(plan) <= required * len(action_set)


def test_plan_on_pairs_covers_with_few_rounds():
    action_set = ActionSet.from_lists([list(p) for p in itertools.combinations(range(6), 2)], num_arms=6)
    assert len(plan_init_phase(action_set, 1)) == 3


def test_reward_items_accepts_mapping_and_pairs():
    arm = SuperArm.of(0, 2)
    assert reward_items(arm, {0: 1.0, 2: 0.5}) == [(0, 1.0), (2, 0.5)]
    assert reward_items(arm, [(2, 0.5), (0, 1.0)]) == [(2, 0.5), (0, 1.0)]


@pytest.mark.parametrize("rewards", [
    {0: 1.0, 1: 0.5},
    {0: 1.0},
    [(0, 1.0), (0, 1.0), (2, 0.0)],
])
def test_reward_items_rejects_mismatch(rewards):
    with pytest.raises(ActionSetError):
        reward_items(SuperArm.of(0, 2), rewards)


def test_clamped_log():
    assert clamped_log(0) == 0.0
    assert clamped_log(1) == 0.0
    assert clamped_log(np.e ** 2) == pytest.approx(2.0)
