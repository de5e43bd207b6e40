"""
Unit tests for environments: sampling, ground truth, gap tables and validation.
"""
import math

import numpy as np
import pytest

from src.bandits import ArmStreams, compute_gap_table, sample_super_arm, true_cvar, validate
from src.bandits.environment import true_cvar_estimate
from src.bandits.streams import keyed_generator
from src.dist import gaussian_cvar
from src.models.distribution import DiscreteDistribution, GaussianParams
from src.models.environment import ActionSet, BetaLaw, EnvironmentInstance, SuperArm
from src.oracles.reference import enumerate_super_arm_cvar
from src.utils.errors import ActionSetError
from tests.conftest import bernoulli

pytestmark = pytest.mark.unit


def point_env(*values):
    arms = [DiscreteDistribution.point_mass(v) for v in values]
    return EnvironmentInstance.bounded(arms, ActionSet.from_lists([list(range(len(values)))], len(values)))


class TestSuperArms:
    def test_super_arm_sorted(self):
        assert SuperArm.of(3, 1, 2).arm_ids == (1, 2, 3)

    @pytest.mark.parametrize("ids", [[], [1, 1], [-1, 2]])
    def test_invalid_super_arms(self, ids):
        with pytest.raises(ValueError):
            SuperArm(arm_ids=ids)

    def test_action_set_lookup(self):
        action_set = ActionSet.from_lists([[0, 1], [1, 2]], num_arms=3)
        assert action_set.index_of([2, 1]) == 1
        assert action_set.resolve(SuperArm.of(0, 1)) == 0
        assert action_set.max_size == 2
        assert action_set.membership.tolist() == [[1.0, 1.0, 0.0], [0.0, 1.0, 1.0]]
        with pytest.raises(ActionSetError):
            action_set.index_of([0, 2])
        with pytest.raises(ActionSetError):
            action_set.resolve(5)


class TestSampling:
    def test_point_mass_arm(self):
        env = point_env(0.7)
        streams = ArmStreams(0, 0)
        assert [sample_super_arm(env, 0, streams) for _ in range(3)] == [[(0, 0.7)]] * 3

    def test_gaussian_determinism(self, gaussian_pairs_env):
        def draw():
            streams = ArmStreams(123, 4)
            return [sample_super_arm(gaussian_pairs_env, pos % 10, streams) for pos in range(50)]
        assert draw() == draw()

    def test_streams_are_keyed_per_arm(self, gaussian_pairs_env):
        # arm 0's k-th reward does not depend on which partner it was played with
        a = ArmStreams(9, 0)
        b = ArmStreams(9, 0)
        first = [sample_super_arm(gaussian_pairs_env, [0, 1], a)[0] for _ in range(5)]
        second = [sample_super_arm(gaussian_pairs_env, [0, 4], b)[0] for _ in range(5)]
        assert first == second
        assert a.pulls(0) == 5

    def test_bernoulli_mean(self):
        env = EnvironmentInstance.bounded([bernoulli(0.4)], ActionSet.from_lists([[0]], 1))
        streams = ArmStreams(2, 0)
        draws = np.array([sample_super_arm(env, 0, streams)[0][1] for _ in range(100_000)])
        assert abs(draws.mean() - 0.4) <= 3 * math.sqrt(0.24 / 100_000)

    def test_unknown_super_arm(self, small_bounded_env):
        with pytest.raises(ActionSetError):
            sample_super_arm(small_bounded_env, [0, 2], ArmStreams(0, 0))

    def test_keyed_generator_reproducible(self):
        assert keyed_generator(1, 2, 3).random() == keyed_generator(1, 2, 3).random()
        assert keyed_generator(1, 2, 3).random() != keyed_generator(1, 2, 4).random()


class TestTrueCvar:
    def test_gaussian_sum(self):
        arms = [GaussianParams(mean=1.0, std_dev=1.0)] * 2
        env = EnvironmentInstance.gaussian(arms, ActionSet.from_lists([[0, 1]], 2), 0.5, 2.0)
        expected = gaussian_cvar(GaussianParams(mean=2.0, std_dev=math.sqrt(2.0)), 0.5)
        assert true_cvar(env, 0, 0.5) == pytest.approx(expected, abs=1e-12)

    def test_point_masses(self):
        env = point_env(0.3, 0.4)
        for alpha in (0.1, 0.5, 0.9):
            assert true_cvar(env, 0, alpha) == pytest.approx(0.7, abs=1e-12)

    def test_two_coins(self):
        env = EnvironmentInstance.bounded([bernoulli(0.5)] * 2, ActionSet.from_lists([[0, 1]], 2))
        assert true_cvar(env, [0, 1], 0.25) == 0.0

    def test_beta_arm_uses_monte_carlo(self, monkeypatch):
        monkeypatch.setenv("CVARBANDIT_MONTE_CARLO_SAMPLES", "20000")
        from src.utils.settings import get_settings
        get_settings.cache_clear()
        env = EnvironmentInstance.bounded([BetaLaw(2.0, 2.0)], ActionSet.from_lists([[0]], 1))
        value, se = true_cvar_estimate(env, 0, 0.5)
        assert se > 0
        # symmetric law: lower half mean of Beta(2,2) is 5/16
        assert abs(value - 5 / 16) <= 4 * se + 1e-3


class TestGapTable:
    def test_all_identical(self):
        env = EnvironmentInstance.bounded([bernoulli(0.5)] * 2, ActionSet.from_lists([[0], [1]], 2))
        table = compute_gap_table(env, 0.3)
        assert table.gaps == [0.0, 0.0]
        assert table.all_optimal
        assert table.delta_min is None
        assert table.optimal == [0, 1]

    def test_gaps_from_point_masses(self):
        arms = [DiscreteDistribution.point_mass(v) for v in (1.0, 0.8, 0.5)]
        env = EnvironmentInstance.bounded(arms, ActionSet.from_lists([[0], [1], [2]], 3))
        table = compute_gap_table(env, 0.3)
        assert table.gaps == pytest.approx([0.0, 0.2, 0.5])
        assert table.delta_min == pytest.approx(0.2)
        assert table.delta_max == pytest.approx(0.5)
        assert table.best == 0
        assert table.arms_in_suboptimal == [1, 2]
        assert table.arm_min_gap[0] is None
        assert table.arm_min_gap[2] == pytest.approx(0.5)

    def test_optimum_matches_enumeration(self, small_bounded_env):
        table = compute_gap_table(small_bounded_env, 0.2)
        oracle = [enumerate_super_arm_cvar([small_bounded_env.bounded_arms[i] for i in arm.arm_ids], 0.2)
                  for arm in small_bounded_env.action_set.super_arms]
        assert table.cvars == pytest.approx(oracle, abs=1e-9)
        assert table.best == int(np.argmax(oracle))

    def test_bernoulli_pairs_best_is_top_two(self, bernoulli_pairs_env):
        table = compute_gap_table(bernoulli_pairs_env, 0.3)
        assert bernoulli_pairs_env.action_set[table.best].arm_ids == (0, 1)
        assert table.delta_min > 0


class TestValidate:
    def test_well_formed(self, gaussian_pairs_env, bernoulli_pairs_env):
        assert validate(gaussian_pairs_env) == []
        assert validate(bernoulli_pairs_env) == []

    def test_variance_bound_not_strict(self):
        arms = [GaussianParams(mean=0.0, std_dev=1.0)]
        env = EnvironmentInstance.gaussian(arms, ActionSet.from_lists([[0]], 1), 0.5, 1.0)
        messages = [v.message for v in validate(env)]
        assert any("variance bound not strict" in m for m in messages)

    def test_empty_action_set(self):
        env = EnvironmentInstance.bounded([bernoulli(0.5)], ActionSet(super_arms=[], num_arms=1))
        messages = [v.message for v in validate(env)]
        assert "empty action set" in messages
        assert any("not in any super arm" in m for m in messages)

    def test_support_outside_unit_interval(self):
        env = EnvironmentInstance.bounded([DiscreteDistribution.point_mass(1.5)], ActionSet.from_lists([[0]], 1))
        assert [v.path for v in validate(env)] == ["arms[0]"]

    def test_arm_id_out_of_range(self):
        env = EnvironmentInstance.bounded([bernoulli(0.5)], ActionSet.from_lists([[0], [3]], 1))
        assert any("out of range" in v.message for v in validate(env))
