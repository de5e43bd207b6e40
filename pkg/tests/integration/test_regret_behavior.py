"""
Desk-scale regret behavior on the shipped fixtures.

These run the full bounded and Gaussian experiments (20 seeds each) and
take minutes; select them with `-m slow`.
"""
from pathlib import Path

import numpy as np
import pytest
from loguru import logger

from src.cli.config_io import parse_and_validate
from src.harness.paired import paired_index_comparison
from src.harness.runner import run_experiment

pytestmark = [pytest.mark.integration, pytest.mark.slow]

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


@pytest.fixture(scope="module")
def bernoulli_config():
    return parse_and_validate(CONFIGS / "bernoulli_pairs.json")


@pytest.fixture(scope="module")
def bernoulli_outcome(bernoulli_config):
    return run_experiment(bernoulli_config, workers=4, progress=False, log_level="WARNING")


@pytest.fixture(scope="module")
def gaussian_outcome():
    config = parse_and_validate(CONFIGS / "gaussian_pairs.json")
    return run_experiment(config, workers=4, progress=False, log_level="WARNING")


def test_bernoulli_fixture_has_unique_optimum(bernoulli_outcome):
    gaps = bernoulli_outcome.gap_table
    assert gaps.optimal == [0]
    assert gaps.delta_min is not None and gaps.delta_min > 0


def test_sdcb_regret_flattens(bernoulli_outcome):
    agg = bernoulli_outcome.aggregate.algorithms["sdcb"]
    assert agg.runs == 20
    assert agg.mean_regret_second_half < 0.5 * agg.mean_regret_first_half
    assert agg.final_decile_optimal_rate >= 0.8


def test_cucb_g_suboptimal_selections_drop(gaussian_outcome):
    traces = [t for t in gaussian_outcome.traces if t.algorithm == "cucb-g"]
    assert len(traces) == 20
    improving = sum(t.suboptimal_second_half < t.suboptimal_first_half for t in traces)
    assert improving >= 18


def test_dsdcb_indices_track_sdcb(bernoulli_config):
    env = bernoulli_config.environment.build()
    comparison = paired_index_comparison(env, bernoulli_config.horizon, bernoulli_config.alpha,
                                         seed=bernoulli_config.seeds.master_seed)
    assert 0 < comparison.rounds < bernoulli_config.horizon
    assert len(comparison.max_abs_difference) == comparison.rounds
    assert comparison.within_bound, (comparison.min_difference, comparison.max_difference, comparison.bound)
    assert comparison.disagreement_rate < 0.01


def test_sdcb_beats_naive(bernoulli_outcome):
    sdcb = bernoulli_outcome.aggregate.algorithms["sdcb"]
    naive = bernoulli_outcome.aggregate.algorithms["naive"]
    for run_id, (ours, theirs) in enumerate(zip(sdcb.final_regrets, naive.final_regrets)):
        logger.info(f"seed {run_id}: sdcb {ours:.3f} naive {theirs:.3f}")
    assert np.mean(sdcb.final_regrets) <= np.mean(naive.final_regrets)


def test_dsdcb_regret_flattens(bernoulli_outcome):
    agg = bernoulli_outcome.aggregate.algorithms["d-sdcb"]
    assert agg.mean_regret_second_half < 0.5 * agg.mean_regret_first_half
