"""
Common test fixtures and configuration for pytest.
"""
import itertools

import pytest
from loguru import logger

from src.models.distribution import DiscreteDistribution, GaussianParams
from src.models.environment import ActionSet, EnvironmentInstance
from src.utils.settings import get_settings


@pytest.fixture(autouse=True)
def isolated_settings(monkeypatch):
    """Keep tests from writing the rotating log file or reading a developer .env."""
    monkeypatch.setenv("CVARBANDIT_LOG_FILE", "")
    monkeypatch.setenv("CVARBANDIT_LOG_LEVEL", "WARNING")
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()
    logger.remove()


def bernoulli(p: float) -> DiscreteDistribution:
    atoms = [(0.0, 1.0 - p), (1.0, p)]
    return DiscreteDistribution.from_atoms([(v, m) for v, m in atoms if m > 0])


@pytest.fixture
def coin():
    """Bernoulli(0.5)"""
    return bernoulli(0.5)


@pytest.fixture
def bernoulli_pairs_env():
    """Six Bernoulli arms, every pair a super arm"""
    means = [0.9, 0.8, 0.7, 0.3, 0.2, 0.1]
    pairs = [list(p) for p in itertools.combinations(range(6), 2)]
    return EnvironmentInstance.bounded([bernoulli(p) for p in means], ActionSet.from_lists(pairs, num_arms=6))


@pytest.fixture
def gaussian_pairs_env():
    """Five Gaussian arms with sigma 0.5, every pair a super arm, N=0.25 and M=1"""
    means = [1.0, 0.9, 0.8, 0.5, 0.4]
    pairs = [list(p) for p in itertools.combinations(range(5), 2)]
    arms = [GaussianParams(mean=m, std_dev=0.5) for m in means]
    return EnvironmentInstance.gaussian(arms, ActionSet.from_lists(pairs, num_arms=5), 0.25, 1.0)


@pytest.fixture
def small_bounded_env():
    """Three finite-support arms with two overlapping super arms"""
    arms = [
        DiscreteDistribution.from_atoms([(0.2, 0.5), (0.8, 0.5)]),
        DiscreteDistribution.from_atoms([(0.0, 0.1), (0.5, 0.4), (1.0, 0.5)]),
        DiscreteDistribution.from_atoms([(0.3, 0.3), (0.6, 0.7)]),
    ]
    return EnvironmentInstance.bounded(arms, ActionSet.from_lists([[0, 1], [1, 2]], num_arms=3))


def bounded_config_data(**changes):
    """A small valid bounded config document, with top-level keys replaced."""
    data = {
        "environment": {
            "kind": "bounded",
            "arms": [{"bernoulli": 0.8}, {"bernoulli": 0.5}, {"atoms": [[0.2, 0.5], [0.9, 0.5]]}],
            "action_set": [[0, 1], [1, 2], [0, 2]],
        },
        "alpha": 0.3,
        "horizon": 60,
        "seeds": {"count": 2, "master_seed": 11},
        "algorithms": [{"name": "sdcb"}, {"name": "naive"}],
        "output": {"directory": "results"},
        "workers": 1,
        "thinning": 1,
    }
    data.update(changes)
    return data


def gaussian_config_data(**changes):
    data = {
        "environment": {
            "kind": "gaussian",
            "arms": [{"mean": 1.0, "std_dev": 0.5}, {"mean": 0.6, "std_dev": 0.4}],
            "action_set": [[0], [1]],
            "variance_bounds": {"N": 0.25, "M": 1.0},
        },
        "alpha": 0.25,
        "horizon": 50,
        "seeds": {"count": 1, "master_seed": 0},
        "algorithms": [{"name": "cucb-g"}],
    }
    data.update(changes)
    return data
