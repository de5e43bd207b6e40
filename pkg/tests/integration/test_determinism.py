"""
Trace files must not depend on the worker count or on the run.
"""
from pathlib import Path

import pytest

from src.cli.config_io import parse_and_validate, validate_config_data
from src.cli.writers import write_trace
from src.harness.runner import run_experiment
from tests.conftest import bounded_config_data, gaussian_config_data

pytestmark = pytest.mark.integration

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def trace_bytes(config, workers, path):
    outcome = run_experiment(config, workers=workers, progress=False, log_level="WARNING")
    write_trace(outcome.traces, path)
    return path.read_bytes()


@pytest.mark.parametrize("data", [
    bounded_config_data(algorithms=[{"name": "sdcb"}, {"name": "d-sdcb"}, {"name": "naive"}],
                        seeds={"count": 4, "master_seed": 3}),
    gaussian_config_data(seeds={"count": 4, "master_seed": 3}),
], ids=["bounded", "gaussian"])
def test_small_config_independent_of_workers(tmp_path, data):
    config = validate_config_data(data)
    serial = trace_bytes(config, 1, tmp_path / "serial.csv")
    pooled = trace_bytes(config, 2, tmp_path / "pooled.csv")
    assert serial == pooled


@pytest.mark.slow
def test_bernoulli_fixture_independent_of_workers(tmp_path):
    config = parse_and_validate(CONFIGS / "bernoulli_pairs.json")
    serial = trace_bytes(config, 1, tmp_path / "serial.csv")
    pooled = trace_bytes(config, 4, tmp_path / "pooled.csv")
    assert serial == pooled
    assert trace_bytes(config, 4, tmp_path / "again.csv") == pooled
