"""
Unit tests for config models, the algorithm registry and config validation.
"""
import json

import pytest

from src.algorithms import ALGORITHMS, build_algorithm, get_algorithm_info
from src.algorithms.registry import get_algorithm_names, get_algorithms_for_kind
from src.cli.config_io import parse_and_validate, validate_config_data
from src.models.config import AlgorithmSpec, ExperimentConfig, RoundCounter
from src.models.environment import EnvironmentKind
from src.utils.errors import ConfigError
from src.utils.settings import get_settings
from tests.conftest import bounded_config_data, gaussian_config_data

pytestmark = pytest.mark.unit


def violations_of(data, **kwargs):
    with pytest.raises(ConfigError) as info:
        validate_config_data(data, **kwargs)
    return info.value.violations


class TestRegistry:
    def test_four_algorithms(self):
        assert get_algorithm_names() == ["cucb-g", "sdcb", "d-sdcb", "naive"]
        assert set(ALGORITHMS) == {"cucb-g", "sdcb", "d-sdcb", "naive"}

    def test_kinds(self):
        assert get_algorithms_for_kind(EnvironmentKind.GAUSSIAN) == ["cucb-g"]
        assert get_algorithms_for_kind(EnvironmentKind.BOUNDED) == ["sdcb", "d-sdcb", "naive"]
        assert get_algorithm_info("unknown") is None

    def test_build_uses_environment_bounds(self, gaussian_pairs_env):
        policy = build_algorithm(AlgorithmSpec(name="cucb-g"), gaussian_pairs_env, 0.3, 1000)
        assert policy.state.bound_m == 1.0
        assert policy.state.bound_n == 0.25
        assert policy.state.round_counter == RoundCounter.PER_ALGORITHM

    def test_build_applies_overrides(self, gaussian_pairs_env, bernoulli_pairs_env):
        spec = AlgorithmSpec.model_validate({"name": "cucb-g",
                                             "overrides": {"bound_m": 2.0, "round_counter": "unified"}})
        policy = build_algorithm(spec, gaussian_pairs_env, 0.3, 1000)
        assert policy.state.bound_m == 2.0
        assert policy.state.round_counter == RoundCounter.UNIFIED

        spec = AlgorithmSpec.model_validate({"name": "d-sdcb", "overrides": {"epsilon": 0.01}})
        assert build_algorithm(spec, bernoulli_pairs_env, 0.3, 1000).epsilon == 0.01


class TestValidation:
    def test_minimal_gaussian_config(self):
        config = validate_config_data(gaussian_config_data())
        assert config.environment.kind == EnvironmentKind.GAUSSIAN
        assert config.seeds.count == 1

    def test_alpha_out_of_range(self):
        violations = violations_of(bounded_config_data(alpha=1.5))
        assert [v.path for v in violations] == ["alpha"]
        assert "alpha out of range" in violations[0].message

    def test_kind_mismatch(self):
        violations = violations_of(bounded_config_data(algorithms=[{"name": "cucb-g"}]))
        assert any("algorithm/environment kind mismatch" in v.message for v in violations)

    def test_unknown_algorithm(self):
        violations = violations_of(bounded_config_data(algorithms=[{"name": "thompson"}]))
        assert violations[0].path == "algorithms[0].name"

    def test_every_violation_reported(self):
        data = bounded_config_data(horizon=0, workers=0)
        data["alpha"] = -1
        paths = {v.path for v in violations_of(data)}
        assert {"alpha", "horizon", "workers"} <= paths

    def test_arm_ids_out_of_range(self):
        data = bounded_config_data()
        data["environment"]["action_set"] = [[0, 1], [1, 7]]
        violations = violations_of(data)
        assert any(v.path == "environment.action_set[1]" and "out of range" in v.message for v in violations)

    def test_override_not_accepted(self):
        violations = violations_of(bounded_config_data(algorithms=[{"name": "sdcb", "overrides": {"epsilon": 0.1}}]))
        assert violations[0].path == "algorithms[0].overrides.epsilon"

    def test_repeated_algorithm_labels(self):
        config = validate_config_data(bounded_config_data(algorithms=[
            {"name": "d-sdcb", "overrides": {"epsilon": 0.5}},
            {"name": "naive"},
            {"name": "d-sdcb", "overrides": {"epsilon": 0.001}},
        ]))
        assert config.algorithm_labels() == ["d-sdcb#1", "naive", "d-sdcb#2"]

    def test_duplicate_label_rejected(self):
        violations = violations_of(bounded_config_data(algorithms=[
            {"name": "sdcb", "label": "naive"},
            {"name": "naive"},
        ]))
        assert [v.path for v in violations] == ["algorithms[1].label"]
        assert "already names algorithms[0]" in violations[0].message

    def test_thinning_must_divide_horizon(self):
        violations = violations_of(bounded_config_data(thinning=7))
        assert violations[0].path == "thinning"

    def test_horizon_shorter_than_init(self):
        violations = violations_of(bounded_config_data(horizon=2, algorithms=[{"name": "naive"}]))
        assert violations[0].path == "horizon"

    def test_variance_bound_not_strict(self):
        data = gaussian_config_data()
        data["environment"]["arms"][0]["std_dev"] = 1.0
        violations = violations_of(data)
        assert violations[0].path == "environment.arms[0]"
        assert "variance bound not strict" in violations[0].message

    def test_gaussian_arm_in_bounded_environment(self):
        data = bounded_config_data()
        data["environment"]["arms"][0] = {"mean": 0.5, "std_dev": 0.1}
        assert violations_of(data)[0].path == "environment.arms[0]"

    def test_bad_masses(self):
        data = bounded_config_data()
        data["environment"]["arms"][2] = {"atoms": [[0.2, 0.5], [0.9, 0.4]]}
        violations = violations_of(data)
        assert violations[0].path == "environment"
        assert "sum" in violations[0].message

    def test_cli_overrides_merge(self):
        config = validate_config_data(bounded_config_data(), overrides={"workers": 3, "output": {"directory": "x"}})
        assert config.workers == 3
        assert config.output.directory == "x"
        assert config.output.trace_file == "trace.csv"


class TestParseFile:
    def test_line_numbers_attached(self, tmp_path):
        data = bounded_config_data(alpha=1.5)
        path = tmp_path / "config.json"
        text = json.dumps(data, indent=2)
        path.write_text(text)
        with pytest.raises(ConfigError) as info:
            parse_and_validate(path)
        violation = info.value.violations[0]
        assert violation.line == text.splitlines().index('  "alpha": 1.5,') + 1
        assert str(path) in str(info.value)

    def test_syntax_error(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{\n  "alpha": 0.3,\n  "horizon": }\n')
        with pytest.raises(ConfigError) as info:
            parse_and_validate(path)
        assert info.value.violations[0].line == 3
        assert "invalid JSON" in info.value.violations[0].message

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            parse_and_validate(tmp_path / "absent.json")

    def test_shipped_configs_are_valid(self):
        from pathlib import Path
        root = Path(__file__).resolve().parents[2] / "configs"
        for path in sorted(root.glob("*.json")):
            assert isinstance(parse_and_validate(path), ExperimentConfig)

    def test_config_echo_round_trips(self):
        config = validate_config_data(gaussian_config_data(
            algorithms=[{"name": "cucb-g", "overrides": {"round_counter": "unified"}}]))
        echoed = json.loads(json.dumps(config.model_dump(mode="json")))
        assert ExperimentConfig.model_validate(echoed) == config


def test_omitted_counts_come_from_settings(monkeypatch):
    monkeypatch.setenv("CVARBANDIT_DEFAULT_SEEDS", "3")
    monkeypatch.setenv("CVARBANDIT_DEFAULT_WORKERS", "2")
    get_settings.cache_clear()
    data = bounded_config_data(seeds={"master_seed": 5})
    del data["workers"]
    config = validate_config_data(data)
    assert config.seeds.count == 3
    assert config.workers == 2
