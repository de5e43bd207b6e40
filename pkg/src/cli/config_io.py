"""
Loading and validating experiment configs.

A config is a JSON document (see configs/ for examples). Validation runs
in stages and reports every violation of the stage that failed: JSON
syntax, then the schema, then the cross-field rules, then the environment
invariants. Violations carry a JSON path and, where it can be found, the
line of the offending key.
"""
import json
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from loguru import logger
from pydantic import ValidationError

from src.algorithms.registry import build_algorithm, get_algorithm_info
from src.bandits.environment import validate
from src.models.config import ExperimentConfig, GaussianArmConfig
from src.models.environment import EnvironmentKind
from src.utils.errors import ConfigError, CvarBanditError, Violation


def _format_path(loc) -> str:
    path = ""
    for part in loc:
        if isinstance(part, int):
            path += f"[{part}]"
        else:
            path += f".{part}" if path else str(part)
    return path


def _line_of(text: Optional[str], path: str) -> Optional[int]:
    """Best-effort line of a JSON path: find its keys in document order."""
    if not text or not path:
        return None
    keys = [k.split("[")[0] for k in path.split(".") if k.split("[")[0]]
    pos = -1
    for key in keys:
        found = text.find(f'"{key}"', pos + 1)
        if found < 0:
            break
        pos = found
    if pos < 0:
        return None
    return text.count("\n", 0, pos) + 1


def _schema_violations(error: ValidationError) -> List[Violation]:
    violations = []
    seen = set()
    for item in error.errors():
        # union branches are reported under the branch model name; drop it from the path
        loc = [p for p in item["loc"] if not (isinstance(p, str) and p.endswith("Config"))]
        path = _format_path(loc)
        message = item["msg"].removeprefix("Value error, ")
        if (path, message) not in seen:
            seen.add((path, message))
            violations.append(Violation(path=path, message=message))
    return violations


def _semantic_violations(config: ExperimentConfig) -> List[Violation]:
    """Rules spanning several fields, checked before the environment is built."""
    violations = []
    env_spec = config.environment
    num_arms = len(env_spec.arms)

    for i, arm in enumerate(env_spec.arms):
        is_gaussian = isinstance(arm, GaussianArmConfig)
        if is_gaussian != (env_spec.kind == EnvironmentKind.GAUSSIAN):
            violations.append(Violation(
                path=f"environment.arms[{i}]",
                message=f"{'gaussian' if is_gaussian else 'bounded'} arm in a {env_spec.kind.value} environment",
            ))
    if env_spec.kind == EnvironmentKind.GAUSSIAN and env_spec.variance_bounds is None:
        violations.append(Violation(path="environment.variance_bounds",
                                    message="gaussian environment needs variance_bounds N and M"))

    if not env_spec.action_set:
        violations.append(Violation(path="environment.action_set", message="empty action set"))
    for pos, ids in enumerate(env_spec.action_set):
        if not ids:
            violations.append(Violation(path=f"environment.action_set[{pos}]", message="empty super arm"))
        if len(set(ids)) != len(ids):
            violations.append(Violation(path=f"environment.action_set[{pos}]", message="super arm repeats an arm"))
        bad = [i for i in ids if not 0 <= i < num_arms]
        if bad:
            violations.append(Violation(
                path=f"environment.action_set[{pos}]",
                message=f"arm ids {bad} out of range for {num_arms} arms",
            ))

    for i, spec in enumerate(config.algorithms):
        info = get_algorithm_info(spec.name.value)
        if info.environment_kind != env_spec.kind:
            violations.append(Violation(
                path=f"algorithms[{i}].name",
                message=f"algorithm/environment kind mismatch: {info.name} needs a "
                        f"{info.environment_kind.value} environment, got {env_spec.kind.value}",
            ))
        for key in spec.overrides.given():
            if key not in info.overrides:
                violations.append(Violation(
                    path=f"algorithms[{i}].overrides.{key}",
                    message=f"{info.name} does not accept override {key}",
                ))

    first_use: Dict[str, int] = {}
    for i, label in enumerate(config.algorithm_labels()):
        if label in first_use:
            violations.append(Violation(
                path=f"algorithms[{i}].label",
                message=f"label {label!r} already names algorithms[{first_use[label]}]",
            ))
        first_use.setdefault(label, i)

    if config.horizon % config.thinning:
        violations.append(Violation(
            path="thinning",
            message=f"thinning {config.thinning} must divide the horizon {config.horizon}",
        ))
    return violations


def _environment_violations(config: ExperimentConfig) -> List[Violation]:
    """Build the environment, check its invariants and that every init phase fits in T."""
    try:
        env = config.environment.build()
    except (CvarBanditError, ValueError) as e:
        return [Violation(path="environment", message=str(e))]

    violations = [Violation(path=f"environment.{v.path}", message=v.message) for v in validate(env)]
    if violations:
        return violations
    for i, spec in enumerate(config.algorithms):
        init_rounds = len(build_algorithm(spec, env, config.alpha, config.horizon).init_plan())
        if init_rounds > config.horizon:
            violations.append(Violation(
                path="horizon",
                message=f"horizon {config.horizon} is shorter than the {init_rounds}-round "
                        f"initialization of {spec.name.value} (algorithms[{i}])",
            ))
    return violations


def _merge(data: Dict[str, Any], overrides: Dict[str, Any]) -> Dict[str, Any]:
    merged = dict(data)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def validate_config_data(data: Any,
                         text: Optional[str] = None,
                         source: Optional[str] = None,
                         overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """
    Validate an already-decoded config document.

    Args:
        data: Decoded JSON
        text: Original text, used to attach line numbers
        source: Name for error messages
        overrides: Values merged over the document before validation (CLI flags)

    Returns:
        The validated ExperimentConfig

    Raises:
        ConfigError: with every violation of the first failing stage
    """
    if overrides and isinstance(data, dict):
        data = _merge(data, overrides)
    try:
        config = ExperimentConfig.model_validate(data)
    except ValidationError as e:
        violations = _schema_violations(e)
    else:
        violations = _semantic_violations(config) or _environment_violations(config)

    if violations:
        for v in violations:
            v.line = _line_of(text, v.path)
        raise ConfigError(violations, source)
    return config


def parse_and_validate(path: Union[str, Path], overrides: Optional[Dict[str, Any]] = None) -> ExperimentConfig:
    """
    Read and fully validate a JSON experiment config.

    Args:
        path: Config file
        overrides: Values merged over the document before validation

    Returns:
        The validated ExperimentConfig

    Raises:
        OSError: if the file cannot be read
        ConfigError: for malformed JSON or any violation
    """
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError([Violation(path="", message=f"invalid JSON: {e.msg} (column {e.colno})",
                                     line=e.lineno)], str(path)) from e
    config = validate_config_data(data, text=text, source=str(path), overrides=overrides)
    logger.debug(f"Config {path} is valid")
    return config
