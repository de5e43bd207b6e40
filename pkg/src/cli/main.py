"""
Command-line entry point: run, verify, list and validate.

Usage:
    python -m src.cli run --config configs/bernoulli_pairs.json --workers 4
    python -m src.cli verify --scale quick
    python -m src.cli list --json
    python -m src.cli validate --config configs/minimal_gaussian.json
"""
import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from loguru import logger

from src.algorithms.registry import ALGORITHMS
from src.cli.config_io import parse_and_validate
from src.cli.writers import write_summary, write_trace
from src.harness.runner import run_experiment
from src.oracles.verify import VerifyScale, run_verification
from src.utils.errors import ConfigError, RunError
from src.utils.log_setup import configure_logging
from src.utils.settings import get_settings

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2


def _print_violations(error: ConfigError) -> None:
    print(f"Invalid config{f' {error.source}' if error.source else ''}:", file=sys.stderr)
    for violation in error.violations:
        print(f"  - {violation}", file=sys.stderr)


def _cli_overrides(args: argparse.Namespace) -> dict:
    overrides = {}
    if getattr(args, "workers", None) is not None:
        overrides["workers"] = args.workers
    if getattr(args, "thinning", None) is not None:
        overrides["thinning"] = args.thinning
    if getattr(args, "output_dir", None) is not None:
        overrides["output"] = {"directory": args.output_dir}
    return overrides


def cmd_run(args: argparse.Namespace) -> int:
    """Run the experiment grid and write the trace and summary files."""
    try:
        config = parse_and_validate(args.config, overrides=_cli_overrides(args))
    except ConfigError as e:
        _print_violations(e)
        return EXIT_CONFIG
    except OSError as e:
        logger.error(f"Cannot read config: {e}")
        return EXIT_CONFIG

    try:
        outcome = run_experiment(config, progress=not args.quiet, log_level=get_settings().log_level)
    except RunError as e:
        print(f"Run failed: {e}", file=sys.stderr)
        return EXIT_FAILURE

    out_dir = Path(config.output.directory)
    write_trace(outcome.traces, out_dir / config.output.trace_file)
    write_summary(outcome, out_dir / config.output.summary_file)

    if not args.quiet:
        for name, agg in outcome.aggregate.algorithms.items():
            mean_final = sum(agg.final_regrets) / agg.runs
            print(f"{name:8s} runs={agg.runs:3d} mean final regret={mean_final:.4f} "
                  f"final-decile optimal rate={agg.final_decile_optimal_rate:.3f}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Run the verification suite; nonzero exit if any check fails."""
    results = run_verification(VerifyScale(args.scale))
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"{status}  {result.name:26s} cases={result.cases:5d} margin={result.margin:.3e} "
              f"({result.seconds:.1f}s)  {result.detail}")
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"{len(failed)} check(s) failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAILURE
    print(f"All {len(results)} checks passed")
    return EXIT_OK


def cmd_list(args: argparse.Namespace) -> int:
    """Print the registered algorithms with the config fields they read."""
    if args.json:
        print(json.dumps([info.model_dump(mode="json") for info in ALGORITHMS.values()], indent=2))
        return EXIT_OK
    for info in ALGORITHMS.values():
        print(f"{info.name:8s} {info.title} [{info.environment_kind.value}]")
        print(f"         {info.description}")
        print(f"         requires: {', '.join(info.required_fields)}")
        if info.overrides:
            print(f"         overrides: {', '.join(info.overrides)}")
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    """Parse and validate a config without running it."""
    try:
        config = parse_and_validate(args.config)
    except ConfigError as e:
        _print_violations(e)
        return EXIT_CONFIG
    except OSError as e:
        print(f"Cannot read config: {e}", file=sys.stderr)
        return EXIT_CONFIG
    names = ", ".join(spec.name.value for spec in config.algorithms)
    print(f"{args.config}: valid ({config.environment.kind.value} environment, "
          f"{len(config.environment.arms)} arms, {len(config.environment.action_set)} super arms, "
          f"T={config.horizon}, {config.seeds.count} seed(s), algorithms: {names})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cvarbandit", description="Risk-aware combinatorial bandit experiments")
    parser.add_argument("--quiet", action="store_true", help="Only warnings and errors on stderr, no progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="Run an experiment config")
    run.add_argument("--config", required=True, help="Path to the JSON experiment config")
    run.add_argument("--output-dir", help="Override output.directory")
    run.add_argument("--workers", type=int, help="Override the worker process count")
    run.add_argument("--thinning", type=int, help="Record every k-th round (k must divide T)")
    run.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    run.set_defaults(func=cmd_run)

    verify = sub.add_parser("verify", help="Check the distribution code against the reference oracles")
    verify.add_argument("--scale", choices=[s.value for s in VerifyScale], default=VerifyScale.QUICK.value)
    verify.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS)
    verify.set_defaults(func=cmd_verify)

    listing = sub.add_parser("list", help="List the available algorithms")
    listing.add_argument("--json", action="store_true", help="Machine-readable output")
    listing.set_defaults(func=cmd_list)

    check = sub.add_parser("validate", help="Validate a config without running it")
    check.add_argument("--config", required=True, help="Path to the JSON experiment config")
    check.set_defaults(func=cmd_validate)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = get_settings()
    configure_logging(settings.log_level, settings.log_file or None, quiet=args.quiet)
    return args.func(args)
