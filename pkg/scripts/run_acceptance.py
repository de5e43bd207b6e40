#!/usr/bin/env python3
"""
Run the acceptance experiments and print a pass/fail table.

Covers the verification suite plus the bounded and Gaussian fixtures in
configs/. The full run takes several minutes with 4 workers.
"""

from path_helper import setup_path
setup_path()

import argparse
import sys
import time
from pathlib import Path

import numpy as np
from loguru import logger

from src.cli.config_io import parse_and_validate
from src.harness.paired import paired_index_comparison
from src.harness.runner import run_experiment
from src.oracles.verify import VerifyScale, run_verification
from src.utils.log_setup import configure_logging

CONFIGS = Path(__file__).resolve().parents[1] / "configs"


def bounded_checks(workers):
    config = parse_and_validate(CONFIGS / "bernoulli_pairs.json")
    outcome = run_experiment(config, workers=workers, progress=True, log_level="WARNING")
    sdcb = outcome.aggregate.algorithms["sdcb"]
    naive = outcome.aggregate.algorithms["naive"]

    rows = [
        ("sdcb regret halves",
         sdcb.mean_regret_second_half < 0.5 * sdcb.mean_regret_first_half,
         f"first {sdcb.mean_regret_first_half:.2f}, second {sdcb.mean_regret_second_half:.2f}"),
        ("sdcb final-decile rate",
         sdcb.final_decile_optimal_rate >= 0.8,
         f"{sdcb.final_decile_optimal_rate:.3f}"),
        ("sdcb vs naive",
         np.mean(sdcb.final_regrets) <= np.mean(naive.final_regrets),
         f"{np.mean(sdcb.final_regrets):.2f} <= {np.mean(naive.final_regrets):.2f}"),
    ]
    for run_id, (ours, theirs) in enumerate(zip(sdcb.final_regrets, naive.final_regrets)):
        logger.info(f"seed {run_id}: sdcb {ours:.3f} naive {theirs:.3f}")

    env = config.environment.build()
    comparison = paired_index_comparison(env, config.horizon, config.alpha,
                                         seed=config.seeds.master_seed, progress=True)
    rows.append(("d-sdcb index fidelity",
                 comparison.within_bound and comparison.disagreement_rate < 0.01,
                 f"diff in [{comparison.min_difference:.2e}, {comparison.max_difference:.2e}], "
                 f"bound {comparison.bound:.2e}, disagreement {comparison.disagreement_rate:.4f}"))
    return rows


def gaussian_checks(workers):
    config = parse_and_validate(CONFIGS / "gaussian_pairs.json")
    outcome = run_experiment(config, workers=workers, progress=True, log_level="WARNING")
    traces = [t for t in outcome.traces if t.algorithm == "cucb-g"]
    improving = sum(t.suboptimal_second_half < t.suboptimal_first_half for t in traces)
    return [("cucb-g suboptimal halves", improving >= 18, f"{improving}/{len(traces)} seeds improve")]


def main():
    parser = argparse.ArgumentParser(description="Run the acceptance experiments.")
    parser.add_argument("--workers", type=int, default=4, help="Worker processes per experiment")
    parser.add_argument("--skip-experiments", action="store_true", help="Only run the verification suite")
    args = parser.parse_args()

    configure_logging("INFO")
    start = time.perf_counter()

    rows = [(r.name, r.passed, r.detail) for r in run_verification(VerifyScale.FULL)]
    if not args.skip_experiments:
        rows.extend(bounded_checks(args.workers))
        rows.extend(gaussian_checks(args.workers))

    print("=" * 80)
    for name, passed, detail in rows:
        print(f"{'✅' if passed else '❌'} {name:28s} {detail}")
    print("=" * 80)
    failed = sum(not passed for _, passed, _ in rows)
    print(f"{len(rows) - failed}/{len(rows)} passed in {time.perf_counter() - start:.0f}s")
    sys.exit(1 if failed else 0)


if __name__ == "__main__":
    main()
