"""
Serialization of experiment results: a CSV trace and a JSON summary.
"""
import csv
import json
from pathlib import Path
from typing import Any, Dict, Iterable, Union

from loguru import logger

from src.harness.runner import ExperimentOutcome
from src.models.results import RegretTrace

TRACE_HEADER = ["run_id", "algorithm", "t", "chosen_super_arm", "instant_regret", "cum_regret"]


def write_trace(traces: Iterable[RegretTrace], path: Union[str, Path]) -> int:
    """
    Write one row per recorded round of every trace.

    Floats are written with repr so reruns produce byte-identical files.

    Returns:
        Number of data rows written
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows = 0
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(TRACE_HEADER)
        for trace in traces:
            for run_id, algorithm, t, chosen, instant, cum in trace.rows():
                writer.writerow([run_id, algorithm, t, chosen, repr(instant), repr(cum)])
                rows += 1
    logger.info(f"Wrote {rows} trace rows to {path}")
    return rows


def build_summary(outcome: ExperimentOutcome) -> Dict[str, Any]:
    """Summary document: aggregates, gap table, per-run breakdown and the config echo."""
    action_set = outcome.config.environment.action_set
    runs = [
        {
            "algorithm": trace.algorithm,
            "run_id": trace.run_id,
            "master_seed": trace.master_seed,
            "final_regret": trace.final_regret,
            "init_rounds": trace.init_rounds,
            "pull_counts": trace.pull_counts,
            "regret_first_half": trace.regret_first_half,
            "regret_second_half": trace.regret_second_half,
            "suboptimal_first_half": trace.suboptimal_first_half,
            "suboptimal_second_half": trace.suboptimal_second_half,
            "final_decile_optimal_rate": trace.final_decile_optimal_rate,
        }
        for trace in outcome.traces
    ]
    return {
        "super_arms": [sorted(ids) for ids in action_set],
        "gap_table": outcome.gap_table.model_dump(mode="json"),
        "final_decile_optimal_rates": {
            name: agg.final_decile_optimal_rate for name, agg in outcome.aggregate.algorithms.items()
        },
        "aggregates": {name: agg.model_dump(mode="json") for name, agg in outcome.aggregate.algorithms.items()},
        "runs": runs,
        "config": outcome.config.model_dump(mode="json"),
    }


def write_summary(outcome: ExperimentOutcome, path: Union[str, Path]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(build_summary(outcome), f, indent=2)
        f.write("\n")
    logger.info(f"Wrote summary to {path}")
