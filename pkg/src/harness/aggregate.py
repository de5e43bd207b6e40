"""
Cross-seed aggregation of regret traces.
"""
from collections import defaultdict
from typing import Dict, List

import numpy as np

from src.models.results import AggregateResult, AlgorithmAggregate, RegretTrace


def aggregate_algorithm(traces: List[RegretTrace]) -> AlgorithmAggregate:
    """
    Per-round mean and population standard deviation of cumulative regret.

    Raises:
        ValueError: for an empty list, mixed algorithms or misaligned rounds
    """
    if not traces:
        raise ValueError("cannot aggregate zero traces")
    name = traces[0].algorithm
    rounds = traces[0].rounds
    for trace in traces:
        if trace.algorithm != name:
            raise ValueError(f"mixed algorithms in one aggregate: {name} and {trace.algorithm}")
        if not np.array_equal(trace.rounds, rounds):
            raise ValueError(f"run {trace.run_id} of {name} recorded different rounds")

    curves = np.vstack([trace.cumulative_regret for trace in traces])
    rates = [trace.final_decile_optimal_rate for trace in traces]
    return AlgorithmAggregate(
        algorithm=name,
        runs=len(traces),
        rounds=rounds.tolist(),
        mean_cum_regret=curves.mean(axis=0).tolist(),
        std_cum_regret=curves.std(axis=0).tolist(),
        final_regrets=[trace.final_regret for trace in traces],
        final_decile_optimal_rate=float(np.mean(rates)),
        per_run_optimal_rate=rates,
        mean_regret_first_half=float(np.mean([trace.regret_first_half for trace in traces])),
        mean_regret_second_half=float(np.mean([trace.regret_second_half for trace in traces])),
    )


def aggregate_traces(traces: List[RegretTrace]) -> AggregateResult:
    """Group traces by algorithm (first-seen order) and aggregate each group."""
    groups: Dict[str, List[RegretTrace]] = defaultdict(list)
    for trace in traces:
        groups[trace.algorithm].append(trace)
    return AggregateResult(algorithms={name: aggregate_algorithm(group) for name, group in groups.items()})
