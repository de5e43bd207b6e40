"""
Experiment harness: episodes, experiment grids, aggregation and paired runs.
"""
from src.harness.aggregate import aggregate_algorithm, aggregate_traces
from src.harness.paired import paired_index_comparison
from src.harness.runner import ExperimentOutcome, run_episode, run_experiment

__all__ = [
    "ExperimentOutcome",
    "aggregate_algorithm",
    "aggregate_traces",
    "paired_index_comparison",
    "run_episode",
    "run_experiment",
]
