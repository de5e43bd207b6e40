"""
Episode and experiment execution.

An episode plays an algorithm's initialization plan and then its own
selections for the rest of the horizon, charging the true CVaR gap of the
chosen super arm every round. An experiment runs every (algorithm, seed)
pair, optionally across worker processes, and aggregates the traces.
"""
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
from loguru import logger
from tqdm import tqdm

from src.algorithms.base import BanditAlgorithm
from src.algorithms.registry import build_algorithm
from src.bandits.environment import compute_gap_table, sample_super_arm
from src.bandits.streams import ArmStreams
from src.harness.aggregate import aggregate_traces
from src.models.config import AlgorithmSpec, ExperimentConfig
from src.models.environment import EnvironmentInstance
from src.models.results import AggregateResult, GapTable, RegretTrace
from src.utils.errors import HorizonError, RunError
from src.utils.log_setup import configure_logging


@dataclass
class ExperimentOutcome:
    """Everything a run of the experiment grid produced"""
    config: ExperimentConfig
    gap_table: GapTable
    traces: List[RegretTrace]
    aggregate: AggregateResult


def run_episode(env: EnvironmentInstance,
                algorithm: Union[AlgorithmSpec, BanditAlgorithm],
                horizon: int,
                alpha: float,
                master_seed: int,
                run_id: int = 0,
                gap_table: Optional[GapTable] = None,
                thinning: int = 1,
                label: Optional[str] = None) -> RegretTrace:
    """
    Play one run of T rounds and record its CVaR regret.

    Args:
        env: A validated environment
        algorithm: Spec to build a fresh policy from, or a ready policy
        horizon: T, total rounds including the initialization phase
        alpha: Risk level
        master_seed: Experiment seed; with run_id it keys the reward streams
        run_id: Replicate index
        gap_table: Precomputed gaps; computed here when omitted
        thinning: Record every k-th round (k must divide T)
        label: Name recorded in the trace; defaults to the algorithm name

    Returns:
        The run's RegretTrace

    Raises:
        HorizonError: if T is shorter than the initialization phase
    """
    if thinning < 1 or horizon % thinning:
        raise ValueError(f"thinning {thinning} must divide the horizon {horizon}")
    if gap_table is None:
        gap_table = compute_gap_table(env, alpha)
    policy = algorithm if isinstance(algorithm, BanditAlgorithm) else build_algorithm(algorithm, env, alpha, horizon)

    plan = policy.init_plan()
    if len(plan) > horizon:
        raise HorizonError(horizon, len(plan), policy.name)

    streams = ArmStreams(master_seed, run_id)
    gaps = gap_table.gaps
    num_super_arms = len(env.action_set)
    recorded = horizon // thinning
    rounds = np.arange(thinning, horizon + 1, thinning, dtype=np.int64)
    chosen = np.empty(recorded, dtype=np.int64)
    instant = np.empty(recorded)
    cumulative = np.empty(recorded)

    pull_counts = [0] * num_super_arms
    regret_halves = [0.0, 0.0]
    suboptimal_halves = [0, 0]
    decile_rounds = 0
    decile_optimal = 0
    cum = 0.0
    ties = 0

    logger.debug(f"Run {policy.name}/{run_id}: {len(plan)} init rounds, horizon {horizon}")
    for t in range(1, horizon + 1):
        if t <= len(plan):
            position = plan[t - 1]
        else:
            decision = policy.select()
            position = decision.chosen
            ties += decision.tie
        policy.update(position, sample_super_arm(env, position, streams))

        gap = gaps[position]
        cum += gap
        pull_counts[position] += 1
        half = 0 if 2 * t <= horizon else 1
        regret_halves[half] += gap
        if gap > 0.0:
            suboptimal_halves[half] += 1
        if 10 * t > 9 * horizon:
            decile_rounds += 1
            decile_optimal += gap == 0.0
        if t % thinning == 0:
            row = t // thinning - 1
            chosen[row] = position
            instant[row] = gap
            cumulative[row] = cum

    if ties:
        logger.debug(f"Run {policy.name}/{run_id}: {ties} selection(s) broken by position")
    return RegretTrace(
        run_id=run_id,
        algorithm=label or policy.name,
        master_seed=master_seed,
        horizon=horizon,
        thinning=thinning,
        rounds=rounds,
        chosen=chosen,
        instant_regret=instant,
        cumulative_regret=cumulative,
        pull_counts=pull_counts,
        regret_first_half=regret_halves[0],
        regret_second_half=regret_halves[1],
        suboptimal_first_half=suboptimal_halves[0],
        suboptimal_second_half=suboptimal_halves[1],
        final_decile_optimal_rate=decile_optimal / decile_rounds if decile_rounds else 0.0,
        init_rounds=len(plan),
    )


def _run_task(config: ExperimentConfig, spec_index: int, run_id: int, gap_table: GapTable) -> RegretTrace:
    """Worker entry point; rebuilds the environment so only plain models cross processes."""
    spec = config.algorithms[spec_index]
    label = config.algorithm_labels()[spec_index]
    try:
        env = config.environment.build()
        return run_episode(env, spec, config.horizon, config.alpha, config.seeds.master_seed,
                           run_id=run_id, gap_table=gap_table, thinning=config.thinning, label=label)
    except Exception as e:
        raise RunError(label, run_id, config.seeds.master_seed, e) from e


def run_experiment(config: ExperimentConfig,
                   workers: Optional[int] = None,
                   progress: bool = True,
                   log_level: str = "INFO") -> ExperimentOutcome:
    """
    Run every (algorithm, seed) pair of a validated config.

    Traces come back ordered by algorithm (config order) then run id,
    whatever order the workers finish in.

    Args:
        config: A validated experiment config
        workers: Process count; defaults to config.workers
        progress: Show a tqdm bar
        log_level: Level for the worker processes' log sink

    Returns:
        ExperimentOutcome with traces, aggregate and the gap table

    Raises:
        RunError: for the first run that fails, with its identity attached
    """
    workers = workers or config.workers
    env = config.environment.build()
    gap_table = compute_gap_table(env, config.alpha)
    tasks: List[Tuple[int, int]] = [
        (spec_index, run_id)
        for spec_index in range(len(config.algorithms))
        for run_id in range(config.seeds.count)
    ]
    logger.info(f"Running {len(tasks)} runs ({len(config.algorithms)} algorithm(s) x "
                f"{config.seeds.count} seed(s)), horizon {config.horizon}, {workers} worker(s)")

    results: Dict[Tuple[int, int], RegretTrace] = {}
    bar = tqdm(total=len(tasks), desc="runs", disable=not progress)
    try:
        if workers == 1:
            for spec_index, run_id in tasks:
                results[(spec_index, run_id)] = _run_task(config, spec_index, run_id, gap_table)
                bar.update(1)
        else:
            with ProcessPoolExecutor(max_workers=workers, initializer=configure_logging,
                                     initargs=(log_level, None, not progress)) as pool:
                futures = {
                    pool.submit(_run_task, config, spec_index, run_id, gap_table): (spec_index, run_id)
                    for spec_index, run_id in tasks
                }
                for future in as_completed(futures):
                    results[futures[future]] = future.result()
                    bar.update(1)
    except RunError as e:
        logger.error(f"Experiment aborted: {e}")
        raise
    finally:
        bar.close()

    traces = [results[key] for key in tasks]
    aggregate = aggregate_traces(traces)
    for name, agg in aggregate.algorithms.items():
        logger.info(f"{name}: mean final regret {np.mean(agg.final_regrets):.4f}, "
                    f"final-decile optimal rate {agg.final_decile_optimal_rate:.3f}")
    return ExperimentOutcome(config=config, gap_table=gap_table, traces=traces, aggregate=aggregate)
