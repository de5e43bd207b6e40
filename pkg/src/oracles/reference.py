"""
Independent, deliberately simple computations used to check the primary
distribution code: Monte Carlo CVaR, nested-loop convolution and exhaustive
outcome enumeration.

None of these call into src.dist; they are slow on purpose.
"""
import itertools
import math
from typing import Callable, List, Sequence, Tuple, Union

import numpy as np

from src.bandits.streams import keyed_generator
from src.models.distribution import MERGE_TOLERANCE, DiscreteDistribution, RiskLevel, as_alpha
from src.models.results import OracleEstimate

Sampler = Callable[[np.random.Generator, int], np.ndarray]

MIN_MONTE_CARLO_SAMPLES = 1000
MONTE_CARLO_BATCHES = 10
MAX_OUTCOMES = 1_000_000


def fractional_tail_mean(values: Sequence[float], weights: Sequence[float], alpha: float) -> float:
    """
    Mean of the lowest alpha fraction of a weighted sample.

    Outcomes are sorted and their weights accumulated until alpha is
    reached; the boundary outcome contributes only the weight still needed.
    """
    pairs = sorted(zip(values, weights), key=lambda p: p[0])
    remaining = alpha
    total = 0.0
    for value, weight in pairs:
        take = min(weight, remaining)
        total += take * value
        remaining -= take
        if remaining <= 0.0:
            break
    else:
        # weights summed to slightly less than alpha; top up with the last value
        total += remaining * pairs[-1][0]
    return total / alpha


def _sorted_tail_mean(draws: np.ndarray, alpha: float) -> float:
    ordered = np.sort(draws)
    n = ordered.size
    k = max(1, math.ceil(alpha * n))
    # offsets from the boundary draw keep constant samples exact
    boundary = float(ordered[k - 1])
    return boundary + float((ordered[:k - 1] - boundary).sum()) / (alpha * n)


def monte_carlo_cvar(sampler: Sampler, alpha: Union[float, RiskLevel], n: int, seed: int) -> OracleEstimate:
    """
    Estimate CVaR_alpha from n draws of a black-box sampler.

    Args:
        sampler: Called as sampler(rng, n) and returns n independent draws
        alpha: Risk level
        n: Number of draws, at least 1000
        seed: Key of the generator handed to the sampler

    Returns:
        OracleEstimate whose standard error comes from 10 batch means
    """
    a = as_alpha(alpha)
    if n < MIN_MONTE_CARLO_SAMPLES:
        raise ValueError(f"monte_carlo_cvar needs n >= {MIN_MONTE_CARLO_SAMPLES}, got {n}")
    draws = np.asarray(sampler(keyed_generator(seed), n), dtype=float)
    value = _sorted_tail_mean(draws, a)
    batch_values = [_sorted_tail_mean(batch, a) for batch in np.array_split(draws, MONTE_CARLO_BATCHES)]
    if np.ptp(batch_values) == 0.0:
        se = 0.0
    else:
        se = float(np.std(batch_values, ddof=1) / math.sqrt(MONTE_CARLO_BATCHES))
    return OracleEstimate(value=value, standard_error=se, sample_count=n)


def brute_force_convolve(d1: DiscreteDistribution, d2: DiscreteDistribution) -> DiscreteDistribution:
    """Nested-loop convolution: every pair, then sort and merge equal sums."""
    outcomes: List[Tuple[float, float]] = []
    for v1, m1 in d1.atoms:
        for v2, m2 in d2.atoms:
            outcomes.append((v1 + v2, m1 * m2))
    outcomes.sort(key=lambda p: p[0])

    merged: List[List[float]] = []
    for value, mass in outcomes:
        if merged and value - merged[-1][2] <= MERGE_TOLERANCE:
            merged[-1][1] += mass
            merged[-1][2] = value
        else:
            merged.append([value, mass, value])
    return DiscreteDistribution([m[0] for m in merged], [m[1] for m in merged])


def enumerate_super_arm_cvar(laws: Sequence[DiscreteDistribution], alpha: Union[float, RiskLevel]) -> float:
    """
    CVaR of a sum of independent laws over the full outcome product space.

    Raises:
        ValueError: when the product of support sizes exceeds 10^6
    """
    a = as_alpha(alpha)
    count = math.prod(law.size for law in laws)
    if count > MAX_OUTCOMES:
        raise ValueError(f"outcome space of {count} exceeds {MAX_OUTCOMES}")

    totals = []
    probs = []
    for combo in itertools.product(*(law.atoms for law in laws)):
        totals.append(sum(v for v, _ in combo))
        probs.append(math.prod(m for _, m in combo))

    order = np.argsort(np.asarray(totals), kind="stable")
    values = np.asarray(totals)[order]
    weights = np.asarray(probs)[order]
    cum = np.cumsum(weights)
    k = min(int(np.argmax(cum >= a)) if cum[-1] >= a else values.size - 1, values.size - 1)
    x_alpha = values[k]
    return float((np.dot(values[:k + 1], weights[:k + 1]) - (cum[k] - a) * x_alpha) / a)
