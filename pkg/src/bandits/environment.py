"""
Sampling and exact ground truth for bandit environments.

Super-arm rewards are sums of independent arm rewards. Gaussian super arms
have a closed-form CVaR; finite-support bounded super arms are convolved
exactly; super arms containing a Beta arm fall back to a Monte Carlo
estimate whose standard error is kept in the gap table.
"""
import math
from typing import List, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from src.dist import convolve_many, cvar_discrete, gaussian_cvar
from src.models.distribution import GaussianParams, RiskLevel, as_alpha
from src.models.environment import BetaLaw, EnvironmentInstance, EnvironmentKind, SuperArm
from src.models.results import GapTable
from src.bandits.streams import ArmStreams
from src.utils.errors import Violation
from src.utils.settings import get_settings

# Super arms whose CVaR is within this of the best count as optimal
OPTIMAL_TOLERANCE = 1e-12
# Stream key reserved for ground-truth Monte Carlo estimates
TRUTH_STREAM = 2**31 - 1


def sample_super_arm(env: EnvironmentInstance,
                     arm: Union[int, SuperArm, Sequence[int]],
                     streams: ArmStreams) -> List[Tuple[int, float]]:
    """
    One independent draw from every arm of a super arm (semi-bandit feedback).

    Args:
        env: The environment
        arm: Super arm, as a position in the action set or the arm ids
        streams: The run's keyed streams

    Returns:
        (arm_id, reward) per constituent arm, in arm-id order

    Raises:
        ActionSetError: if the super arm is not in the action set
    """
    position = env.action_set.resolve(arm)
    rewards = []
    for arm_id in env.action_set[position].arm_ids:
        rng = streams.next_pull(arm_id)
        if env.kind == EnvironmentKind.GAUSSIAN:
            params = env.gaussian_arms[arm_id]
            reward = params.mean + params.std_dev * float(rng.standard_normal())
        else:
            reward = env.bounded_arms[arm_id].sample(rng)
        rewards.append((arm_id, reward))
    return rewards


def _super_arm_sampler(env: EnvironmentInstance, arm_ids: Sequence[int]):
    laws = [env.bounded_arms[i] for i in arm_ids]

    def draw(rng: np.random.Generator, n: int) -> np.ndarray:
        total = np.zeros(n)
        for law in laws:
            if isinstance(law, BetaLaw):
                total += rng.beta(law.a, law.b, size=n)
            else:
                total += rng.choice(law.values, size=n, p=law.masses)
        return total

    return draw


def true_cvar_estimate(env: EnvironmentInstance, arm: Union[int, SuperArm, Sequence[int]],
                       alpha: Union[float, RiskLevel]) -> Tuple[float, float]:
    """True CVaR of a super arm with its standard error (0 when exact)."""
    a = as_alpha(alpha)
    position = env.action_set.resolve(arm)
    arm_ids = env.action_set[position].arm_ids

    if env.kind == EnvironmentKind.GAUSSIAN:
        mean = sum(env.gaussian_arms[i].mean for i in arm_ids)
        std = math.sqrt(sum(env.gaussian_arms[i].std_dev ** 2 for i in arm_ids))
        return gaussian_cvar(GaussianParams(mean=mean, std_dev=std), a), 0.0

    if env.is_exact(arm_ids):
        return cvar_discrete(convolve_many([env.bounded_arms[i] for i in arm_ids]), a), 0.0

    from src.oracles.reference import monte_carlo_cvar

    estimate = monte_carlo_cvar(_super_arm_sampler(env, arm_ids), a,
                                n=get_settings().monte_carlo_samples,
                                seed=TRUTH_STREAM + position)
    logger.debug(f"Monte Carlo truth for super arm {list(arm_ids)}: "
                 f"{estimate.value:.6f} +/- {estimate.standard_error:.2e}")
    return estimate.value, estimate.standard_error


def true_cvar(env: EnvironmentInstance, arm: Union[int, SuperArm, Sequence[int]],
              alpha: Union[float, RiskLevel]) -> float:
    """CVaR_alpha of the super arm's true reward law."""
    return true_cvar_estimate(env, arm, alpha)[0]


def compute_gap_table(env: EnvironmentInstance, alpha: Union[float, RiskLevel]) -> GapTable:
    """
    Evaluate every super arm and derive the gaps to the best one.

    Args:
        env: A validated environment
        alpha: Risk level

    Returns:
        GapTable with ties for the optimum all recorded at gap zero
    """
    a = as_alpha(alpha)
    action_set = env.action_set
    estimates = [true_cvar_estimate(env, pos, a) for pos in range(len(action_set))]
    cvars = [value for value, _ in estimates]
    best = max(cvars)

    gaps = []
    for value in cvars:
        gap = best - value
        gaps.append(0.0 if gap <= OPTIMAL_TOLERANCE else gap)
    optimal = [pos for pos, gap in enumerate(gaps) if gap == 0.0]
    nonzero = [g for g in gaps if g > 0.0]

    arm_min_gap: List = [None] * action_set.num_arms
    suboptimal_arms = set()
    for pos, gap in enumerate(gaps):
        if gap == 0.0:
            continue
        for arm_id in action_set[pos].arm_ids:
            suboptimal_arms.add(arm_id)
            current = arm_min_gap[arm_id]
            arm_min_gap[arm_id] = gap if current is None else min(current, gap)

    table = GapTable(
        alpha=a,
        cvars=cvars,
        gaps=gaps,
        optimal=optimal,
        delta_min=min(nonzero) if nonzero else None,
        delta_max=max(gaps),
        all_optimal=not nonzero,
        arms_in_suboptimal=sorted(suboptimal_arms),
        arm_min_gap=arm_min_gap,
        cvar_standard_errors=[se for _, se in estimates],
    )
    logger.info(f"Gap table: best super arm {action_set[table.best]} with CVaR {best:.6f}, "
                f"delta_min={table.delta_min}, delta_max={table.delta_max:.6f}")
    return table


def validate(env: EnvironmentInstance) -> List[Violation]:
    """
    Check every invariant of an environment.

    Returns:
        All violations found; an empty list means the instance is well formed
    """
    violations: List[Violation] = []
    action_set = env.action_set
    k = env.num_arms

    if k == 0:
        violations.append(Violation(path="arms", message="environment has no arms"))
    if action_set.num_arms != k:
        violations.append(Violation(
            path="action_set",
            message=f"action set is over {action_set.num_arms} arms but the environment has {k}",
        ))
    if not action_set.super_arms:
        violations.append(Violation(path="action_set", message="empty action set"))

    for pos, super_arm in enumerate(action_set.super_arms):
        bad = [i for i in super_arm.arm_ids if i >= k]
        if bad:
            violations.append(Violation(
                path=f"action_set[{pos}]",
                message=f"arm ids {bad} out of range for {k} arms",
            ))

    covered = action_set.covered_arms()
    for arm_id in range(k):
        if arm_id not in covered:
            violations.append(Violation(path=f"arms[{arm_id}]", message=f"arm {arm_id} is not in any super arm"))

    if env.kind == EnvironmentKind.GAUSSIAN:
        violations.extend(_validate_gaussian(env))
    else:
        violations.extend(_validate_bounded(env))
    return violations


def _validate_gaussian(env: EnvironmentInstance) -> List[Violation]:
    violations = []
    if env.bounded_arms:
        violations.append(Violation(path="arms", message="gaussian environment has bounded arm laws"))
    if env.variance_bounds is None:
        return violations + [Violation(path="variance_bounds", message="gaussian environment needs N and M")]

    lower, upper = env.variance_bounds
    if not 0 < lower < upper:
        violations.append(Violation(path="variance_bounds", message=f"need 0 < N < M, got N={lower}, M={upper}"))
    for arm_id, params in enumerate(env.gaussian_arms or ()):
        var = params.std_dev ** 2
        if not lower ** 2 < var < upper ** 2:
            violations.append(Violation(
                path=f"arms[{arm_id}]",
                message=f"variance bound not strict: need {lower ** 2:g} < {var:g} < {upper ** 2:g}",
            ))
    return violations


def _validate_bounded(env: EnvironmentInstance) -> List[Violation]:
    violations = []
    if env.gaussian_arms:
        violations.append(Violation(path="arms", message="bounded environment has gaussian arm laws"))
    for arm_id, law in enumerate(env.bounded_arms or ()):
        if isinstance(law, BetaLaw):
            if not (law.a > 0 and law.b > 0):
                violations.append(Violation(path=f"arms[{arm_id}]", message="beta parameters must be positive"))
        elif law.min_value() < 0.0 or law.max_value() > 1.0:
            violations.append(Violation(
                path=f"arms[{arm_id}]",
                message=f"support [{law.min_value():g}, {law.max_value():g}] is not within [0, 1]",
            ))
    return violations
