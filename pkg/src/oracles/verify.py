"""
Verification suite: primary distribution code against the reference oracles.

Each check draws its own random instances from a keyed stream, so a given
scale always runs the same cases. Checks report the worst margin they saw
so a pass can be read as "how close to failing".
"""
import math
import time
from enum import Enum
from typing import Callable, Dict, List, Tuple

import numpy as np
from loguru import logger
from pydantic import BaseModel

import src.dist.cvar as dist_cvar
from src.bandits.streams import keyed_generator
from src.dist import convolve, convolve_many, discretize_up, dominant_shift, dominates, gaussian_cvar
from src.models.distribution import DiscreteDistribution, GaussianParams
from src.oracles.reference import (
    brute_force_convolve,
    enumerate_super_arm_cvar,
    fractional_tail_mean,
    monte_carlo_cvar,
)

EXACT_TOLERANCE = 1e-9
ATOM_TOLERANCE = 1e-12
# Float slack on the one-sided sandwich and shift bounds
BOUND_TOLERANCE = 1e-12
VERIFY_SEED = 20240


class VerifyScale(str, Enum):
    QUICK = "quick"
    FULL = "full"


class CheckResult(BaseModel):
    """Outcome of one property check"""
    name: str
    passed: bool
    cases: int
    margin: float
    detail: str
    seconds: float = 0.0


# case counts per scale: quick keeps the whole suite well under a minute
SCALES: Dict[VerifyScale, Dict[str, int]] = {
    VerifyScale.QUICK: {
        "monte_carlo_samples": 200_000,
        "discrete": 50,
        "convolution": 50,
        "enumeration": 25,
        "sandwich": 25,
        "round_up": 50,
        "dominance": 50,
    },
    VerifyScale.FULL: {
        "monte_carlo_samples": 1_000_000,
        "discrete": 200,
        "convolution": 200,
        "enumeration": 100,
        "sandwich": 100,
        "round_up": 50,
        "dominance": 200,
    },
}


def random_distribution(rng: np.random.Generator, max_atoms: int) -> DiscreteDistribution:
    """Random law on [0, 1] with 1..max_atoms atoms and Dirichlet masses."""
    size = int(rng.integers(1, max_atoms + 1))
    values = rng.random(size)
    masses = rng.dirichlet(np.ones(size))
    return DiscreteDistribution(values, masses)


def check_gaussian(samples: int) -> CheckResult:
    """Closed form against an independent constant and a Monte Carlo estimate."""
    closed = gaussian_cvar(GaussianParams(mean=0.0, std_dev=1.0), 0.5)
    constant = -2.0 / math.sqrt(2.0 * math.pi)
    estimate = monte_carlo_cvar(lambda rng, n: rng.standard_normal(n), 0.5, samples, seed=VERIFY_SEED)
    closed_err = abs(closed - constant)
    mc_err = abs(estimate.value - closed)
    allowed = 3.0 * estimate.standard_error
    passed = closed_err <= 1e-6 and mc_err <= allowed
    return CheckResult(
        name="gaussian_closed_form",
        passed=passed,
        cases=2,
        margin=min(1e-6 - closed_err, allowed - mc_err),
        detail=f"closed form {closed:.10f}, constant error {closed_err:.2e}, "
               f"Monte Carlo {estimate.value:.6f} +/- {estimate.standard_error:.2e}",
    )


def check_bernoulli_monte_carlo(samples: int) -> CheckResult:
    """Bernoulli(0.5) at alpha 0.75: exact 1/3 against Monte Carlo."""
    law = DiscreteDistribution([0.0, 1.0], [0.5, 0.5])
    exact = dist_cvar.cvar_discrete(law, 0.75)
    estimate = monte_carlo_cvar(lambda rng, n: (rng.random(n) < 0.5).astype(float), 0.75, samples,
                                seed=VERIFY_SEED + 1)
    err = abs(estimate.value - exact)
    allowed = max(3.0 * estimate.standard_error, EXACT_TOLERANCE)
    exact_err = abs(exact - 1.0 / 3.0)
    return CheckResult(
        name="bernoulli_monte_carlo",
        passed=err <= allowed and exact_err <= EXACT_TOLERANCE,
        cases=2,
        margin=min(allowed - err, EXACT_TOLERANCE - exact_err),
        detail=f"exact {exact:.10f}, Monte Carlo {estimate.value:.6f} +/- {estimate.standard_error:.2e}",
    )


def check_discrete_cvar(cases: int) -> CheckResult:
    """cvar_discrete against the fractional tail mean on the exact law."""
    rng = keyed_generator(VERIFY_SEED, 2)
    worst = 0.0
    count = 0
    for _ in range(cases):
        dist = random_distribution(rng, 30)
        for alpha in (0.05, 0.25, 0.5, 0.9):
            primary = dist_cvar.cvar_discrete(dist, alpha)
            oracle = fractional_tail_mean(dist.values.tolist(), dist.masses.tolist(), alpha)
            worst = max(worst, abs(primary - oracle))
            count += 1
    return CheckResult(
        name="discrete_cvar_oracle",
        passed=worst <= EXACT_TOLERANCE,
        cases=count,
        margin=EXACT_TOLERANCE - worst,
        detail=f"max |cvar_discrete - fractional tail| = {worst:.2e}",
    )


def check_convolution(cases: int) -> CheckResult:
    """convolve against the nested-loop oracle, atom for atom."""
    rng = keyed_generator(VERIFY_SEED, 3)
    worst = 0.0
    mismatched = 0
    for _ in range(cases):
        d1 = random_distribution(rng, 12)
        d2 = random_distribution(rng, 12)
        fast = convolve(d1, d2)
        slow = brute_force_convolve(d1, d2)
        if fast.size != slow.size:
            mismatched += 1
            continue
        worst = max(worst,
                    float(np.max(np.abs(fast.values - slow.values))),
                    float(np.max(np.abs(fast.masses - slow.masses))))
    return CheckResult(
        name="convolution_oracle",
        passed=mismatched == 0 and worst <= ATOM_TOLERANCE,
        cases=cases,
        margin=ATOM_TOLERANCE - worst,
        detail=f"{mismatched} support size mismatch(es), max atom difference {worst:.2e}",
    )


def check_enumeration(cases: int) -> CheckResult:
    """convolve_many + cvar_discrete against full outcome enumeration on triples."""
    rng = keyed_generator(VERIFY_SEED, 4)
    worst = 0.0
    for _ in range(cases):
        laws = [random_distribution(rng, 3) for _ in range(3)]
        alpha = float(rng.uniform(0.01, 0.99))
        primary = dist_cvar.cvar_discrete(convolve_many(laws), alpha)
        worst = max(worst, abs(primary - enumerate_super_arm_cvar(laws, alpha)))
    return CheckResult(
        name="enumeration_oracle",
        passed=worst <= EXACT_TOLERANCE,
        cases=cases,
        margin=EXACT_TOLERANCE - worst,
        detail=f"max |convolve_many + cvar - enumeration| = {worst:.2e}",
    )


def check_sandwich(cases: int) -> CheckResult:
    """0 <= CVaR(sum of rounded laws) - CVaR(sum of laws) <= epsilon (L+1) / alpha."""
    rng = keyed_generator(VERIFY_SEED, 5)
    worst = math.inf
    failures = 0
    for _ in range(cases):
        size = int(rng.choice([2, 3, 4]))
        alpha = float(rng.choice([0.1, 0.3, 0.7]))
        epsilon = float(rng.choice([1e-2, 1e-3]))
        laws = [dominant_shift(random_distribution(rng, 10), float(rng.uniform(0.0, 0.3)))
                for _ in range(size)]
        exact = dist_cvar.cvar_discrete(convolve_many(laws), alpha)
        rounded = dist_cvar.cvar_discrete(convolve_many([discretize_up(law, epsilon) for law in laws]), alpha)
        diff = rounded - exact
        bound = epsilon * (size + 1) / alpha
        margin = min(diff + BOUND_TOLERANCE, bound + BOUND_TOLERANCE - diff)
        failures += margin < 0
        worst = min(worst, margin)
    return CheckResult(
        name="discretization_sandwich",
        passed=failures == 0,
        cases=cases,
        margin=worst,
        detail=f"{failures} instance(s) outside [0, epsilon (L+1) / alpha]",
    )


def check_round_up_shift(cases: int) -> CheckResult:
    """Every rounded sum point exceeds its source sum by less than (L+1) epsilon."""
    rng = keyed_generator(VERIFY_SEED, 6)
    worst = math.inf
    failures = 0
    points = 0
    for _ in range(cases):
        size = int(rng.integers(1, 5))
        epsilon = float(rng.choice([1e-2, 1e-3]))
        laws = [random_distribution(rng, 4) for _ in range(size)]
        rounded = [[float(discretize_up(DiscreteDistribution.point_mass(v), epsilon).values[0])
                    for v in law.values] for law in laws]
        grids = np.meshgrid(*[law.values for law in laws], indexing="ij")
        rounded_grids = np.meshgrid(*[np.array(r) for r in rounded], indexing="ij")
        shift = sum(rounded_grids) - sum(grids)
        bound = (size + 1) * epsilon
        margin = min(float(np.min(shift)) + BOUND_TOLERANCE, bound - float(np.max(shift)))
        failures += margin <= 0
        worst = min(worst, margin)
        points += shift.size
    return CheckResult(
        name="round_up_shift",
        passed=failures == 0,
        cases=points,
        margin=worst,
        detail=f"{failures} instance(s) with a sum point moved outside [0, (L+1) epsilon)",
    )


def check_dominance(cases: int) -> CheckResult:
    """dominant_shift and discretize_up both first-order dominate their input."""
    rng = keyed_generator(VERIFY_SEED, 7)
    failures = 0
    for _ in range(cases):
        dist = random_distribution(rng, 20)
        shifted = dominant_shift(dist, float(rng.uniform(0.0, 1.2)))
        rounded = discretize_up(dist, float(rng.choice([1e-1, 1e-2, 1e-3])))
        failures += not dominates(shifted, dist)
        failures += not dominates(rounded, dist)
    return CheckResult(
        name="first_order_dominance",
        passed=failures == 0,
        cases=2 * cases,
        margin=0.0 if failures == 0 else -float(failures),
        detail=f"{failures} non-dominating construction(s)",
    )


def _checks(scale: VerifyScale) -> List[Tuple[str, Callable[[], CheckResult]]]:
    s = SCALES[scale]
    return [
        ("gaussian_closed_form", lambda: check_gaussian(s["monte_carlo_samples"])),
        ("bernoulli_monte_carlo", lambda: check_bernoulli_monte_carlo(s["monte_carlo_samples"])),
        ("discrete_cvar_oracle", lambda: check_discrete_cvar(s["discrete"])),
        ("convolution_oracle", lambda: check_convolution(s["convolution"])),
        ("enumeration_oracle", lambda: check_enumeration(s["enumeration"])),
        ("discretization_sandwich", lambda: check_sandwich(s["sandwich"])),
        ("round_up_shift", lambda: check_round_up_shift(s["round_up"])),
        ("first_order_dominance", lambda: check_dominance(s["dominance"])),
    ]


def run_verification(scale: VerifyScale = VerifyScale.QUICK) -> List[CheckResult]:
    """
    Run every check at the given scale.

    A check that raises is reported as failed rather than aborting the suite.

    Returns:
        One CheckResult per property, in a fixed order
    """
    results = []
    for name, check in _checks(VerifyScale(scale)):
        start = time.perf_counter()
        try:
            result = check()
        except Exception as e:
            logger.error(f"Verification check raised: {e}")
            result = CheckResult(name=name, passed=False, cases=0,
                                 margin=-math.inf, detail=f"raised {type(e).__name__}: {e}")
        result.seconds = time.perf_counter() - start
        logger.info(f"{result.name}: {'PASS' if result.passed else 'FAIL'} ({result.detail})")
        results.append(result)
    return results
