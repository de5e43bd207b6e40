"""
Brute-force reference computations and the verification suite built on them.
"""
from src.oracles.reference import (
    brute_force_convolve,
    enumerate_super_arm_cvar,
    fractional_tail_mean,
    monte_carlo_cvar,
)
from src.oracles.verify import CheckResult, VerifyScale, run_verification

__all__ = [
    "CheckResult",
    "VerifyScale",
    "brute_force_convolve",
    "enumerate_super_arm_cvar",
    "fractional_tail_mean",
    "monte_carlo_cvar",
    "run_verification",
]
