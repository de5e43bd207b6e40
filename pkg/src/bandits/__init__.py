"""
Ground-truth bandit environments and their random streams.
"""
from src.bandits.environment import (
    compute_gap_table,
    sample_super_arm,
    true_cvar,
    true_cvar_estimate,
    validate,
)
from src.bandits.streams import ArmStreams, keyed_generator

__all__ = [
    "ArmStreams",
    "compute_gap_table",
    "keyed_generator",
    "sample_super_arm",
    "true_cvar",
    "true_cvar_estimate",
    "validate",
]
