"""
Records produced by algorithms, the environment and the harness.
"""
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, Field


class GapTable(BaseModel):
    """True CVaR of every super arm and its gap to the best one"""
    alpha: float
    cvars: List[float]
    gaps: List[float]
    optimal: List[int] = Field(..., description="Positions of every super arm attaining the best CVaR")
    delta_min: Optional[float] = Field(None, description="Smallest nonzero gap; None when all gaps are zero")
    delta_max: float
    all_optimal: bool = False
    arms_in_suboptimal: List[int] = Field(default_factory=list)
    arm_min_gap: List[Optional[float]] = Field(default_factory=list)
    cvar_standard_errors: List[float] = Field(default_factory=list)

    @property
    def best(self) -> int:
        return self.optimal[0]

    def is_optimal(self, position: int) -> bool:
        return self.gaps[position] == 0.0


@dataclass(frozen=True)
class SelectionDecision:
    """Outcome of one selection step"""
    chosen: int
    indices: np.ndarray
    tie: bool
    support_sizes: Optional[Tuple[int, ...]] = None

    @classmethod
    def from_indices(cls, indices: np.ndarray, support_sizes: Optional[Tuple[int, ...]] = None) -> "SelectionDecision":
        """Argmax with ties broken toward the lowest position."""
        best = float(np.max(indices))
        winners = np.flatnonzero(indices == best)
        return cls(chosen=int(winners[0]), indices=indices, tie=winners.size > 1, support_sizes=support_sizes)


@dataclass
class RegretTrace:
    """
    One run's per-round history.

    `rounds` lists the recorded rounds (every `thinning`-th); the other
    arrays are aligned with it. Summary counters cover every round.
    """
    run_id: int
    algorithm: str
    master_seed: int
    horizon: int
    thinning: int
    rounds: np.ndarray
    chosen: np.ndarray
    instant_regret: np.ndarray
    cumulative_regret: np.ndarray
    pull_counts: List[int] = field(default_factory=list)
    regret_first_half: float = 0.0
    regret_second_half: float = 0.0
    suboptimal_first_half: int = 0
    suboptimal_second_half: int = 0
    final_decile_optimal_rate: float = 0.0
    init_rounds: int = 0

    @property
    def final_regret(self) -> float:
        return float(self.cumulative_regret[-1]) if self.cumulative_regret.size else 0.0

    def rows(self) -> Iterator[Tuple[int, str, int, int, float, float]]:
        """(run_id, algorithm, t, chosen_super_arm, instant_regret, cum_regret) per recorded round."""
        for t, arm, inst, cum in zip(self.rounds.tolist(), self.chosen.tolist(),
                                     self.instant_regret.tolist(), self.cumulative_regret.tolist()):
            yield self.run_id, self.algorithm, t, arm, inst, cum


class AlgorithmAggregate(BaseModel):
    """Cross-run statistics for one algorithm"""
    algorithm: str
    runs: int
    rounds: List[int]
    mean_cum_regret: List[float]
    std_cum_regret: List[float]
    final_regrets: List[float]
    final_decile_optimal_rate: float
    per_run_optimal_rate: List[float]
    mean_regret_first_half: float
    mean_regret_second_half: float


class AggregateResult(BaseModel):
    """Aggregates keyed by algorithm name"""
    algorithms: Dict[str, AlgorithmAggregate]


class OracleEstimate(BaseModel):
    """A Monte Carlo estimate with its standard error"""
    value: float
    standard_error: float = Field(..., ge=0)
    sample_count: int = Field(..., gt=0)


class PairedComparison(BaseModel):
    """SDCB versus D-SDCB indices on one shared history"""
    epsilon: float
    bound: float
    rounds: int
    max_abs_difference: List[float]
    min_difference: float
    max_difference: float
    disagreement_rate: float

    @property
    def within_bound(self) -> bool:
        return self.min_difference >= -1e-12 and self.max_difference <= self.bound + 1e-12
