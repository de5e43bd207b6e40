"""
Ground-truth bandit instance types: super arms, action sets and arm reward laws.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, PrivateAttr, field_validator

from src.models.distribution import DiscreteDistribution, GaussianParams
from src.utils.errors import ActionSetError


class EnvironmentKind(str, Enum):
    """Family of arm reward laws"""
    GAUSSIAN = "gaussian"
    BOUNDED = "bounded"


class SuperArm(BaseModel):
    """A non-empty set of arm ids, kept sorted"""
    model_config = ConfigDict(frozen=True)

    arm_ids: Tuple[int, ...]

    @field_validator("arm_ids", mode="before")
    @classmethod
    def _sorted_unique(cls, v):
        ids = list(v)
        if not ids:
            raise ValueError("super arm must contain at least one arm")
        if len(set(ids)) != len(ids):
            raise ValueError(f"super arm {ids} repeats an arm")
        if any(int(i) < 0 for i in ids):
            raise ValueError(f"super arm {ids} has a negative arm id")
        return tuple(sorted(int(i) for i in ids))

    @classmethod
    def of(cls, *arm_ids: int) -> "SuperArm":
        return cls(arm_ids=arm_ids)

    def __len__(self) -> int:
        return len(self.arm_ids)

    def __str__(self) -> str:
        return "{" + ",".join(str(i) for i in self.arm_ids) + "}"


class ActionSet(BaseModel):
    """
    The allowed super arms over K arms, in a fixed order.

    The order matters: ties between super arms are broken by position.
    """
    model_config = ConfigDict(frozen=True)

    super_arms: List[SuperArm]
    num_arms: int

    _positions: Dict[Tuple[int, ...], int] = PrivateAttr(default_factory=dict)
    _membership: Optional[np.ndarray] = PrivateAttr(default=None)

    def model_post_init(self, __context) -> None:
        self._positions = {}
        for pos, arm in enumerate(self.super_arms):
            self._positions.setdefault(arm.arm_ids, pos)

    @classmethod
    def from_lists(cls, arm_lists: Sequence[Sequence[int]], num_arms: int) -> "ActionSet":
        return cls(super_arms=[SuperArm(arm_ids=ids) for ids in arm_lists], num_arms=num_arms)

    @property
    def max_size(self) -> int:
        """L, the largest super-arm size."""
        return max((len(a) for a in self.super_arms), default=0)

    def __len__(self) -> int:
        return len(self.super_arms)

    def __getitem__(self, pos: int) -> SuperArm:
        return self.super_arms[pos]

    def index_of(self, arm: Union[SuperArm, Sequence[int]]) -> int:
        """Position of a super arm in the action set."""
        key = arm.arm_ids if isinstance(arm, SuperArm) else tuple(sorted(arm))
        try:
            return self._positions[key]
        except KeyError:
            raise ActionSetError(f"super arm {list(key)} is not in the action set") from None

    def resolve(self, arm: Union[int, SuperArm, Sequence[int]]) -> int:
        """Accept a position or a super arm and return the position."""
        if isinstance(arm, (int, np.integer)):
            if not 0 <= int(arm) < len(self.super_arms):
                raise ActionSetError(f"super arm index {arm} out of range")
            return int(arm)
        return self.index_of(arm)

    @property
    def membership(self) -> np.ndarray:
        """|A| x K 0/1 matrix; row a marks the arms of super arm a."""
        if self._membership is None:
            matrix = np.zeros((len(self.super_arms), self.num_arms), dtype=float)
            for pos, arm in enumerate(self.super_arms):
                matrix[pos, [i for i in arm.arm_ids if i < self.num_arms]] = 1.0
            matrix.setflags(write=False)
            self._membership = matrix
        return self._membership

    def covered_arms(self) -> set:
        return {i for arm in self.super_arms for i in arm.arm_ids}


@dataclass(frozen=True)
class BetaLaw:
    """Continuous Beta(a, b) reward law on [0, 1]"""
    a: float
    b: float

    def mean(self) -> float:
        return self.a / (self.a + self.b)

    def sample(self, rng: np.random.Generator) -> float:
        return float(rng.beta(self.a, self.b))


BoundedLaw = Union[DiscreteDistribution, BetaLaw]


@dataclass(frozen=True)
class EnvironmentInstance:
    """
    A bandit instance: arm laws of one kind plus the action set.

    Gaussian instances also carry the known variance bounds (N, M) with
    N^2 < sigma_i^2 < M^2.
    """
    kind: EnvironmentKind
    action_set: ActionSet
    gaussian_arms: Optional[Tuple[GaussianParams, ...]] = None
    bounded_arms: Optional[Tuple[BoundedLaw, ...]] = None
    variance_bounds: Optional[Tuple[float, float]] = None

    @classmethod
    def gaussian(cls, arms: Sequence[GaussianParams], action_set: ActionSet,
                 lower: float, upper: float) -> "EnvironmentInstance":
        """Gaussian instance with variance bounds N = lower, M = upper."""
        return cls(EnvironmentKind.GAUSSIAN, action_set,
                   gaussian_arms=tuple(arms), variance_bounds=(lower, upper))

    @classmethod
    def bounded(cls, arms: Sequence[BoundedLaw], action_set: ActionSet) -> "EnvironmentInstance":
        return cls(EnvironmentKind.BOUNDED, action_set, bounded_arms=tuple(arms))

    @property
    def num_arms(self) -> int:
        arms = self.gaussian_arms if self.kind == EnvironmentKind.GAUSSIAN else self.bounded_arms
        return len(arms or ())

    @property
    def lower_std(self) -> float:
        """N"""
        return self.variance_bounds[0]

    @property
    def upper_std(self) -> float:
        """M"""
        return self.variance_bounds[1]

    def is_exact(self, arm_ids: Sequence[int]) -> bool:
        """True when the super arm's reward law has an exact CVaR."""
        if self.kind == EnvironmentKind.GAUSSIAN:
            return True
        return all(isinstance(self.bounded_arms[i], DiscreteDistribution) for i in arm_ids)
