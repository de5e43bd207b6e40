"""
Experiment configuration models.

A config is a JSON document; these models define its schema and turn it
into an EnvironmentInstance. Semantic checks that need the whole document
(arm ranges, algorithm/environment compatibility) live in src.cli.config_io.
"""
from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.models.distribution import DiscreteDistribution, GaussianParams
from src.models.environment import ActionSet, BetaLaw, EnvironmentInstance, EnvironmentKind
from src.utils.settings import get_settings


class RoundCounter(str, Enum):
    """Which round number feeds the log term of the CUCB-G radii"""
    PER_ALGORITHM = "per_algorithm"  # log(t-1) for CUCB-G; the SDCB family always reads log(t)
    UNIFIED = "unified"              # log(t) everywhere


class AlgorithmName(str, Enum):
    CUCB_G = "cucb-g"
    SDCB = "sdcb"
    D_SDCB = "d-sdcb"
    NAIVE = "naive"


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class GaussianArmConfig(_Strict):
    mean: float
    std_dev: float = Field(..., gt=0)

    def law(self) -> GaussianParams:
        return GaussianParams(mean=self.mean, std_dev=self.std_dev)


class FiniteArmConfig(_Strict):
    """Literal atom list [[value, mass], ...]"""
    atoms: List[Tuple[float, float]] = Field(..., min_length=1)

    def law(self) -> DiscreteDistribution:
        return DiscreteDistribution.from_atoms(self.atoms)


class BernoulliArmConfig(_Strict):
    bernoulli: float = Field(..., ge=0.0, le=1.0)

    def law(self) -> DiscreteDistribution:
        atoms = [(0.0, 1.0 - self.bernoulli), (1.0, self.bernoulli)]
        return DiscreteDistribution.from_atoms([(v, m) for v, m in atoms if m > 0])


class BetaArmConfig(_Strict):
    beta: Tuple[float, float]

    def law(self) -> BetaLaw:
        return BetaLaw(*self.beta)


ArmConfig = Union[GaussianArmConfig, FiniteArmConfig, BernoulliArmConfig, BetaArmConfig]


class VarianceBounds(_Strict):
    """Known N, M with N^2 < sigma_i^2 < M^2"""
    N: float = Field(..., gt=0)
    M: float = Field(..., gt=0)


class EnvironmentSpec(_Strict):
    kind: EnvironmentKind
    arms: List[ArmConfig] = Field(..., min_length=1)
    action_set: List[List[int]]
    variance_bounds: Optional[VarianceBounds] = None

    def build(self) -> EnvironmentInstance:
        """Instantiate the environment; call only after validation."""
        action_set = ActionSet.from_lists(self.action_set, num_arms=len(self.arms))
        laws = [arm.law() for arm in self.arms]
        if self.kind == EnvironmentKind.GAUSSIAN:
            return EnvironmentInstance.gaussian(laws, action_set, self.variance_bounds.N, self.variance_bounds.M)
        return EnvironmentInstance.bounded(laws, action_set)


class AlgorithmOverrides(_Strict):
    epsilon: Optional[float] = Field(None, gt=0, description="d-sdcb grid step; default alpha/((L+1)T)")
    round_counter: Optional[RoundCounter] = None
    support_cap: Optional[int] = Field(None, gt=0)
    bound_m: Optional[float] = Field(None, gt=0, description="cucb-g M, defaults to the environment's")
    bound_n: Optional[float] = Field(None, gt=0, description="cucb-g N, defaults to the environment's")

    def given(self) -> List[str]:
        return [name for name, value in self if value is not None]


class AlgorithmSpec(_Strict):
    name: AlgorithmName
    label: Optional[str] = Field(None, min_length=1, description="Name used in traces and aggregates")
    overrides: AlgorithmOverrides = Field(default_factory=AlgorithmOverrides)


class SeedConfig(_Strict):
    count: int = Field(default_factory=lambda: get_settings().default_seeds, ge=1)
    master_seed: int = Field(0, ge=0)


class OutputConfig(_Strict):
    directory: str = "results"
    trace_file: str = "trace.csv"
    summary_file: str = "summary.json"


class ExperimentConfig(_Strict):
    """Everything needed to reproduce one experiment"""
    environment: EnvironmentSpec
    alpha: float
    horizon: int = Field(..., ge=1, description="T, total rounds per run including the init phase")
    seeds: SeedConfig = Field(default_factory=SeedConfig)
    algorithms: List[AlgorithmSpec] = Field(..., min_length=1)
    output: OutputConfig = Field(default_factory=OutputConfig)
    workers: int = Field(default_factory=lambda: get_settings().default_workers, ge=1)
    thinning: int = Field(1, ge=1, description="Record every k-th round in the trace")

    @field_validator("alpha")
    @classmethod
    def _alpha_in_range(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError("alpha out of range: must satisfy 0 < alpha < 1")
        return v

    def algorithm_labels(self) -> List[str]:
        """
        Trace label of every algorithm entry, in config order.

        An explicit label wins; otherwise the algorithm name, suffixed with
        `#k` (k counting from 1) when the name appears more than once.
        """
        names = [spec.name.value for spec in self.algorithms]
        seen: Dict[str, int] = {}
        labels = []
        for spec, name in zip(self.algorithms, names):
            seen[name] = seen.get(name, 0) + 1
            if spec.label:
                labels.append(spec.label)
            elif names.count(name) > 1:
                labels.append(f"{name}#{seen[name]}")
            else:
                labels.append(name)
        return labels
