"""
Exception types shared across the simulation library.
"""
from typing import List, Optional

from pydantic import BaseModel


class Violation(BaseModel):
    """A single failed check, reported as data rather than raised"""
    path: str
    message: str
    line: Optional[int] = None

    def __str__(self) -> str:
        text = f"{self.path}: {self.message}" if self.path else self.message
        return f"{text} (line {self.line})" if self.line else text


class CvarBanditError(Exception):
    """Base class for every error raised by this package"""


class InvalidDistributionError(CvarBanditError, ValueError):
    """A distribution breaks its type invariants (masses, ordering, finiteness)"""


class SupportExplosionError(CvarBanditError):
    """A convolution produced more atoms than the configured cap"""

    def __init__(self, atoms: int, cap: int):
        self.atoms = atoms
        self.cap = cap
        super().__init__(
            f"support explosion: {atoms} atoms exceeds cap of {cap}; "
            f"use the discretized algorithm (d-sdcb) for this instance"
        )

    def __reduce__(self):
        return type(self), (self.atoms, self.cap)


class UnpulledArmError(CvarBanditError):
    """An index was requested for an arm without any samples"""

    def __init__(self, arm_id: int):
        self.arm_id = arm_id
        super().__init__(f"unpulled arm: {arm_id}")

    def __reduce__(self):
        return type(self), (self.arm_id,)


class VarianceUndefinedError(CvarBanditError):
    """Sample variance needs at least two samples"""

    def __init__(self, arm_id: int, count: int):
        self.arm_id = arm_id
        self.count = count
        super().__init__(f"variance undefined for arm {arm_id}: only {count} sample(s)")

    def __reduce__(self):
        return type(self), (self.arm_id, self.count)


class ActionSetError(CvarBanditError, ValueError):
    """A super arm or reward does not fit the action set"""


class ConfigError(CvarBanditError):
    """An experiment config failed validation; carries every violation"""

    def __init__(self, violations: List[Violation], source: Optional[str] = None):
        self.violations = violations
        self.source = source
        where = f" in {source}" if source else ""
        lines = "\n".join(f"  - {v}" for v in violations)
        super().__init__(f"{len(violations)} config violation(s){where}:\n{lines}")

    def __reduce__(self):
        return type(self), (self.violations, self.source)


class RunError(CvarBanditError):
    """A single simulation run failed; the run identity is attached"""

    def __init__(self, algorithm: str, run_id: int, master_seed: int, cause: BaseException):
        self.algorithm = algorithm
        self.run_id = run_id
        self.master_seed = master_seed
        self.cause = cause
        super().__init__(
            f"run failed (algorithm={algorithm}, run_id={run_id}, seed={master_seed}): {cause}"
        )

    def __reduce__(self):
        return type(self), (self.algorithm, self.run_id, self.master_seed, self.cause)


class HorizonError(CvarBanditError, ValueError):
    """The horizon cannot hold the algorithm's initialization phase"""

    def __init__(self, horizon: int, init_rounds: int, algorithm: str):
        self.horizon = horizon
        self.init_rounds = init_rounds
        self.algorithm = algorithm
        super().__init__(
            f"horizon {horizon} is shorter than the {init_rounds}-round initialization of {algorithm}"
        )

    def __reduce__(self):
        return type(self), (self.horizon, self.init_rounds, self.algorithm)
