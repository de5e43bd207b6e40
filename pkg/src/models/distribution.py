"""
Finite-support probability distributions and the small value types used
alongside them (Gaussian parameters, risk level).

DiscreteDistribution is numpy-backed and immutable; it carries empirical
distributions, their dominant shifts, grid-discretized copies and the
convolutions built from them.
"""
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.utils.errors import InvalidDistributionError

MASS_TOLERANCE = 1e-9
# Values closer than this are the same atom
MERGE_TOLERANCE = 1e-12


def merge_atoms(values: np.ndarray, masses: np.ndarray, tol: float = MERGE_TOLERANCE) -> Tuple[np.ndarray, np.ndarray]:
    """
    Sort atoms by value and merge each value into the atom started by the
    first value of its run, while it stays within `tol` of that first value.

    The merged atom keeps the smallest value of its run, so a run never
    spans more than `tol`.

    Args:
        values: Atom values (any order)
        masses: Matching masses

    Returns:
        (values, masses) strictly increasing by value
    """
    if values.size == 0:
        return values, masses
    order = np.argsort(values, kind="stable")
    values = values[order]
    masses = masses[order]
    starts = np.flatnonzero(np.concatenate(([True], np.diff(values) > tol)))
    ends = np.append(starts[1:], values.size)
    # a gap above tol always opens an atom; only segments spanning more than tol chained and need splitting
    chained = values[ends - 1] - values[starts] > tol
    extra = []
    for lo, hi in zip(starts[chained], ends[chained]):
        i = int(lo)
        while True:
            i = int(np.searchsorted(values, values[i] + tol, side="right"))
            if i >= hi:
                break
            extra.append(i)
    if extra:
        starts = np.sort(np.concatenate((starts, np.array(extra, dtype=starts.dtype))))
    return values[starts], np.add.reduceat(masses, starts)


def merge_grid_atoms(index: np.ndarray, masses: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Exact merge of integer grid indices."""
    unique, inverse = np.unique(index, return_inverse=True)
    return unique, np.bincount(inverse, weights=masses, minlength=unique.size)


class DiscreteDistribution:
    """
    Distribution with finitely many atoms (value, mass).

    Values are strictly increasing, masses are positive and sum to one.
    Distributions produced by grid discretization also keep the integer grid
    index of every atom, so sums of them stay exactly on the grid.
    """

    __slots__ = ("_values", "_masses", "_cdf", "_grid_step", "_grid_index")

    def __init__(self,
                 values: Sequence[float],
                 masses: Sequence[float],
                 grid_step: Optional[float] = None,
                 grid_index: Optional[Sequence[int]] = None,
                 validate: bool = True):
        """
        Build a distribution, merging duplicate values.

        Args:
            values: Atom values
            masses: Atom masses
            grid_step: Spacing of the grid the atoms live on, if any
            grid_index: Integer grid index of each atom (required with grid_step)
            validate: Skip merging and checks for arrays already known to be valid
        """
        if grid_step is not None:
            if grid_index is None:
                raise InvalidDistributionError("grid_index is required when grid_step is set")
            idx = np.asarray(grid_index, dtype=np.int64)
            m = np.asarray(masses, dtype=float)
            if validate:
                idx, m = merge_grid_atoms(idx, m)
            v = idx * float(grid_step)
        else:
            idx = None
            v = np.asarray(values, dtype=float)
            m = np.asarray(masses, dtype=float)
            if validate:
                if v.shape != m.shape or v.ndim != 1:
                    raise InvalidDistributionError("values and masses must be 1-D arrays of equal length")
                v, m = merge_atoms(v, m)

        if validate:
            self._check(v, m)

        v.setflags(write=False)
        m.setflags(write=False)
        if idx is not None:
            idx.setflags(write=False)
        self._values = v
        self._masses = m
        self._grid_step = None if grid_step is None else float(grid_step)
        self._grid_index = idx
        self._cdf = None

    @staticmethod
    def _check(values: np.ndarray, masses: np.ndarray) -> None:
        if values.size == 0:
            raise InvalidDistributionError("distribution has no atoms")
        if not np.all(np.isfinite(values)):
            raise InvalidDistributionError("atom values must be finite")
        if np.any(masses <= 0):
            raise InvalidDistributionError("atom masses must be positive")
        total = float(masses.sum())
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise InvalidDistributionError(f"masses sum to {total!r}, not 1")

    @classmethod
    def from_atoms(cls, atoms: Iterable[Tuple[float, float]]) -> "DiscreteDistribution":
        """Build from (value, mass) pairs in any order."""
        pairs = list(atoms)
        if not pairs:
            raise InvalidDistributionError("distribution has no atoms")
        values, masses = zip(*pairs)
        return cls(values, masses)

    @classmethod
    def point_mass(cls, value: float) -> "DiscreteDistribution":
        return cls([value], [1.0])

    @classmethod
    def on_grid(cls, grid_index: Sequence[int], masses: Sequence[float], grid_step: float) -> "DiscreteDistribution":
        """Build a distribution whose atoms sit at grid_index * grid_step."""
        return cls(None, masses, grid_step=grid_step, grid_index=grid_index)

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def masses(self) -> np.ndarray:
        return self._masses

    @property
    def grid_step(self) -> Optional[float]:
        return self._grid_step

    @property
    def grid_index(self) -> Optional[np.ndarray]:
        return self._grid_index

    @property
    def cdf(self) -> np.ndarray:
        """Cumulative mass up to and including each atom."""
        if self._cdf is None:
            cdf = np.cumsum(self._masses)
            cdf.setflags(write=False)
            self._cdf = cdf
        return self._cdf

    @property
    def size(self) -> int:
        return int(self._values.size)

    @property
    def atoms(self) -> List[Tuple[float, float]]:
        return list(zip(self._values.tolist(), self._masses.tolist()))

    def mean(self) -> float:
        return float(np.dot(self._values, self._masses))

    def cdf_at(self, x: float) -> float:
        """F(x) = P(X <= x)."""
        pos = int(np.searchsorted(self._values, x, side="right"))
        return 0.0 if pos == 0 else float(self.cdf[pos - 1])

    def min_value(self) -> float:
        return float(self._values[0])

    def max_value(self) -> float:
        return float(self._values[-1])

    def shifted(self, offset: float) -> "DiscreteDistribution":
        return DiscreteDistribution(self._values + offset, self._masses.copy(), validate=False)

    def scaled(self, factor: float) -> "DiscreteDistribution":
        if factor <= 0:
            raise InvalidDistributionError("scale factor must be positive")
        return DiscreteDistribution(self._values * factor, self._masses.copy(), validate=False)

    def sample(self, rng: np.random.Generator) -> float:
        """Draw one value by inverting the CDF with a single uniform."""
        pos = int(np.searchsorted(self.cdf, rng.random(), side="right"))
        return float(self._values[min(pos, self.size - 1)])

    def allclose(self, other: "DiscreteDistribution", value_tol: float = 1e-12, mass_tol: float = 1e-12) -> bool:
        """Atom-for-atom comparison within tolerances."""
        return (self.size == other.size
                and bool(np.allclose(self._values, other._values, rtol=0.0, atol=value_tol))
                and bool(np.allclose(self._masses, other._masses, rtol=0.0, atol=mass_tol)))

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        shown = ", ".join(f"({v:.6g}, {m:.6g})" for v, m in self.atoms[:6])
        more = ", ..." if self.size > 6 else ""
        grid = f", grid_step={self._grid_step:g}" if self._grid_step is not None else ""
        return f"DiscreteDistribution([{shown}{more}]{grid})"


class GaussianParams(BaseModel):
    """Mean and standard deviation of a normal law"""
    model_config = ConfigDict(frozen=True)

    mean: float
    std_dev: float = Field(..., gt=0, description="Standard deviation, strictly positive")


class RiskLevel(BaseModel):
    """CVaR level alpha in the open interval (0, 1)"""
    model_config = ConfigDict(frozen=True)

    alpha: float

    @field_validator("alpha")
    @classmethod
    def _in_unit_interval(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValueError("alpha out of range: must satisfy 0 < alpha < 1")
        return v


def as_alpha(alpha) -> float:
    """Accept a RiskLevel or a bare float and return the checked float."""
    if isinstance(alpha, RiskLevel):
        return alpha.alpha
    return RiskLevel(alpha=float(alpha)).alpha
