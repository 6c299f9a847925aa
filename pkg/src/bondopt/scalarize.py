"""Objective normalization, augmented Tchebycheff scalarization, weight schedule."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ._rng import _STREAMS
from .domain import ObjectiveVector, ReplicatedObservation
from .errors import DomainError

DEFAULT_RHO = 0.05

# Evenly spaced two-objective weight grid; a full cycle visits each vector once.
WEIGHT_GRID_SIZE = 11


@dataclass(frozen=True)
class WeightVector:
    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if any(v < 0 for v in vals):
            raise DomainError("weights must be non-negative")
        if abs(sum(vals) - 1.0) > 1e-12:
            raise DomainError("weights must sum to 1")


@dataclass(frozen=True)
class NormalizationBounds:
    """Per-objective min/max of the sample means seen so far."""

    mins: tuple[float, float]
    maxs: tuple[float, float]

    def __post_init__(self):
        if any(lo > hi for lo, hi in zip(self.mins, self.maxs)):
            raise DomainError("normalization min above max")

    @classmethod
    def from_observations(cls, observations: Sequence[ReplicatedObservation]) -> "NormalizationBounds":
        if not observations:
            raise DomainError("bounds need at least one observation")
        means = np.array([o.mean_objectives.as_tuple() for o in observations])
        lo = means.min(axis=0)
        hi = means.max(axis=0)
        return cls(mins=(float(lo[0]), float(lo[1])), maxs=(float(hi[0]), float(hi[1])))


def normalize(objectives: ObjectiveVector, bounds: NormalizationBounds) -> np.ndarray:
    """Min-max scale each objective; a collapsed range maps to 0.5."""
    out = np.empty(2)
    for j, v in enumerate(objectives.as_tuple()):
        lo, hi = bounds.mins[j], bounds.maxs[j]
        out[j] = 0.5 if hi == lo else (v - lo) / (hi - lo)
    return out


def tchebycheff(f: Sequence[float], weights: WeightVector, rho: float = DEFAULT_RHO) -> float:
    """max_j w_j f_j + rho * sum_j w_j f_j."""
    if rho < 0:
        raise DomainError("rho must be non-negative")
    if len(f) != len(weights.values):
        raise DomainError(f"expected {len(weights.values)} objectives, got {len(f)}")
    weighted = [w * v for w, v in zip(weights.values, f)]
    return max(weighted) + rho * sum(weighted)


def weight_grid(m: int = 2) -> list[WeightVector]:
    if m != 2:
        raise DomainError("the 11-point schedule is specific to two objectives")
    return [WeightVector((l / 10, 1 - l / 10)) for l in range(WEIGHT_GRID_SIZE)]


def next_weights(iteration: int, seed: int) -> WeightVector:
    """Weight for a 1-based iteration: without-replacement cycles over the grid.

    Each 11-iteration cycle is a fresh seeded shuffle of the grid, so the
    result is a pure function of (iteration, seed).
    """
    if iteration < 1:
        raise DomainError("iteration must be at least 1")
    cycle, pos = divmod(iteration - 1, WEIGHT_GRID_SIZE)
    rng = np.random.default_rng(np.random.SeedSequence([int(seed), _STREAMS["weights"], cycle]))
    perm = rng.permutation(WEIGHT_GRID_SIZE)
    return weight_grid()[perm[pos]]


def scalarize_observation(
    obs: ReplicatedObservation,
    weights: WeightVector,
    rho: float,
    bounds: NormalizationBounds,
) -> tuple[float, float]:
    """Scalarize each replication, then summarize.

    Returns (sample mean of the per-replication scalars, sample variance of
    that mean i.e. var/r); the variance is 0 for a single replication.
    """
    scalars = np.array(
        [tchebycheff(normalize(o.objectives(), bounds), weights, rho) for o in obs.outcomes]
    )
    mean = float(scalars.mean())
    if len(scalars) > 1:
        var_of_mean = float(scalars.var(ddof=1) / len(scalars))
    else:
        var_of_mean = 0.0
    return mean, var_of_mean
