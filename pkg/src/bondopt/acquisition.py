"""Infill merit functions and the particle-swarm maximizer that drives them.

The improvement criterion compares the model prediction at the feasible
incumbent against the prediction at a candidate, scaled by the ordinary-
kriging standard deviation; multiplying by the predicted probability of
feasibility steers the search away from configurations likely to fail.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import norm

from .errors import DomainError

__all__ = ["PsoSettings", "modified_ei", "constrained_ei", "pso_maximize"]

_SD_FLOOR = 1e-12


@dataclass(frozen=True)
class PsoSettings:
    swarm_size: int = 50
    max_iterations: int = 1800
    max_stall_iterations: int = 10
    tolerance: float = 1e-6
    inertia: float = 0.729
    cognitive: float = 1.49445
    social: float = 1.49445
    velocity_clamp: float = 0.2
    seed: int = 0

    def __post_init__(self):
        if self.swarm_size < 2:
            raise DomainError("swarm size must be at least 2")
        if self.tolerance <= 0:
            raise DomainError("tolerance must be positive")


def modified_ei(z_min, z_star, s_star):
    """Expected improvement of a candidate over the incumbent prediction.

    (z_min - z*) Phi((z_min - z*)/s*) + s* phi((z_min - z*)/s*), with the
    degenerate limit max(z_min - z*, 0) when s* falls below 1e-12.
    Vectorized over z_star / s_star.
    """
    z_star = np.asarray(z_star, dtype=float)
    s_star = np.asarray(s_star, dtype=float)
    if np.any(s_star < 0):
        raise DomainError("prediction standard deviation must be non-negative")
    diff = z_min - z_star
    safe_s = np.where(s_star < _SD_FLOOR, 1.0, s_star)
    u = diff / safe_s
    value = diff * norm.cdf(u) + safe_s * norm.pdf(u)
    value = np.where(s_star < _SD_FLOOR, np.maximum(diff, 0.0), value)
    # The expression is non-negative analytically; clip float cancellation.
    value = np.maximum(value, 0.0)
    return float(value) if value.ndim == 0 else value


def constrained_ei(mei_value, pf):
    """Improvement merit weighted by the probability of feasibility."""
    return np.asarray(mei_value) * np.asarray(pf)


def pso_maximize(objective, d: int, settings: PsoSettings):
    """Global-best PSO over the unit cube.

    ``objective`` receives an (m, d) array of candidate rows and returns m
    values; non-finite entries are treated as -inf. The global best is
    reduced in particle-index order, so runs are deterministic for a fixed
    seed. Stops at ``max_iterations`` or after ``max_stall_iterations``
    consecutive iterations improving the best value by less than
    ``tolerance``.
    """
    rng = np.random.default_rng(settings.seed)
    m = settings.swarm_size
    vmax = settings.velocity_clamp  # unit cube: range is 1 per dimension

    pos = rng.random((m, d))
    vel = rng.uniform(-vmax, vmax, size=(m, d))

    def evaluate(points):
        vals = np.asarray(objective(points), dtype=float).ravel()
        if vals.shape[0] != points.shape[0]:
            raise DomainError("objective must return one value per candidate row")
        return np.where(np.isfinite(vals), vals, -np.inf)

    pbest = pos.copy()
    pbest_val = evaluate(pos)
    g_idx = int(np.argmax(pbest_val))
    gbest = pbest[g_idx].copy()
    gbest_val = float(pbest_val[g_idx])

    stall = 0
    for _ in range(settings.max_iterations):
        r1 = rng.random((m, d))
        r2 = rng.random((m, d))
        vel = (
            settings.inertia * vel
            + settings.cognitive * r1 * (pbest - pos)
            + settings.social * r2 * (gbest - pos)
        )
        np.clip(vel, -vmax, vmax, out=vel)
        pos = np.clip(pos + vel, 0.0, 1.0)
        vals = evaluate(pos)

        improved = vals > pbest_val
        pbest[improved] = pos[improved]
        pbest_val[improved] = vals[improved]

        best_idx = int(np.argmax(pbest_val))  # first max == index-order reduction
        new_val = float(pbest_val[best_idx])
        if new_val > gbest_val + settings.tolerance:
            stall = 0
        else:
            stall += 1
        if new_val > gbest_val:
            gbest_val = new_val
            gbest = pbest[best_idx].copy()
        if stall >= settings.max_stall_iterations:
            break
    return gbest, gbest_val
