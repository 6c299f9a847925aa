"""Space-filling designs: Latin hypercube initialization and Halton exploration."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .domain import Configuration, DesignSpace
from .errors import DomainError

_HALTON_BASES = (2, 3, 5, 7, 11, 13)


class DesignMethod(enum.Enum):
    LHS = "lhs"
    HALTON = "halton"


@dataclass(frozen=True)
class Design:
    points: tuple[Configuration, ...]
    seed: int
    method: DesignMethod


def latin_hypercube(n: int, space: DesignSpace, seed: int) -> Design:
    """Stratified design: one sample per marginal stratum of width 1/n.

    Binary and integer dimensions are sampled in continuous unit space and
    then rounded by the design-space decode rules, so their strata collapse.
    """
    if n < 1:
        raise DomainError("design size must be at least 1")
    rng = np.random.default_rng(seed)
    d = space.dimension
    unit = np.empty((n, d))
    for k in range(d):
        strata = rng.permutation(n)
        unit[:, k] = (strata + rng.random(n)) / n
    points = tuple(space.decode(unit[i]) for i in range(n))
    return Design(points=points, seed=seed, method=DesignMethod.LHS)


def _radical_inverse(i: int, base: int) -> float:
    f = 1.0
    r = 0.0
    while i > 0:
        f /= base
        r += f * (i % base)
        i //= base
    return r


def halton_unit(n: int, d: int, skip: int = 0) -> np.ndarray:
    """Unit-cube Halton points, one prime base per dimension, index from skip+1."""
    if d > len(_HALTON_BASES):
        raise DomainError(f"at most {len(_HALTON_BASES)} Halton dimensions supported")
    out = np.empty((n, d))
    for k in range(d):
        base = _HALTON_BASES[k]
        out[:, k] = [_radical_inverse(skip + i + 1, base) for i in range(n)]
    return out


def halton(n: int, space: DesignSpace, skip: int = 0) -> Design:
    """Deterministic low-discrepancy design mapped to the space bounds."""
    if n < 1:
        raise DomainError("design size must be at least 1")
    unit = halton_unit(n, space.dimension, skip)
    points = tuple(space.decode(unit[i]) for i in range(n))
    return Design(points=points, seed=skip, method=DesignMethod.HALTON)
