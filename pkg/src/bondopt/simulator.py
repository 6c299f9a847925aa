"""Synthetic plasma-bonding process model used for benchmarking.

The response surface is an invented stand-in with the qualitative structure
of the real process: a plasma "dose" drives surface activation, activation
drives contact angle and hence strength, overdosing burns the substrate,
and cost grows with pre-processing and with torch passes per unit speed.
Measurement noise enters through the contact angle only, multiplicatively,
with standard deviation gamma times its mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from ._rng import stream_rng
from .domain import Configuration, DesignSpace, FailureMode, Outcome, bonding_design_space
from .errors import DomainError

# Fixed constants of the response surface (contact angle in degrees, MPa).
_CA_SPAN = 95.0
_CA_FLOOR = 5.0
_CA_MIN, _CA_MAX = 1.0, 120.0
_TS_SCALE = 42.0
_TS_CA_REF = 105.0


@dataclass(frozen=True)
class SimulatorSettings:
    gamma: float = 0.30
    seed: int = 0
    burn_threshold: float = 0.88
    adhesion_threshold: float = 0.60
    substrate_threshold: float = 34.0
    base_cost: float = 0.6
    preprocessing_cost: float = 0.7
    pass_cost: float = 0.004

    def __post_init__(self):
        if self.gamma < 0:
            raise DomainError("gamma must be non-negative")
        if not 0 < self.burn_threshold <= 1.5:
            raise DomainError("burn_threshold out of range")
        if not 0 <= self.adhesion_threshold <= 1:
            raise DomainError("adhesion_threshold out of range")
        if not 0 <= self.substrate_threshold <= _TS_SCALE:
            raise DomainError("substrate_threshold out of range")


def _dose_activation(unit: np.ndarray, pre: float) -> tuple[float, float]:
    p, s, h, n, t = unit[1], unit[2], unit[3], unit[4], unit[5]
    dose = p * (1 - 0.6 * s) * (1 - 0.5 * h) * (0.4 + 0.6 * math.sqrt(n))
    activation = 0.35 + 0.15 * pre + 0.65 * (1 - math.exp(-4 * dose)) * math.exp(-1.2 * t)
    return dose, min(max(activation, 0.0), 1.0)


def simulate_once(
    config: Configuration,
    settings: SimulatorSettings,
    noise_draw: float,
    space: DesignSpace | None = None,
) -> Outcome:
    """Evaluate one replication; ``noise_draw`` is a standard normal deviate."""
    space = space or bonding_design_space()
    unit = space.encode(config)
    pre = config.values[0]
    passes = config.values[4]
    speed = config.values[2]

    dose, activation = _dose_activation(unit, pre)
    mean_ca = _CA_SPAN * (1 - activation) + _CA_FLOOR
    ca = min(max(mean_ca * (1 + settings.gamma * noise_draw), _CA_MIN), _CA_MAX)
    strength = _TS_SCALE * max(0.0, 1 - ca / _TS_CA_REF)

    visual_damage = bool(dose > settings.burn_threshold)
    if activation < settings.adhesion_threshold:
        mode = FailureMode.ADHESION
    elif strength >= settings.substrate_threshold:
        mode = FailureMode.SUBSTRATE
    else:
        mode = FailureMode.COHESIVE

    cost = (
        settings.base_cost
        + settings.preprocessing_cost * pre
        + settings.pass_cost * passes * (100.0 / speed)
    )
    return Outcome(strength=strength, cost=cost, failure_mode=mode, visual_damage=visual_damage)


def simulate(
    config: Configuration,
    r: int,
    settings: SimulatorSettings,
    rng: np.random.Generator | None = None,
) -> list[Outcome]:
    """Run ``r`` independent replications, consuming ``r`` noise draws in order."""
    if r < 1:
        raise DomainError("replication count must be at least 1")
    if rng is None:
        rng = stream_rng(settings.seed, "simulator")
    draws = rng.standard_normal(r)
    return [simulate_once(config, settings, float(z)) for z in draws]


def make_evaluator(settings: SimulatorSettings, r: int):
    """Evaluator closure over a private simulator noise stream.

    Returns a callable Configuration -> list of r Outcomes, deterministic
    given the settings seed and the call order.
    """
    rng = stream_rng(settings.seed, "simulator")

    def evaluate(config: Configuration) -> list[Outcome]:
        return simulate(config, r, settings, rng)

    return evaluate


def noiseless(settings: SimulatorSettings) -> SimulatorSettings:
    """The same process with the contact-angle noise switched off."""
    return replace(settings, gamma=0.0)
