"""Domain types for the bonding design space, Pareto dominance, and record I/O.

Objectives are always stored in minimization space as (production cost,
negated tensile strength). Strength is negated exactly once, at ingestion,
so every downstream comparison minimizes both components.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DomainError, FormatError

__all__ = [
    "VariableKind",
    "VariableSpec",
    "DesignSpace",
    "Configuration",
    "ObjectiveVector",
    "FailureMode",
    "Outcome",
    "ReplicatedObservation",
    "bonding_design_space",
    "dominates",
    "strictly_dominates",
    "pareto_filter",
    "round_half_up",
    "format_configuration",
    "parse_configuration",
    "format_outcome",
    "parse_outcome",
]


class VariableKind(enum.Enum):
    BINARY = "binary"
    INTEGER = "integer"
    CONTINUOUS = "continuous"


@dataclass(frozen=True)
class VariableSpec:
    """One process variable: id, kind, inclusive bounds, display unit."""

    id: str
    kind: VariableKind
    lower: float
    upper: float
    unit: str = ""

    def __post_init__(self):
        if self.kind is VariableKind.BINARY:
            if (self.lower, self.upper) != (0.0, 1.0):
                raise DomainError(f"{self.id}: binary variables use the encoded domain {{0,1}}")
        elif not self.lower < self.upper:
            raise DomainError(f"{self.id}: lower bound must be below upper bound")


def round_half_up(x: float) -> int:
    """Round to the nearest integer, ties away from zero toward +inf."""
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class DesignSpace:
    """Ordered list of process variables with encode/decode to the unit cube."""

    variables: tuple[VariableSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        ids = [v.id for v in self.variables]
        if len(set(ids)) != len(ids):
            raise DomainError("variable ids must be unique")

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def validate_values(self, values: Sequence[float]) -> None:
        if len(values) != self.dimension:
            raise DomainError(
                f"expected {self.dimension} values, got {len(values)}"
            )
        for spec, v in zip(self.variables, values):
            if not math.isfinite(v):
                raise DomainError(f"{spec.id}: value must be finite")
            if v < spec.lower or v > spec.upper:
                raise DomainError(
                    f"{spec.id}: value {v} outside [{spec.lower}, {spec.upper}]"
                )
            if spec.kind is VariableKind.BINARY and v not in (0.0, 1.0):
                raise DomainError(f"{spec.id}: binary value must be 0 or 1, got {v}")
            if spec.kind is VariableKind.INTEGER and v != int(v):
                raise DomainError(f"{spec.id}: integer value required, got {v}")

    def encode(self, config: "Configuration") -> np.ndarray:
        """Affine min-max map of a configuration onto [0,1]^d."""
        self.validate_values(config.values)
        out = np.empty(self.dimension)
        for k, (spec, v) in enumerate(zip(self.variables, config.values)):
            out[k] = (v - spec.lower) / (spec.upper - spec.lower)
        return out

    def decode(self, unit: Sequence[float]) -> "Configuration":
        """Inverse of :meth:`encode`; applies binary/integer rounding rules."""
        if len(unit) != self.dimension:
            raise DomainError(f"expected {self.dimension} coordinates, got {len(unit)}")
        values = []
        for spec, u in zip(self.variables, unit):
            u = min(max(float(u), 0.0), 1.0)
            if spec.kind is VariableKind.BINARY:
                values.append(1.0 if u >= 0.5 else 0.0)
                continue
            v = spec.lower + u * (spec.upper - spec.lower)
            if spec.kind is VariableKind.INTEGER:
                v = float(round_half_up(v))
                v = min(max(v, spec.lower), spec.upper)
            values.append(v)
        return Configuration(tuple(values))

    def encode_array(self, values: np.ndarray) -> np.ndarray:
        """Vectorized encode of an (n, d) array of natural-unit rows."""
        lowers = np.array([v.lower for v in self.variables])
        uppers = np.array([v.upper for v in self.variables])
        return (np.asarray(values, dtype=float) - lowers) / (uppers - lowers)

    def decode_array(self, unit: np.ndarray) -> np.ndarray:
        """Vectorized decode of an (n, d) unit-cube array, with rounding rules."""
        unit = np.clip(np.asarray(unit, dtype=float), 0.0, 1.0)
        out = np.empty_like(unit)
        for k, spec in enumerate(self.variables):
            col = unit[:, k]
            if spec.kind is VariableKind.BINARY:
                out[:, k] = np.where(col >= 0.5, 1.0, 0.0)
            else:
                v = spec.lower + col * (spec.upper - spec.lower)
                if spec.kind is VariableKind.INTEGER:
                    v = np.clip(np.floor(v + 0.5), spec.lower, spec.upper)
                out[:, k] = v
        return out


def bonding_design_space() -> DesignSpace:
    """The six plasma-treatment process variables and their ranges."""
    return DesignSpace(
        (
            VariableSpec("v1", VariableKind.BINARY, 0.0, 1.0, "yes/no"),
            VariableSpec("v2", VariableKind.CONTINUOUS, 300.0, 500.0, "W"),
            VariableSpec("v3", VariableKind.CONTINUOUS, 5.0, 250.0, "mm/s"),
            VariableSpec("v4", VariableKind.CONTINUOUS, 0.2, 2.0, "cm"),
            VariableSpec("v5", VariableKind.INTEGER, 1.0, 50.0, "passes"),
            VariableSpec("v6", VariableKind.CONTINUOUS, 1.0, 120.0, "min"),
        )
    )


@dataclass(frozen=True)
class Configuration:
    """A single process setting, in natural units (binary stored as 0/1)."""

    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    def as_array(self) -> np.ndarray:
        return np.array(self.values)


@dataclass(frozen=True)
class ObjectiveVector:
    """Objectives in minimization space: (production cost, -tensile strength)."""

    pc: float
    neg_ts: float

    @classmethod
    def from_outcome(cls, strength: float, cost: float) -> "ObjectiveVector":
        return cls(pc=cost, neg_ts=-strength)

    def as_tuple(self) -> tuple[float, float]:
        return (self.pc, self.neg_ts)

    def as_array(self) -> np.ndarray:
        return np.array([self.pc, self.neg_ts])


class FailureMode(enum.Enum):
    ADHESION = "adhesion"
    COHESIVE = "cohesive"
    SUBSTRATE = "substrate"


@dataclass(frozen=True)
class Outcome:
    """One replication's measured result for a configuration."""

    strength: float
    cost: float
    failure_mode: FailureMode
    visual_damage: bool

    @property
    def feasible(self) -> bool:
        # Feasible means: no visual damage and the stress test did not fail
        # at the adhesive/substrate interface.
        return (not self.visual_damage) and self.failure_mode is not FailureMode.ADHESION

    def objectives(self) -> ObjectiveVector:
        return ObjectiveVector.from_outcome(self.strength, self.cost)


@dataclass(frozen=True)
class ReplicatedObservation:
    """All replications of one configuration plus derived summary statistics.

    ``pf`` is the fraction of feasible replications; a configuration counts
    as majority-feasible when pf >= 0.5 (the tie at exactly one half is
    feasible because the constraint is the non-strict 0.5 - pf <= 0).
    """

    config: Configuration
    outcomes: tuple[Outcome, ...]
    mean_objectives: ObjectiveVector = field(init=False)
    var_objectives: tuple[float, float] = field(init=False)
    pf: float = field(init=False)
    majority_feasible: bool = field(init=False)

    def __post_init__(self):
        outcomes = tuple(self.outcomes)
        if len(outcomes) < 1:
            raise DomainError("an observation needs at least one replication")
        object.__setattr__(self, "outcomes", outcomes)
        objs = np.array([o.objectives().as_tuple() for o in outcomes])
        mean = objs.mean(axis=0)
        if len(outcomes) > 1:
            var = objs.var(axis=0, ddof=1)
        else:
            var = np.zeros(2)
        pf = sum(1 for o in outcomes if o.feasible) / len(outcomes)
        object.__setattr__(self, "mean_objectives", ObjectiveVector(float(mean[0]), float(mean[1])))
        object.__setattr__(self, "var_objectives", (float(var[0]), float(var[1])))
        object.__setattr__(self, "pf", pf)
        object.__setattr__(self, "majority_feasible", pf >= 0.5)

    @property
    def replications(self) -> int:
        return len(self.outcomes)


def dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool:
    """True iff a <= b componentwise and a < b in at least one component."""
    at, bt = a.as_tuple(), b.as_tuple()
    return all(x <= y for x, y in zip(at, bt)) and any(x < y for x, y in zip(at, bt))


def strictly_dominates(a: ObjectiveVector, b: ObjectiveVector) -> bool:
    """True iff a < b in every component."""
    return all(x < y for x, y in zip(a.as_tuple(), b.as_tuple()))


def pareto_filter(points: Sequence[ObjectiveVector]) -> list[int]:
    """Indices of all points not dominated by any other point.

    Duplicates of a non-dominated point are all retained. Runs an
    O(n log n) sweep: after sorting by (pc, neg_ts), a point survives iff
    its neg_ts is strictly below every point at strictly smaller pc and is
    minimal within its own pc group.
    """
    n = len(points)
    if n == 0:
        return []
    order = sorted(range(n), key=lambda i: points[i].as_tuple())
    keep: list[int] = []
    best_prev = math.inf  # min neg_ts over all strictly smaller pc
    i = 0
    while i < n:
        j = i
        pc = points[order[i]].pc
        while j < n and points[order[j]].pc == pc:
            j += 1
        group = order[i:j]
        group_min = min(points[g].neg_ts for g in group)
        if group_min < best_prev:
            keep.extend(g for g in group if points[g].neg_ts == group_min)
        best_prev = min(best_prev, group_min)
        i = j
    return sorted(keep)


# ---------------------------------------------------------------------------
# Canonical flat key=value records (shared by the CLI and the HTTP service).

_VAR_IDS = ("v1", "v2", "v3", "v4", "v5", "v6")


def _format_number(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(v)


def format_configuration(config: Configuration) -> str:
    """Render a configuration as ``v1=.. v2=.. ... v6=..``."""
    return " ".join(f"{k}={_format_number(v)}" for k, v in zip(_VAR_IDS, config.values))


def parse_configuration(record: str, space: DesignSpace | None = None) -> Configuration:
    """Parse the canonical configuration record; validates bounds when a space is given."""
    fields = _parse_record(record)
    missing = [k for k in _VAR_IDS if k not in fields]
    if missing:
        raise FormatError(f"configuration record missing fields: {', '.join(missing)}")
    try:
        values = tuple(float(fields[k]) for k in _VAR_IDS)
    except ValueError as exc:
        raise FormatError(f"non-numeric value in configuration record: {exc}") from None
    config = Configuration(values)
    if space is not None:
        space.validate_values(config.values)
    return config


def format_outcome(outcome: Outcome) -> str:
    return (
        f"strength={_format_number(outcome.strength)} "
        f"cost={_format_number(outcome.cost)} "
        f"failure_mode={outcome.failure_mode.value} "
        f"visual_damage={'true' if outcome.visual_damage else 'false'}"
    )


def parse_outcome(record: str | dict) -> Outcome:
    """Parse one outcome from a record string or a field mapping."""
    fields = _parse_record(record) if isinstance(record, str) else {str(k): str(v) for k, v in record.items()}
    for key in ("strength", "cost", "failure_mode", "visual_damage"):
        if key not in fields:
            raise FormatError(f"outcome record missing field: {key}")
    try:
        strength = float(fields["strength"])
        cost = float(fields["cost"])
    except ValueError as exc:
        raise FormatError(f"non-numeric value in outcome record: {exc}") from None
    mode_text = fields["failure_mode"].strip().lower()
    try:
        mode = FailureMode(mode_text)
    except ValueError:
        valid = ", ".join(m.value for m in FailureMode)
        raise FormatError(f"unknown failure_mode {mode_text!r}; valid values: {valid}") from None
    damage_text = fields["visual_damage"].strip().lower()
    if damage_text in ("true", "1", "yes"):
        damage = True
    elif damage_text in ("false", "0", "no"):
        damage = False
    else:
        raise FormatError(f"visual_damage must be true or false, got {damage_text!r}")
    return Outcome(strength=strength, cost=cost, failure_mode=mode, visual_damage=damage)


def _parse_record(record: str) -> dict[str, str]:
    fields: dict[str, str] = {}
    for token in record.split():
        if "=" not in token:
            raise FormatError(f"malformed record token {token!r}; expected key=value")
        key, _, value = token.partition("=")
        fields[key] = value
    return fields
