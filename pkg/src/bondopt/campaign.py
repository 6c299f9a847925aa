"""The sequential optimization engine: initialization, per-iteration model
refits, infill selection, ask-tell interface, and campaign persistence.

A campaign evaluates ``init_size + iterations`` configurations in total,
each with a fixed replication count. Each infill iteration draws a fresh
scalarization weight, refits the kriging and feasibility models from
scratch on everything observed so far, and proposes the configuration
maximizing the feasibility-weighted expected improvement.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from ._rng import stream_seed
from .acquisition import PsoSettings, constrained_ei, modified_ei, pso_maximize
from .doe import latin_hypercube
from .domain import (
    Configuration,
    DesignSpace,
    ObjectiveVector,
    Outcome,
    ReplicatedObservation,
    VariableKind,
    VariableSpec,
    bonding_design_space,
)
from .errors import BudgetExhaustedError, DomainError, FormatError, StateError
from .feasibility import FeasibilityClassifier
from .metrics import DEFAULT_REFERENCE, FrontReport
from .scalarize import NormalizationBounds, next_weights, scalarize_observation
from .surrogate import StochasticKriging

SCHEMA_VERSION = 1
_DOCUMENT_KIND = "bondopt-campaign"


@dataclass(frozen=True)
class CampaignSettings:
    space: DesignSpace = field(default_factory=bonding_design_space)
    init_size: int = 20
    iterations: int = 40
    replications: int = 5
    rho: float = 0.05
    ridge: float = 1e-3
    gp_restarts: int = 10
    pso: PsoSettings = field(default_factory=PsoSettings)
    seed: int = 0
    reference: ObjectiveVector = DEFAULT_REFERENCE

    def __post_init__(self):
        if self.init_size < 2:
            raise DomainError("initial design needs at least 2 configurations")
        if self.iterations < 0:
            raise DomainError("iteration budget must be non-negative")
        if self.replications < 1:
            raise DomainError("replication count must be at least 1")
        if self.rho < 0:
            raise DomainError("rho must be non-negative")
        if self.seed < 0:
            raise DomainError("seed must be non-negative")

    @property
    def budget(self) -> int:
        return self.init_size + self.iterations


class Campaign:
    """Single-writer ask-tell state machine over one optimization run."""

    def __init__(self, settings: CampaignSettings):
        self.settings = settings
        self.observations: list[ReplicatedObservation] = []
        self.iteration = 0  # completed infill iterations
        self.pending: Configuration | None = None
        self.remaining_design: list[Configuration] = []
        self.model_log: list[dict] = []

    # -- lifecycle ----------------------------------------------------------

    @classmethod
    def new(cls, settings: CampaignSettings) -> "Campaign":
        campaign = cls(settings)
        design = latin_hypercube(
            settings.init_size, settings.space, stream_seed(settings.seed, "design")
        )
        campaign.remaining_design = list(design.points)
        return campaign

    # -- ask-tell -----------------------------------------------------------

    def suggest(self) -> Configuration:
        """Propose the next configuration; repeat calls return the cached
        pending point until it is told back."""
        if self.pending is not None:
            return self.pending
        if self.remaining_design:
            raise StateError(
                f"{len(self.remaining_design)} initial design configurations still need outcomes"
            )
        if self.iteration >= self.settings.iterations:
            raise BudgetExhaustedError(
                f"budget of {self.settings.budget} configurations exhausted"
            )

        it = self.iteration + 1
        settings = self.settings
        space = settings.space
        weights = next_weights(it, settings.seed)
        bounds = NormalizationBounds.from_observations(self.observations)
        scal = [
            scalarize_observation(o, weights, settings.rho, bounds) for o in self.observations
        ]
        z = np.array([s[0] for s in scal])
        noise = np.array([s[1] for s in scal])
        X = np.array([space.encode(o.config) for o in self.observations])
        labels = np.array([1 if o.majority_feasible else 0 for o in self.observations])

        gp = StochasticKriging(
            n_restarts=settings.gp_restarts,
            random_state=stream_seed(settings.seed, "gp", it),
        ).fit(X, z, noise)
        lr = FeasibilityClassifier(reg=settings.ridge).fit(X, labels)

        feasible = [i for i, o in enumerate(self.observations) if o.majority_feasible]
        if feasible:
            i_min = min(feasible, key=lambda i: (z[i], i))
        else:
            # Degenerate start: nothing is majority-feasible yet, so anchor
            # on the most-nearly-feasible point (ties: lower scalarized mean).
            i_min = min(
                range(len(self.observations)),
                key=lambda i: (-self.observations[i].pf, z[i], i),
            )
        z_min = float(gp.predict(X[i_min : i_min + 1])[0])

        def merit(unit_batch: np.ndarray) -> np.ndarray:
            # Evaluate at the rounded configuration that would actually run.
            rounded = space.encode_array(space.decode_array(unit_batch))
            mu, sd = gp.predict(rounded, return_sd=True)
            return constrained_ei(modified_ei(z_min, mu, sd), lr.predict_pf(rounded))

        pso = dataclasses.replace(settings.pso, seed=stream_seed(settings.seed, "pso", it))
        unit_best, merit_best = pso_maximize(merit, space.dimension, pso)
        config = space.decode(unit_best)

        self.pending = config
        self.model_log.append(
            {
                "iteration": it,
                "lambda": list(weights.values),
                "x_min": list(self.observations[i_min].config.values),
                "gp_sigma2": gp.kernel_params_.sigma2,
                "gp_theta": list(gp.kernel_params_.theta),
                "lr_intercept": lr.intercept_,
                "lr_coef": lr.coef_.tolist(),
                "acquisition": merit_best,
            }
        )
        return config

    def tell(self, config: Configuration, outcomes: Sequence[Outcome]) -> ReplicatedObservation:
        outcomes = tuple(outcomes)
        r = self.settings.replications
        if len(outcomes) != r:
            raise DomainError(f"expected exactly {r} replication outcomes, got {len(outcomes)}")
        observation = ReplicatedObservation(config=config, outcomes=outcomes)
        if self.pending is not None and config == self.pending:
            self.observations.append(observation)
            self.pending = None
            self.iteration += 1
        elif config in self.remaining_design:
            self.remaining_design.remove(config)
            self.observations.append(observation)
        else:
            raise DomainError(
                "configuration is neither the pending suggestion nor an untold design point"
            )
        return observation

    # -- reporting ----------------------------------------------------------

    def current_front(self) -> FrontReport:
        return FrontReport.from_observations(
            self.observations, self.settings.space, reference=self.settings.reference
        )

    def archive_hv(self) -> float:
        return self.current_front().hv

    def hv_history(self) -> list[float]:
        """Cumulative-archive hypervolume after each told configuration."""
        history = []
        partial: list[ReplicatedObservation] = []
        for obs in self.observations:
            partial.append(obs)
            history.append(
                FrontReport.from_observations(
                    partial, self.settings.space, reference=self.settings.reference
                ).hv
            )
        return history

    @property
    def weight_cursor(self) -> int:
        return self.iteration + (1 if self.pending is not None else 0)

    # -- persistence ----------------------------------------------------------

    def to_document(self) -> dict:
        s = self.settings
        return {
            "kind": _DOCUMENT_KIND,
            "schema_version": SCHEMA_VERSION,
            "settings": {
                "space": [
                    {
                        "id": v.id,
                        "kind": v.kind.value,
                        "lower": v.lower,
                        "upper": v.upper,
                        "unit": v.unit,
                    }
                    for v in s.space.variables
                ],
                "init_size": s.init_size,
                "iterations": s.iterations,
                "replications": s.replications,
                "rho": s.rho,
                "ridge": s.ridge,
                "gp_restarts": s.gp_restarts,
                "pso": dataclasses.asdict(s.pso),
                "seed": s.seed,
                "reference": [s.reference.pc, s.reference.neg_ts],
            },
            "iteration": self.iteration,
            "weight_cursor": self.weight_cursor,
            "remaining_design": [list(c.values) for c in self.remaining_design],
            "pending": list(self.pending.values) if self.pending is not None else None,
            "observations": [
                {
                    "config": list(o.config.values),
                    "outcomes": [
                        {
                            "strength": out.strength,
                            "cost": out.cost,
                            "failure_mode": out.failure_mode.value,
                            "visual_damage": out.visual_damage,
                        }
                        for out in o.outcomes
                    ],
                }
                for o in self.observations
            ],
            "model_log": self.model_log,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "Campaign":
        from .domain import FailureMode  # local to keep module imports light

        if not isinstance(doc, dict) or doc.get("kind") != _DOCUMENT_KIND:
            raise FormatError("not a campaign document")
        if doc.get("schema_version") != SCHEMA_VERSION:
            raise FormatError(
                f"unsupported schema_version {doc.get('schema_version')!r}; expected {SCHEMA_VERSION}"
            )
        try:
            raw = doc["settings"]
            space = DesignSpace(
                tuple(
                    VariableSpec(
                        id=v["id"],
                        kind=VariableKind(v["kind"]),
                        lower=v["lower"],
                        upper=v["upper"],
                        unit=v.get("unit", ""),
                    )
                    for v in raw["space"]
                )
            )
            settings = CampaignSettings(
                space=space,
                init_size=raw["init_size"],
                iterations=raw["iterations"],
                replications=raw["replications"],
                rho=raw["rho"],
                ridge=raw["ridge"],
                gp_restarts=raw["gp_restarts"],
                pso=PsoSettings(**raw["pso"]),
                seed=raw["seed"],
                reference=ObjectiveVector(pc=raw["reference"][0], neg_ts=raw["reference"][1]),
            )
            campaign = cls(settings)
            campaign.iteration = int(doc["iteration"])
            campaign.remaining_design = [Configuration(tuple(v)) for v in doc["remaining_design"]]
            campaign.pending = (
                Configuration(tuple(doc["pending"])) if doc["pending"] is not None else None
            )
            campaign.observations = [
                ReplicatedObservation(
                    config=Configuration(tuple(o["config"])),
                    outcomes=tuple(
                        Outcome(
                            strength=out["strength"],
                            cost=out["cost"],
                            failure_mode=FailureMode(out["failure_mode"]),
                            visual_damage=out["visual_damage"],
                        )
                        for out in o["outcomes"]
                    ),
                )
                for o in doc["observations"]
            ]
            campaign.model_log = list(doc.get("model_log", []))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            raise FormatError(f"malformed campaign document: {exc}") from None
        return campaign

    def save(self, destination) -> None:
        Path(destination).write_text(json.dumps(self.to_document(), indent=2), encoding="utf-8")

    @classmethod
    def load(cls, source) -> "Campaign":
        try:
            text = Path(source).read_text(encoding="utf-8")
        except OSError:
            raise
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise FormatError(f"corrupt campaign document: {exc}") from None
        return cls.from_document(doc)


def initialize(settings: CampaignSettings) -> Campaign:
    return Campaign.new(settings)


def run(
    settings: CampaignSettings,
    evaluator: Callable[[Configuration], Sequence[Outcome]],
) -> tuple[Campaign, list[float]]:
    """Drive a full campaign; the history holds the cumulative-archive
    hypervolume after each of the init_size + iterations evaluations."""
    campaign = Campaign.new(settings)
    history: list[float] = []
    for config in list(campaign.remaining_design):
        campaign.tell(config, evaluator(config))
        history.append(campaign.archive_hv())
    for _ in range(settings.iterations):
        config = campaign.suggest()
        campaign.tell(config, evaluator(config))
        history.append(campaign.archive_hv())
    return campaign, history
