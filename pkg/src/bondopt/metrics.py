"""Front-quality indicators, reference-front construction, input-space analysis."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .doe import halton
from .domain import (
    Configuration,
    DesignSpace,
    ObjectiveVector,
    ReplicatedObservation,
    VariableKind,
    bonding_design_space,
    pareto_filter,
    strictly_dominates,
)
from .errors import DomainError
from .simulator import SimulatorSettings, noiseless, simulate

DEFAULT_REFERENCE = ObjectiveVector(pc=3.0, neg_ts=-4.0)
DEFAULT_REFERENCE_FRONT_SIZE = 20_000
HISTOGRAM_BINS = 20


@dataclass(frozen=True)
class FrontPoint:
    config: Configuration
    objectives: ObjectiveVector
    pf: float

    @property
    def strength_mean(self) -> float:
        return -self.objectives.neg_ts

    @property
    def cost_mean(self) -> float:
        return self.objectives.pc


@dataclass(frozen=True)
class FrontReport:
    """A nondominated archive with its quality indicators."""

    points: tuple[FrontPoint, ...]
    reference: ObjectiveVector = DEFAULT_REFERENCE
    hv: float = 0.0
    igd_plus: float | None = None
    input_percentiles: dict = field(default_factory=dict)

    @classmethod
    def from_observations(
        cls,
        observations: Sequence[ReplicatedObservation],
        space: DesignSpace,
        reference: ObjectiveVector = DEFAULT_REFERENCE,
        reference_front: Sequence[ObjectiveVector] | None = None,
    ) -> "FrontReport":
        feasible = [o for o in observations if o.majority_feasible]
        keep = pareto_filter([o.mean_objectives for o in feasible])
        points = tuple(
            FrontPoint(config=feasible[i].config, objectives=feasible[i].mean_objectives, pf=feasible[i].pf)
            for i in keep
        )
        objs = [p.objectives for p in points]
        igd = igd_plus(objs, reference_front) if reference_front is not None else None
        return cls(
            points=points,
            reference=reference,
            hv=hypervolume(objs, reference),
            igd_plus=igd,
            input_percentiles=front_percentiles(points, space),
        )

    def objective_vectors(self) -> list[ObjectiveVector]:
        return [p.objectives for p in self.points]

    def to_csv(self) -> str:
        """One row per front point plus a trailing summary row (hv, igd_plus)."""
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(
            ["v1", "v2", "v3", "v4", "v5", "v6", "strength_mean", "cost_mean", "pf", "hv", "igd_plus"]
        )
        for p in self.points:
            writer.writerow(
                [repr(v) for v in p.config.values]
                + [repr(p.strength_mean), repr(p.cost_mean), repr(p.pf), "", ""]
            )
        igd = "" if self.igd_plus is None or math.isinf(self.igd_plus) else repr(self.igd_plus)
        writer.writerow([""] * 9 + [repr(self.hv), igd])
        return buf.getvalue()


def hypervolume(front: Sequence[ObjectiveVector], ref: ObjectiveVector) -> float:
    """Exact two-objective hypervolume against a reference point.

    Points that do not strictly dominate the reference contribute nothing.
    """
    inside = [p for p in front if strictly_dominates(p, ref)]
    if not inside:
        return 0.0
    keep = pareto_filter(inside)
    pts = sorted({inside[i].as_tuple() for i in keep})  # pc ascending, neg_ts descending
    volume = 0.0
    prev_height = ref.neg_ts
    for pc, neg_ts in pts:
        volume += (ref.pc - pc) * (prev_height - neg_ts)
        prev_height = neg_ts
    return volume


def igd_plus(front: Sequence[ObjectiveVector], reference_front: Sequence[ObjectiveVector]) -> float:
    """Mean dominance-aware distance from reference points to the front.

    d+(a, z) = sqrt(sum_j max(a_j - z_j, 0)^2), averaged over reference
    points z of their minimum across front members a. An empty front yields
    +inf (reported as missing downstream).
    """
    if not reference_front:
        raise DomainError("reference front must not be empty")
    if not front:
        return math.inf
    A = np.array([p.as_tuple() for p in front])
    Z = np.array([z.as_tuple() for z in reference_front])
    deltas = np.maximum(A[None, :, :] - Z[:, None, :], 0.0)
    dplus = np.sqrt((deltas**2).sum(axis=2))
    return float(dplus.min(axis=1).mean())


def reference_front(
    settings: SimulatorSettings,
    n: int = DEFAULT_REFERENCE_FRONT_SIZE,
    r: int = 5,
    space: DesignSpace | None = None,
    skip: int = 0,
) -> list[ObjectiveVector]:
    """Estimate the attainable front by dense noise-free Halton exploration."""
    report = reference_front_report(settings, n=n, r=r, space=space, skip=skip)
    return report.objective_vectors()


def reference_front_report(
    settings: SimulatorSettings,
    n: int = DEFAULT_REFERENCE_FRONT_SIZE,
    r: int = 5,
    space: DesignSpace | None = None,
    skip: int = 0,
    reference: ObjectiveVector = DEFAULT_REFERENCE,
) -> FrontReport:
    space = space or bonding_design_space()
    quiet = noiseless(settings)
    rng = np.random.default_rng(quiet.seed)
    design = halton(n, space, skip=skip)
    observations = [
        ReplicatedObservation(config=c, outcomes=tuple(simulate(c, r, quiet, rng)))
        for c in design.points
    ]
    return FrontReport.from_observations(observations, space, reference=reference)


def front_percentiles(points: Sequence[FrontPoint], space: DesignSpace) -> dict:
    """25/50/75 percentiles (linear interpolation) of each input variable."""
    if not points:
        return {}
    values = np.array([p.config.values for p in points])
    out = {}
    for k, spec in enumerate(space.variables):
        q = np.percentile(values[:, k], [25, 50, 75], method="linear")
        out[spec.id] = (float(q[0]), float(q[1]), float(q[2]))
    return out


@dataclass(frozen=True)
class InputDistribution:
    percentiles: dict
    histograms: dict
    preprocessing_fraction: float | None


def input_distribution(fronts: Sequence[FrontReport], space: DesignSpace | None = None) -> InputDistribution:
    """Pool front configurations across runs and summarize each variable.

    Percentiles use linear interpolation between order statistics; the
    histogram uses 20 fixed-width bins over the variable's full range. For
    the binary variable the fraction of solutions using pre-processing is
    reported instead of percentiles.
    """
    space = space or bonding_design_space()
    pooled = [p.config.values for report in fronts for p in report.points]
    if not pooled:
        return InputDistribution(percentiles={}, histograms={}, preprocessing_fraction=None)
    values = np.array(pooled)
    percentiles = {}
    histograms = {}
    pre_fraction = None
    for k, spec in enumerate(space.variables):
        col = values[:, k]
        if spec.kind is VariableKind.BINARY:
            pre_fraction = float(np.mean(col == 1.0))
            continue
        q = np.percentile(col, [25, 50, 75], method="linear")
        percentiles[spec.id] = (float(q[0]), float(q[1]), float(q[2]))
        counts, edges = np.histogram(col, bins=HISTOGRAM_BINS, range=(spec.lower, spec.upper))
        histograms[spec.id] = (edges.tolist(), counts.tolist())
    return InputDistribution(
        percentiles=percentiles, histograms=histograms, preprocessing_fraction=pre_fraction
    )


def input_distribution_csv(dist: InputDistribution) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["variable", "p25", "p50", "p75"])
    for vid, (p25, p50, p75) in dist.percentiles.items():
        writer.writerow([vid, repr(p25), repr(p50), repr(p75)])
    if dist.preprocessing_fraction is not None:
        writer.writerow(["v1_preprocessing_fraction", repr(dist.preprocessing_fraction), "", ""])
    writer.writerow([])
    writer.writerow(["variable", "bin_lower", "bin_upper", "count"])
    for vid, (edges, counts) in dist.histograms.items():
        for lo, hi, c in zip(edges[:-1], edges[1:], counts):
            writer.writerow([vid, repr(float(lo)), repr(float(hi)), c])
    return buf.getvalue()
