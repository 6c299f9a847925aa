"""Macro-replication benchmark harness: HV-vs-budget curves, final-front
summaries, and CSV export.

Each macro-replication derives one shared seed, so every algorithm that
starts from a space-filling design sees the identical initial design in
that replication. Hypervolume is tracked on the cumulative archive of all
evaluated configurations, which is well-defined for both one-at-a-time and
generational algorithms.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Sequence

from ._rng import stream_seed
from .baselines import EaSettings, nsga2_constrained, random_search
from .campaign import CampaignSettings, run
from .domain import ObjectiveVector, ReplicatedObservation, bonding_design_space
from .errors import DomainError
from .metrics import (
    DEFAULT_REFERENCE,
    DEFAULT_REFERENCE_FRONT_SIZE,
    FrontReport,
    igd_plus,
    reference_front,
)
from .simulator import SimulatorSettings

ALGORITHMS = ("mo-gp", "random", "nsga2")


@dataclass(frozen=True)
class BenchmarkPlan:
    algorithms: tuple[str, ...] = ALGORITHMS
    macro_reps: int = 50
    gammas: tuple[float, ...] = (0.0, 0.30)
    seed: int = 0
    init_size: int = 20
    iterations: int = 40
    replications: int = 5
    reference: ObjectiveVector = DEFAULT_REFERENCE
    reference_front_size: int = DEFAULT_REFERENCE_FRONT_SIZE

    def __post_init__(self):
        if self.macro_reps < 1:
            raise DomainError("macro_reps must be at least 1")
        if self.init_size < 2 or self.iterations < 0:
            raise DomainError("init_size must be >= 2 and iterations >= 0")
        unknown = [a for a in self.algorithms if a not in ALGORITHMS]
        if unknown:
            raise DomainError(
                f"unknown algorithm(s) {', '.join(unknown)}; valid names: {', '.join(ALGORITHMS)}"
            )

    @property
    def budget(self) -> int:
        return self.init_size + self.iterations


@dataclass(frozen=True)
class BenchmarkCell:
    algorithm: str
    gamma: float
    macro_rep: int
    hv_curve: tuple[float, ...]
    front: FrontReport
    igd_plus: float

    @property
    def final_hv(self) -> float:
        return self.hv_curve[-1]


@dataclass
class BenchmarkResult:
    plan: BenchmarkPlan
    cells: list[BenchmarkCell] = field(default_factory=list)
    failures: list[tuple[str, float, int, str]] = field(default_factory=list)

    def mean_curve(self, algorithm: str, gamma: float) -> list[float]:
        curves = [c.hv_curve for c in self.cells if c.algorithm == algorithm and c.gamma == gamma]
        if not curves:
            return []
        length = len(curves[0])
        return [sum(c[i] for c in curves) / len(curves) for i in range(length)]

    def final_fronts(self, algorithm: str, gamma: float) -> dict[str, FrontReport]:
        """Best / median / worst final fronts by final hypervolume."""
        cells = sorted(
            (c for c in self.cells if c.algorithm == algorithm and c.gamma == gamma),
            key=lambda c: c.final_hv,
        )
        if not cells:
            return {}
        return {
            "worst": cells[0].front,
            "median": cells[len(cells) // 2].front,
            "best": cells[-1].front,
        }


def _recording_evaluator(evaluator, records: list[ReplicatedObservation]):
    def wrapped(config):
        outcomes = tuple(evaluator(config))
        records.append(ReplicatedObservation(config=config, outcomes=outcomes))
        return outcomes

    return wrapped


def _hv_curve(records: Sequence[ReplicatedObservation], reference, space) -> list[float]:
    curve = []
    partial: list[ReplicatedObservation] = []
    for obs in records:
        partial.append(obs)
        curve.append(FrontReport.from_observations(partial, space, reference=reference).hv)
    return curve


def run_benchmark(plan: BenchmarkPlan) -> BenchmarkResult:
    space = bonding_design_space()
    result = BenchmarkResult(plan=plan)
    ref_front = reference_front(
        SimulatorSettings(gamma=0.0, seed=plan.seed),
        n=plan.reference_front_size,
        r=plan.replications,
        space=space,
    )
    for gamma in plan.gammas:
        for rep in range(plan.macro_reps):
            rep_seed = stream_seed(plan.seed, "macro_rep", rep)
            for algo in plan.algorithms:
                # One simulator stream per macro-rep: algorithms that share
                # the initial design also see identical outcomes on it.
                sim = SimulatorSettings(gamma=gamma, seed=stream_seed(rep_seed, "simulator"))
                try:
                    cell = _run_cell(plan, space, algo, gamma, rep, rep_seed, sim, ref_front)
                except Exception as exc:  # keep going; record the failed cell
                    result.failures.append((algo, gamma, rep, str(exc)))
                    continue
                result.cells.append(cell)
    return result


def _run_cell(plan, space, algo, gamma, rep, rep_seed, sim, ref_front) -> BenchmarkCell:
    from .simulator import make_evaluator

    records: list[ReplicatedObservation] = []
    evaluator = _recording_evaluator(make_evaluator(sim, plan.replications), records)

    if algo == "mo-gp":
        settings = CampaignSettings(
            space=space,
            init_size=plan.init_size,
            iterations=plan.iterations,
            replications=plan.replications,
            seed=rep_seed,
            reference=plan.reference,
        )
        _, curve = run(settings, evaluator)
        front = FrontReport.from_observations(records, space, reference=plan.reference)
    elif algo == "random":
        front = random_search(
            plan.budget, plan.replications, space, evaluator, rep_seed, reference=plan.reference
        )
        curve = _hv_curve(records, plan.reference, space)
    elif algo == "nsga2":
        generations = max(0, round(plan.budget / plan.init_size) - 1)
        front = nsga2_constrained(
            EaSettings(population=plan.init_size, generations=generations, seed=rep_seed),
            plan.replications,
            space,
            evaluator,
            reference=plan.reference,
        )
        curve = _hv_curve(records, plan.reference, space)
    else:
        raise DomainError(f"unknown algorithm {algo!r}")

    return BenchmarkCell(
        algorithm=algo,
        gamma=gamma,
        macro_rep=rep,
        hv_curve=tuple(curve),
        front=front,
        igd_plus=igd_plus(front.objective_vectors(), ref_front),
    )


@dataclass(frozen=True)
class SummaryRow:
    algorithm: str
    gamma: float
    hv_mean: float
    igd_plus_mean: float
    hv_best: bool = False
    igd_best: bool = False


def summarize(result: BenchmarkResult) -> list[SummaryRow]:
    """Mean final HV and mean IGD+ per algorithm and noise level; the best
    column values are flagged."""
    rows = []
    for gamma in result.plan.gammas:
        for algo in result.plan.algorithms:
            cells = [c for c in result.cells if c.algorithm == algo and c.gamma == gamma]
            if not cells:
                continue
            rows.append(
                SummaryRow(
                    algorithm=algo,
                    gamma=gamma,
                    hv_mean=sum(c.final_hv for c in cells) / len(cells),
                    igd_plus_mean=sum(c.igd_plus for c in cells) / len(cells),
                )
            )
    flagged = []
    for gamma in result.plan.gammas:
        group = [r for r in rows if r.gamma == gamma]
        if not group:
            continue
        best_hv = max(r.hv_mean for r in group)
        best_igd = min(r.igd_plus_mean for r in group)
        for r in group:
            flagged.append(
                SummaryRow(
                    algorithm=r.algorithm,
                    gamma=r.gamma,
                    hv_mean=r.hv_mean,
                    igd_plus_mean=r.igd_plus_mean,
                    hv_best=r.hv_mean == best_hv,
                    igd_best=r.igd_plus_mean == best_igd,
                )
            )
    return flagged


def curves_csv(result: BenchmarkResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["algorithm", "gamma", "macro_rep", "budget", "hv"])
    for cell in result.cells:
        for budget, hv in enumerate(cell.hv_curve, start=1):
            writer.writerow([cell.algorithm, repr(cell.gamma), cell.macro_rep, budget, repr(hv)])
    return buf.getvalue()


def summary_csv(result: BenchmarkResult) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["algorithm", "gamma", "hv_mean", "igd_plus_mean"])
    for row in summarize(result):
        writer.writerow([row.algorithm, repr(row.gamma), repr(row.hv_mean), repr(row.igd_plus_mean)])
    return buf.getvalue()
