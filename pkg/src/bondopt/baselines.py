"""Budget-matched comparison optimizers: random search and a minimal
constrained NSGA-II.

Both consume the same evaluator contract as the sequential engine and
report the Pareto front of all majority-feasible evaluated configurations,
so hypervolume curves are directly comparable across algorithms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._rng import stream_seed
from .doe import latin_hypercube
from .domain import (
    Configuration,
    DesignSpace,
    ObjectiveVector,
    Outcome,
    ReplicatedObservation,
    dominates,
)
from .errors import DomainError
from .metrics import DEFAULT_REFERENCE, FrontReport

Evaluator = Callable[[Configuration], Sequence[Outcome]]


@dataclass(frozen=True)
class EaSettings:
    population: int = 20
    generations: int = 2
    crossover_p: float = 0.9
    mutation_p: float = 0.5
    blend_alpha: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.population < 2:
            raise DomainError("population must be at least 2")
        if self.generations < 0:
            raise DomainError("generations must be non-negative")


def random_search(
    budget: int,
    r: int,
    space: DesignSpace,
    evaluator: Evaluator,
    seed: int,
    reference: ObjectiveVector = DEFAULT_REFERENCE,
) -> FrontReport:
    """Uniform sampling over the design space, r replications per point."""
    if budget < 1:
        raise DomainError("budget must be at least 1")
    rng = np.random.default_rng(stream_seed(seed, "random_search"))
    observations = []
    for _ in range(budget):
        config = space.decode(rng.random(space.dimension))
        outcomes = tuple(evaluator(config))
        observations.append(ReplicatedObservation(config=config, outcomes=outcomes))
    return FrontReport.from_observations(observations, space, reference=reference)


# -- constrained NSGA-II -----------------------------------------------------


@dataclass
class _Individual:
    genes: np.ndarray  # unit-scaled, continuous
    observation: ReplicatedObservation
    rank: int = 0
    crowding: float = 0.0


def constrained_dominates(a: ReplicatedObservation, b: ReplicatedObservation) -> bool:
    """Feasible beats infeasible; two infeasible compare by pf; two feasible
    compare by Pareto dominance of the sample means."""
    if a.majority_feasible and not b.majority_feasible:
        return True
    if not a.majority_feasible and b.majority_feasible:
        return False
    if not a.majority_feasible:
        return a.pf > b.pf
    return dominates(a.mean_objectives, b.mean_objectives)


def fast_nondominated_sort(individuals: list[_Individual]) -> list[list[int]]:
    n = len(individuals)
    dominated_by: list[list[int]] = [[] for _ in range(n)]
    counts = [0] * n
    fronts: list[list[int]] = [[]]
    for p in range(n):
        for q in range(n):
            if p == q:
                continue
            if constrained_dominates(individuals[p].observation, individuals[q].observation):
                dominated_by[p].append(q)
            elif constrained_dominates(individuals[q].observation, individuals[p].observation):
                counts[p] += 1
        if counts[p] == 0:
            individuals[p].rank = 0
            fronts[0].append(p)
    i = 0
    while fronts[i]:
        nxt = []
        for p in fronts[i]:
            for q in dominated_by[p]:
                counts[q] -= 1
                if counts[q] == 0:
                    individuals[q].rank = i + 1
                    nxt.append(q)
        fronts.append(nxt)
        i += 1
    return fronts[:-1]


def crowding_distance(individuals: list[_Individual], front: list[int]) -> None:
    """Per-front crowding on the objective means; boundary points get inf."""
    for idx in front:
        individuals[idx].crowding = 0.0
    if len(front) <= 2:
        for idx in front:
            individuals[idx].crowding = np.inf
        return
    for dim in range(2):
        ordered = sorted(front, key=lambda i: individuals[i].observation.mean_objectives.as_tuple()[dim])
        lo = individuals[ordered[0]].observation.mean_objectives.as_tuple()[dim]
        hi = individuals[ordered[-1]].observation.mean_objectives.as_tuple()[dim]
        individuals[ordered[0]].crowding = np.inf
        individuals[ordered[-1]].crowding = np.inf
        span = hi - lo
        if span == 0:
            continue
        for j in range(1, len(ordered) - 1):
            prev_v = individuals[ordered[j - 1]].observation.mean_objectives.as_tuple()[dim]
            next_v = individuals[ordered[j + 1]].observation.mean_objectives.as_tuple()[dim]
            individuals[ordered[j]].crowding += (next_v - prev_v) / span


def _tournament(pop: list[_Individual], rng: np.random.Generator) -> _Individual:
    i, j = rng.integers(0, len(pop), size=2)
    a, b = pop[int(i)], pop[int(j)]
    if a.rank != b.rank:
        return a if a.rank < b.rank else b
    if a.crowding != b.crowding:
        return a if a.crowding > b.crowding else b
    return a


def _evaluate(genes: np.ndarray, space: DesignSpace, evaluator: Evaluator) -> _Individual:
    config = space.decode(genes)
    outcomes = tuple(evaluator(config))
    return _Individual(genes=genes, observation=ReplicatedObservation(config=config, outcomes=outcomes))


def _select(pop: list[_Individual], k: int) -> list[_Individual]:
    """Elitist environmental selection: fill by rank, truncate by crowding."""
    fronts = fast_nondominated_sort(pop)
    chosen: list[_Individual] = []
    for front in fronts:
        crowding_distance(pop, front)
        if len(chosen) + len(front) <= k:
            chosen.extend(pop[i] for i in front)
        else:
            rest = sorted(front, key=lambda i: -pop[i].crowding)
            chosen.extend(pop[i] for i in rest[: k - len(chosen)])
            break
    return chosen


def nsga2_constrained(
    settings: EaSettings,
    r: int,
    space: DesignSpace,
    evaluator: Evaluator,
    reference: ObjectiveVector = DEFAULT_REFERENCE,
) -> FrontReport:
    """Generational loop with blend crossover and uniform reset mutation.

    Evaluates exactly population * (1 + generations) configurations. The
    initial population is the same Latin hypercube an equally seeded
    sequential campaign would start from, so curves share their prefix.
    """
    rng = np.random.default_rng(stream_seed(settings.seed, "ea"))
    design = latin_hypercube(settings.population, space, stream_seed(settings.seed, "design"))
    population = [_evaluate(space.encode(c), space, evaluator) for c in design.points]
    archive = [ind.observation for ind in population]

    for front in fast_nondominated_sort(population):
        crowding_distance(population, front)

    for _ in range(settings.generations):
        offspring: list[_Individual] = []
        while len(offspring) < settings.population:
            pa = _tournament(population, rng).genes
            pb = _tournament(population, rng).genes
            if rng.random() < settings.crossover_p:
                lo = np.minimum(pa, pb)
                hi = np.maximum(pa, pb)
                span = hi - lo
                a = settings.blend_alpha
                child = rng.uniform(lo - a * span, hi + a * span)
            else:
                child = pa.copy()
            mutate = rng.random(space.dimension) < settings.mutation_p
            child[mutate] = rng.random(int(mutate.sum()))
            child = np.clip(child, 0.0, 1.0)
            offspring.append(_evaluate(child, space, evaluator))
        archive.extend(ind.observation for ind in offspring)
        population = _select(population + offspring, settings.population)

    return FrontReport.from_observations(archive, space, reference=reference)
