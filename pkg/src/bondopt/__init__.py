"""Constrained multi-objective Bayesian optimization for noisy, expensive
process design, with a synthetic plasma-bonding simulator, baseline
optimizers, a benchmark harness, a CLI, and an ask-tell campaign service."""

from .acquisition import PsoSettings, constrained_ei, modified_ei, pso_maximize
from .baselines import EaSettings, nsga2_constrained, random_search
from .benchmark import BenchmarkPlan, run_benchmark, summarize
from .campaign import Campaign, CampaignSettings, initialize, run
from .doe import Design, halton, latin_hypercube
from .domain import (
    Configuration,
    DesignSpace,
    FailureMode,
    ObjectiveVector,
    Outcome,
    ReplicatedObservation,
    VariableKind,
    VariableSpec,
    bonding_design_space,
    dominates,
    pareto_filter,
    strictly_dominates,
)
from .errors import (
    BudgetExhaustedError,
    DomainError,
    FormatError,
    ModelError,
    StateError,
)
from .feasibility import FeasibilityClassifier, majority_label
from .metrics import (
    DEFAULT_REFERENCE,
    FrontReport,
    hypervolume,
    igd_plus,
    input_distribution,
    reference_front,
)
from .scalarize import (
    NormalizationBounds,
    WeightVector,
    next_weights,
    normalize,
    scalarize_observation,
    tchebycheff,
)
from .simulator import SimulatorSettings, make_evaluator, simulate, simulate_once
from .surrogate import KernelParams, StochasticKriging, kernel_eval, noise_diagonal

__version__ = "0.1.0"
