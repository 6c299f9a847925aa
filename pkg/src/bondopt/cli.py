"""Command-line front end.

Exit codes: 0 success, 2 usage error, 3 state error (e.g. exhausted budget,
out-of-order ask/tell), 4 I/O or document-format error.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

from .benchmark import ALGORITHMS, BenchmarkPlan, curves_csv, run_benchmark, summarize, summary_csv
from .campaign import Campaign, CampaignSettings, run
from .domain import (
    Configuration,
    ObjectiveVector,
    format_configuration,
    parse_configuration,
    parse_outcome,
)
from .errors import DomainError, FormatError, StateError
from .metrics import (
    DEFAULT_REFERENCE_FRONT_SIZE,
    FrontPoint,
    FrontReport,
    input_distribution,
    input_distribution_csv,
    reference_front_report,
)
from .simulator import SimulatorSettings, make_evaluator


def _parse_gammas(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise DomainError(f"invalid gamma list {text!r}; expected comma-separated numbers") from None


def _parse_algos(text: str) -> tuple[str, ...]:
    algos = tuple(part.strip() for part in text.split(",") if part.strip())
    unknown = [a for a in algos if a not in ALGORITHMS]
    if unknown:
        raise DomainError(
            f"unknown algorithm(s) {', '.join(unknown)}; valid names: {', '.join(ALGORITHMS)}"
        )
    return algos


def cmd_run(args) -> int:
    if args.budget < args.init:
        raise DomainError(f"budget ({args.budget}) must be at least the initial design size ({args.init})")
    settings = CampaignSettings(
        init_size=args.init,
        iterations=args.budget - args.init,
        replications=args.reps,
        seed=args.seed,
    )
    sim = SimulatorSettings(gamma=args.gamma, seed=args.seed)
    campaign, history = run(settings, make_evaluator(sim, args.reps))
    campaign.save(args.state)
    front = campaign.current_front()
    Path(args.out).write_text(front.to_csv(), encoding="utf-8")
    print(f"evaluated {len(campaign.observations)} configurations")
    print(f"final hypervolume: {front.hv!r}")
    return 0


def cmd_suggest(args) -> int:
    campaign = Campaign.load(args.state)
    config = campaign.suggest()
    campaign.save(args.state)
    print(format_configuration(config))
    return 0


def cmd_tell(args) -> int:
    campaign = Campaign.load(args.state)
    config = parse_configuration(args.config, campaign.settings.space)
    rows = _read_outcome_rows(args.outcomes)
    obs = campaign.tell(config, rows)
    campaign.save(args.state)
    print(f"pf={obs.pf!r} strength_mean={-obs.mean_objectives.neg_ts!r} cost_mean={obs.mean_objectives.pc!r}")
    return 0


def _read_outcome_rows(path: str):
    text = Path(path).read_text(encoding="utf-8")
    reader = csv.DictReader(io.StringIO(text))
    rows = []
    for record in reader:
        rows.append(parse_outcome({k: v for k, v in record.items() if v is not None}))
    return rows


def cmd_front(args) -> int:
    campaign = Campaign.load(args.state)
    front = campaign.current_front()
    text = front.to_csv()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def cmd_benchmark(args) -> int:
    if args.budget < args.init:
        raise DomainError(f"budget ({args.budget}) must be at least the initial design size ({args.init})")
    plan = BenchmarkPlan(
        algorithms=_parse_algos(args.algos),
        macro_reps=args.macro_reps,
        gammas=_parse_gammas(args.gamma),
        seed=args.seed,
        init_size=args.init,
        iterations=args.budget - args.init,
        replications=args.reps,
        reference_front_size=args.reference_n,
    )
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    result = run_benchmark(plan)
    (outdir / "curves.csv").write_text(curves_csv(result), encoding="utf-8")
    (outdir / "summary.csv").write_text(summary_csv(result), encoding="utf-8")
    for gamma in plan.gammas:
        for algo in plan.algorithms:
            for label, front in result.final_fronts(algo, gamma).items():
                name = f"front_{algo}_gamma{gamma:g}_{label}.csv"
                (outdir / name).write_text(front.to_csv(), encoding="utf-8")
    for row in summarize(result):
        hv_mark = "*" if row.hv_best else " "
        igd_mark = "*" if row.igd_best else " "
        print(
            f"{row.algorithm:8s} gamma={row.gamma:g} "
            f"hv_mean={row.hv_mean:.4f}{hv_mark} igd_plus_mean={row.igd_plus_mean:.4f}{igd_mark}"
        )
    if result.failures:
        for algo, gamma, rep, message in result.failures:
            print(f"failed cell: {algo} gamma={gamma:g} rep={rep}: {message}", file=sys.stderr)
    return 0


def cmd_reference_front(args) -> int:
    report = reference_front_report(
        SimulatorSettings(gamma=0.0, seed=args.seed), n=args.n, r=args.reps
    )
    Path(args.out).write_text(report.to_csv(), encoding="utf-8")
    print(f"reference front: {len(report.points)} points, hv={report.hv!r}")
    return 0


def cmd_analyze_inputs(args) -> int:
    fronts = [_read_front_csv(Path(p)) for p in args.fronts]
    dist = input_distribution(fronts)
    text = input_distribution_csv(dist)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0


def _read_front_csv(path: Path) -> FrontReport:
    reader = csv.DictReader(io.StringIO(path.read_text(encoding="utf-8")))
    points = []
    for row in reader:
        if not row.get("v1"):
            continue  # summary row
        config = Configuration(tuple(float(row[f"v{k}"]) for k in range(1, 7)))
        strength = float(row["strength_mean"])
        cost = float(row["cost_mean"])
        points.append(
            FrontPoint(
                config=config,
                objectives=ObjectiveVector.from_outcome(strength, cost),
                pf=float(row["pf"]),
            )
        )
    return FrontReport(points=tuple(points))


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bondopt",
        description="Constrained multi-objective Bayesian optimization of bonding process settings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="full campaign against the built-in simulator")
    p.add_argument("--budget", type=int, default=60, help="total configurations to evaluate")
    p.add_argument("--init", type=int, default=20, help="initial design size")
    p.add_argument("--reps", type=int, default=5, help="replications per configuration")
    p.add_argument("--gamma", type=float, default=0.30, help="relative contact-angle noise")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--state", required=True, help="campaign state file to write")
    p.add_argument("--out", required=True, help="front CSV to write")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("suggest", help="print the next configuration for a stored campaign")
    p.add_argument("--state", required=True)
    p.set_defaults(func=cmd_suggest)

    p = sub.add_parser("tell", help="ingest measured outcomes for a configuration")
    p.add_argument("--state", required=True)
    p.add_argument("--config", required=True, help="configuration record, e.g. 'v1=0 v2=400 ...'")
    p.add_argument("--outcomes", required=True, help="CSV with strength,cost,failure_mode,visual_damage rows")
    p.set_defaults(func=cmd_tell)

    p = sub.add_parser("front", help="export the current Pareto front of a stored campaign")
    p.add_argument("--state", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_front)

    p = sub.add_parser("benchmark", help="macro-replicated algorithm comparison")
    p.add_argument("--algos", default=",".join(ALGORITHMS))
    p.add_argument("--macro-reps", dest="macro_reps", type=int, default=50)
    p.add_argument("--gamma", default="0,0.30", help="comma-separated noise levels")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=60)
    p.add_argument("--init", type=int, default=20)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--reference-n", dest="reference_n", type=int, default=DEFAULT_REFERENCE_FRONT_SIZE)
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_benchmark)

    p = sub.add_parser("reference-front", help="noise-free Halton estimate of the attainable front")
    p.add_argument("--n", type=int, default=DEFAULT_REFERENCE_FRONT_SIZE)
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reference_front)

    p = sub.add_parser("analyze-inputs", help="input-space percentiles/histograms of front CSVs")
    p.add_argument("--fronts", nargs="+", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze_inputs)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else int(exc.code)
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except StateError as exc:
        print(f"state error: {exc}", file=sys.stderr)
        return 3
    except (FormatError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
