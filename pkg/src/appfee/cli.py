"""Command-line experiments.

Exit codes: 0 success, 1 usage error, 2 scenario or validation error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .equilibrium import (
    InfeasibleMarketError,
    LinearCurve,
    NoIntersectionError,
    solve_equilibrium,
)
from .fees import FeeGrid, UnreachableTargetError, fee_for_target, resolve_fees
from .scenario_io import (
    ScenarioFileError,
    load_scenario_file,
    write_applications_csv,
    write_metrics_csv,
    write_summary_csv,
)
from .simulator import map_ordered, replication_seed, run_comparison, run_replications, run_round, summarize
from .taxonomy import classify_market
from .types import ScenarioValidationError, SimulationMetrics, WelfareLedger


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _pair(text: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected INTERCEPT,SLOPE, got {text!r}")
    try:
        return float(parts[0]), float(parts[1])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected two numbers, got {text!r}") from None


def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("true", "yes", "1"):
        return True
    if low in ("false", "no", "0"):
        return False
    raise argparse.ArgumentTypeError(f"expected true or false, got {text!r}")


def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", type=Path, help="scenario JSON file")
    common.add_argument("--seed", type=_u64, help="override the scenario seed")
    common.add_argument("--replications", type=int, default=1, help="rounds per configuration (default 1)")
    common.add_argument("--out", type=Path, default=Path("."), help="directory for CSV output")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for replications")

    parser = _Parser(prog="appfee", description="Submission-fee job market simulator.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("run", parents=[common], help="simulate one scenario, write metrics.csv")
    sub.add_parser("compare", parents=[common], help="zero-fee baseline vs the file's fee policy")
    p = sub.add_parser("sweep", parents=[common], help="uniform fee sweep, write sweep.csv")
    p.add_argument("--fee-min", type=float, required=True)
    p.add_argument("--fee-max", type=float, required=True)
    p.add_argument("--step", type=float, required=True)
    p = sub.add_parser("solve-fee", parents=[common], help="smallest uniform fee meeting a target volume")
    p.add_argument("--target", type=float, required=True)
    p = sub.add_parser("equilibrium", parents=[common], help="intersect linear demand and supply")
    p.add_argument("--demand", type=_pair, required=True, metavar="INTERCEPT,SLOPE")
    p.add_argument("--supply", type=_pair, required=True, metavar="INTERCEPT,SLOPE")
    p = sub.add_parser("classify", parents=[common], help="market/price quadrant")
    p.add_argument("--market-present", type=_bool, required=True)
    p.add_argument("--price", type=float, required=True)
    return parser


def _load(args):
    if args.scenario is None:
        raise UsageError(f"{args.command} needs --scenario")
    loaded = load_scenario_file(args.scenario)
    scenario = loaded.scenario
    if args.seed is not None:
        scenario = replace(scenario, seed=args.seed)
    if args.replications < 1:
        raise UsageError("--replications must be >= 1")
    return scenario, loaded.fee_policy


def _fmt(x: float) -> str:
    return format(x + 0.0, ".9g")


def cmd_run(args) -> None:
    scenario, policy = _load(args)
    if policy is not None:
        scenario = replace(scenario, fee_disposition=policy.disposition)
        scenario = scenario.with_fees(resolve_fees(policy, scenario))
    args.out.mkdir(parents=True, exist_ok=True)
    if args.replications == 1:
        metrics = run_round(scenario)
        write_metrics_csv(metrics, args.out / "metrics.csv")
        write_applications_csv(metrics, args.out / "applications.csv")
    else:
        rep = run_replications(scenario, args.replications, workers=args.jobs)
        write_metrics_csv(list(rep.runs), args.out / "metrics.csv")
        write_summary_csv(rep.stats, args.out / "summary.csv")
        metrics = rep.runs[0]
    print(f"applications: {metrics.total_applications}")
    print(f"screening cost: {_fmt(metrics.total_screening_cost)}")
    print(f"hires: {metrics.n_hires}, mean mismatch: {_fmt(metrics.mean_hire_mismatch)}")
    print(f"wrote {args.out / 'metrics.csv'}")


def cmd_compare(args) -> None:
    scenario, policy = _load(args)
    if policy is None:
        raise UsageError("compare needs a fee_policy block in the scenario file")
    args.out.mkdir(parents=True, exist_ok=True)
    if args.replications == 1:
        report = run_comparison(scenario, policy)
        write_metrics_csv(report, args.out / "comparison.csv")
    else:
        seeds = [replication_seed(scenario.seed, i) for i in range(args.replications)]
        reports = map_ordered(lambda seed: run_comparison(replace(scenario, seed=seed), policy), seeds, args.jobs)
        report = reports[0]
        write_metrics_csv(report, args.out / "comparison.csv")
        write_summary_csv(summarize([r.treated for r in reports]), args.out / "treated_summary.csv")
        write_summary_csv(summarize([r.baseline for r in reports]), args.out / "baseline_summary.csv")
    b, t = report.baseline, report.treated
    print(f"applications: {b.total_applications} -> {t.total_applications}")
    print(f"screening cost: {_fmt(b.total_screening_cost)} -> {_fmt(t.total_screening_cost)}")
    print(f"mean hire mismatch: {_fmt(b.mean_hire_mismatch)} -> {_fmt(t.mean_hire_mismatch)}")
    print(f"wrote {args.out / 'comparison.csv'}")


def cmd_sweep(args) -> None:
    scenario, _ = _load(args)
    try:
        grid = FeeGrid(args.fee_min, args.fee_max, args.step)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    args.out.mkdir(parents=True, exist_ok=True)
    points = []
    for fee in grid.points():
        priced = scenario.with_uniform_fee(fee)
        if args.replications == 1:
            points.append((fee, run_round(priced)))
        else:
            stats = run_replications(priced, args.replications, workers=args.jobs).stats
            points.append((fee, _mean_metrics(stats)))
    write_metrics_csv(points, args.out / "sweep.csv")
    for fee, m in points:
        print(f"fee {_fmt(fee)}: {_fmt(m.total_applications)} applications, screening {_fmt(m.total_screening_cost)}")
    print(f"wrote {args.out / 'sweep.csv'}")


def _mean_metrics(stats):
    mean = {k: s.mean for k, s in stats.items()}
    # mean applications need not be whole; the sweep table carries it as-is
    return SimulationMetrics(
        total_applications=mean["total_applications"],
        total_fees_paid=mean["total_fees_paid"],
        total_screening_cost=mean["total_screening_cost"],
        mean_hire_mismatch=mean["mean_hire_mismatch"],
        welfare=WelfareLedger(mean["candidate_surplus"], mean["recruiter_surplus"], mean["charity_transfers"]),
    )


def cmd_solve_fee(args) -> None:
    scenario, _ = _load(args)
    fee = fee_for_target(scenario, args.target)
    print(f"fee={_fmt(fee)}")


def cmd_equilibrium(args) -> None:
    e = solve_equilibrium(LinearCurve(*args.demand), LinearCurve(*args.supply))
    print(f"p*={_fmt(e.price)} q*={_fmt(e.quantity)}")


def cmd_classify(args) -> None:
    print(classify_market(args.market_present, args.price))


COMMANDS = {
    "run": cmd_run,
    "compare": cmd_compare,
    "sweep": cmd_sweep,
    "solve-fee": cmd_solve_fee,
    "equilibrium": cmd_equilibrium,
    "classify": cmd_classify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"appfee: error: {exc}", file=sys.stderr)
        return 1
    except (ScenarioFileError, ScenarioValidationError, UnreachableTargetError) as exc:
        print(f"appfee: {exc}", file=sys.stderr)
        return 2
    except (NoIntersectionError, InfeasibleMarketError, ValueError) as exc:
        print(f"appfee: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
