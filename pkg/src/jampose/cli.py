"""Command-line entry point: ``jampose solve | sweep | verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or validation error,
3 strategy not applicable to the scenario.
"""
from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .errors import JamposeError, StrategyInapplicableError
from .scenario import STRATEGIES, SweepSpec, load_scenario, paper_scenario_path
from .solvers import DEFAULT_GRID_CAP, SolverConfig, grid_oracle, solve
from .sweep import DEFAULT_PM_RANGE, run_sweep

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_USAGE, EXIT_INAPPLICABLE = 0, 1, 2, 3


def _strategy(name: str) -> str:
    key = name.strip().replace("-", "_")
    if key not in STRATEGIES:
        raise argparse.ArgumentTypeError(
            f"unknown strategy {name!r}; choose from "
            + ", ".join(s.replace("_", "-") for s in STRATEGIES)
        )
    return key


def _strategy_list(text: str) -> tuple:
    return tuple(_strategy(s) for s in text.split(",") if s.strip())


def _float_list(text: str) -> tuple:
    try:
        return tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _db(x: float) -> str:
    return f"{10 * math.log10(x):.4f} dB" if x > 0 else "-inf dB"


def _config(args) -> SolverConfig:
    kw = {"seed": args.seed}
    if args.restarts is not None:
        kw["restarts"] = args.restarts
    if args.iterations is not None:
        kw["anneal_iterations"] = args.iterations
    return SolverConfig(**kw)


def _load(args):
    scenario = load_scenario(args.scenario or paper_scenario_path())
    if getattr(args, "pm_over_p", None) is not None:
        if not args.pm_over_p >= 0:
            raise JamposeError("--pm-over-p must be >= 0")
        scenario = scenario.with_pm(args.pm_over_p)
    return scenario


def _print_solution(sol, out=None):
    out = out or sys.stdout
    x, y, z = (float(c) for c in sol.pose.position)
    roll, pitch, _ = sol.pose.angles
    print(f"strategy      {sol.strategy}", file=out)
    print(f"position [m]  {x!r} {y!r} {z!r}", file=out)
    print(f"roll          {roll!r} rad ({math.degrees(roll):.2f} deg)", file=out)
    print(f"pitch         {pitch!r} rad ({math.degrees(pitch):.2f} deg)", file=out)
    for i, g in enumerate(sol.per_node_sinr, 1):
        print(f"SINR node {i:<3} {g!r} ({_db(g)})", file=out)
    print(f"min SINR      {sol.objective!r} ({_db(sol.objective)})", file=out)
    print(f"evaluations   {sol.evals}", file=out)


def cmd_solve(args) -> int:
    scenario = _load(args)
    sol = solve(scenario, args.strategy, _config(args))
    print(f"scenario      {scenario.name} (pm_over_p = {scenario.powers.pm_over_p!r})")
    _print_solution(sol)
    return EXIT_OK


def cmd_sweep(args) -> int:
    scenario = _load(args)
    if args.pm_values is not None:
        values = args.pm_values
    else:
        start, stop, count = args.pm_range
        if not (start > 0 and stop > 0 and count >= 1 and float(count).is_integer()):
            raise JamposeError("--pm-range needs START > 0, STOP > 0 and an integer COUNT >= 1")
        values = tuple(float(v) for v in np.geomspace(start, stop, int(count)))
    spec = SweepSpec(values, args.strategies)
    result = run_sweep(scenario, spec, _config(args), workers=args.workers)
    result.save(args.out, spec)
    print(f"{'pm_over_p':>12}  {'strategy':<18} {'min_sinr':>14} {'min_sinr_db':>12}")
    for pm, strategy, sol in result.rows:
        db = 10 * math.log10(sol.objective) if sol.objective > 0 else -math.inf
        print(f"{pm:12.6g}  {strategy:<18} {sol.objective:14.8g} {db:12.4f}")
    print(f"wrote {len(result.rows)} rows to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    scenario = _load(args)
    oracle = grid_oracle(scenario, args.strategy, args.grid, cap=args.grid_cap)
    sol = solve(scenario, args.strategy, _config(args))
    gap = (oracle.objective - sol.objective) / abs(oracle.objective) if oracle.objective else 0.0
    ok = sol.objective >= oracle.objective - args.tolerance * abs(oracle.objective)
    print(f"strategy          {args.strategy}")
    print(f"grid              {' x '.join(str(g) for g in args.grid)} ({oracle.evals} points)")
    print(f"solver objective  {sol.objective!r}")
    print(f"oracle objective  {oracle.objective!r}")
    print(f"relative gap      {gap:.6e} (tolerance {args.tolerance})")
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="jampose",
        description="Max-min SINR pose optimization of an aerial base station under jamming.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", metavar="PATH",
                        help="scenario JSON (default: bundled paper scenario)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--restarts", type=int)
    common.add_argument("--iterations", type=int, help="annealing iterations per restart")

    p = sub.add_parser("solve", parents=[common], help="optimize one scenario")
    p.add_argument("--strategy", type=_strategy, required=True,
                   help="optimal, zero-interference, max-gain or vertical")
    p.add_argument("--pm-over-p", type=float, help="override the jamming ratio")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sweep", parents=[common], help="sweep the jamming ratio")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--pm-range", type=float, nargs=3, metavar=("START", "STOP", "COUNT"),
                   default=DEFAULT_PM_RANGE, help="log-spaced values (default 0.01 1000 11)")
    g.add_argument("--pm-values", type=_float_list, metavar="LIST",
                   help="explicit comma-separated values")
    p.add_argument("--strategies", type=_strategy_list, default=STRATEGIES,
                   metavar="LIST", help="comma-separated (default: all four)")
    p.add_argument("--out", required=True, metavar="PATH", help="results CSV")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", parents=[common], help="compare the solver with a grid oracle")
    p.add_argument("--strategy", type=_strategy, required=True)
    p.add_argument("--grid", type=int, nargs="+", required=True,
                   metavar="N", help="NX NY NZ [NPHI NTHETA]")
    p.add_argument("--pm-over-p", type=float)
    p.add_argument("--tolerance", type=float, default=0.02, help="relative (default 0.02)")
    p.add_argument("--grid-cap", type=int, default=DEFAULT_GRID_CAP)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify" and len(args.grid) not in (3, 5):
        print("jampose: error: --grid takes 3 or 5 counts", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except StrategyInapplicableError as exc:
        print(f"jampose: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except (JamposeError, ValueError, OSError) as exc:
        print(f"jampose: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
