"""
Command line interface

    paravec solve --input F --output G [--init p0|perturb|weight W1,...,WQ] [--dedupe-images]
                  [--filter-generators] [--tol T] [--partition-csv H] [--partition-svg H] [--config C]
    paravec verify --input F --solution G [--grid N]
    paravec gen --kind nondegenerate|degenerate --q Q --n N --m M --seed S [--output F]
"""

import argparse
import logging
import sys
from dataclasses import replace
from enum import IntEnum
from pathlib import Path
from typing import Any, Optional, Sequence

from paravec.config import INIT_METHODS, Config, ConfigError, SolverOptions, Tolerances
from paravec.engine import SolutionStatus, solve
from paravec.exceptions import IterationLimitExceeded, NumericalError, ParavecError
from paravec.oracle import grid_scalarization_check, recession_equivalence_check
from paravec.partition import export_partition
from paravec.serialization import parse_problem, parse_solution, serialize_problem, serialize_solution
from paravec.test_helper.generators import degenerate_problem, nondegenerate_problem

logger = logging.getLogger(__name__)

GENERATORS = {"nondegenerate": nondegenerate_problem, "degenerate": degenerate_problem}


class ExitCode(IntEnum):
    OK = 0
    INFEASIBLE = 1
    NO_SOLUTION = 2
    USAGE = 3
    NUMERICAL = 4


STATUS_CODES = {
    SolutionStatus.SOLVED: ExitCode.OK,
    SolutionStatus.INFEASIBLE: ExitCode.INFEASIBLE,
    SolutionStatus.NO_SOLUTION: ExitCode.NO_SOLUTION,
}


class UsageError(ParavecError):
    """Inconsistent command line arguments"""


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("-v", "--verbose", action="store_true", help="Log every pivot and region")
    parser.add_argument("--config", type=Path, help="YAML file overriding the default configuration")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paravec", description="Parametric simplex solver for multi-objective LPs")
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve_parser = subparsers.add_parser("solve", help="Solve a problem file")
    _add_common(solve_parser)
    solve_parser.add_argument("--input", type=Path, required=True, help="Problem document")
    solve_parser.add_argument("--output", type=Path, required=True, help="Where to write the solution document")
    solve_parser.add_argument(
        "--init",
        nargs="+",
        metavar="METHOD",
        help=f"Initialization, one of {', '.join(INIT_METHODS)}; weight takes W1,...,WQ",
    )
    solve_parser.add_argument("--dedupe-images", action="store_true", help="Skip maximizers with a known image")
    solve_parser.add_argument(
        "--filter-generators", action="store_true", help="Drop generators the others already generate"
    )
    solve_parser.add_argument("--tol", type=float, help="Geometric membership tolerance")
    solve_parser.add_argument("--partition-csv", type=Path, help="Write the cells as CSV")
    solve_parser.add_argument("--partition-svg", type=Path, help="Draw the cells as SVG")

    verify_parser = subparsers.add_parser("verify", help="Check a solution against weighted sum LPs")
    _add_common(verify_parser)
    verify_parser.add_argument("--input", type=Path, required=True, help="Problem document")
    verify_parser.add_argument("--solution", type=Path, required=True, help="Solution document")
    verify_parser.add_argument("--grid", type=int, help="Grid points per parameter axis")

    gen_parser = subparsers.add_parser("gen", help="Write a random problem document")
    _add_common(gen_parser)
    gen_parser.add_argument("--kind", choices=sorted(GENERATORS), required=True)
    gen_parser.add_argument("--q", type=int, required=True, help="Number of objectives")
    gen_parser.add_argument("--n", type=int, required=True, help="Number of variables")
    gen_parser.add_argument("--m", type=int, required=True, help="Number of constraints")
    gen_parser.add_argument("--seed", type=int, required=True)
    gen_parser.add_argument("--output", type=Path, help="Output file, stdout when omitted")
    return parser


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as err:
        raise UsageError(f"Cannot read {path}: {err.strerror}") from err


def _init_options(init: Optional[list[str]]) -> dict[str, Any]:
    if not init:
        return {}
    method, *rest = init
    if method not in INIT_METHODS:
        raise UsageError(f"Unknown init method {method}. Use one of {', '.join(INIT_METHODS)}")
    if method != "weight":
        if rest:
            raise UsageError(f"The {method} init method takes no value")
        return {"init": method}
    if len(rest) != 1:
        raise UsageError("The weight init method needs W1,...,WQ")
    try:
        weight = tuple(float(value) for value in rest[0].split(","))
    except ValueError as err:
        raise UsageError(f"Invalid weight {rest[0]}") from err
    return {"init": method, "weight": weight}


def run_solve(args: argparse.Namespace) -> ExitCode:
    problem = parse_problem(_read(args.input))
    tolerances = Tolerances.from_config()
    if args.tol is not None:
        tolerances = replace(tolerances, geometry=args.tol)
    overrides: dict[str, Any] = {"tolerances": tolerances, **_init_options(args.init)}
    if args.dedupe_images:
        overrides["dedupe_images"] = True
    if args.filter_generators:
        overrides["filter_generators"] = True
    solution = solve(problem, SolverOptions.from_config(**overrides))
    args.output.write_text(serialize_solution(solution), encoding="utf-8")
    if solution.status is SolutionStatus.SOLVED:
        if args.partition_csv:
            args.partition_csv.write_text(export_partition(solution, "csv"), encoding="utf-8")
        if args.partition_svg:
            args.partition_svg.write_text(export_partition(solution, "svg"), encoding="utf-8")
    stats = solution.statistics
    print(
        f"{solution.status.value}: {solution.points.shape[0]} points, {solution.directions.shape[0]} directions, "
        f"{stats.dictionaries} dictionaries, {stats.pivots} pivots"
    )
    return STATUS_CODES[solution.status]


def run_verify(args: argparse.Namespace) -> ExitCode:
    problem = parse_problem(_read(args.input))
    solution = parse_solution(_read(args.solution))
    grid = args.grid if args.grid is not None else int(Config.oracle.grid)
    tolerances = Tolerances.from_config()
    report = grid_scalarization_check(problem, solution, grid, tolerances)
    recession = recession_equivalence_check(
        problem, solution, int(Config.oracle.samples), int(Config.oracle.seed), tolerances
    )
    mismatches = report.mismatches + recession.mismatches
    for mismatch in mismatches[:10]:
        print(f"lambda={mismatch.lam.tolist()}: expected {mismatch.expected}, got {mismatch.got}")
    print(
        f"checked {report.grid_points_checked + recession.grid_points_checked} parameters, "
        f"{len(mismatches)} mismatches, max gap {report.max_abs_gap:.3e}"
    )
    return ExitCode.OK if not mismatches else ExitCode.INFEASIBLE


def run_gen(args: argparse.Namespace) -> ExitCode:
    if min(args.q, args.n, args.m) < 1 or (args.kind == "degenerate" and args.q < 2):
        raise UsageError("--q, --n and --m must be positive, and degenerate problems need q >= 2")
    document = serialize_problem(GENERATORS[args.kind](args.q, args.n, args.m, args.seed))
    if args.output:
        args.output.write_text(document, encoding="utf-8")
    else:
        print(document)
    return ExitCode.OK


COMMANDS = {"solve": run_solve, "verify": run_verify, "gen": run_gen}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run a subcommand.

    Returns:
        int: 0 when solved or verified, 1 infeasible (or mismatches found by verify), 2 no solution,
        3 usage error, 4 numerical failure.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as err:
        return ExitCode.OK if err.code == 0 else ExitCode.USAGE
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        if args.config:
            if not args.config.is_file():
                raise UsageError(f"Config file {args.config} not found")
            Config.load_config_from_file(str(args.config))
        return COMMANDS[args.command](args)
    except (NumericalError, IterationLimitExceeded) as err:
        print(f"error: {err.message}", file=sys.stderr)
        return ExitCode.NUMERICAL
    except ParavecError as err:
        print(f"error: {err.message}", file=sys.stderr)
        return ExitCode.USAGE
    except (ConfigError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return ExitCode.USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
