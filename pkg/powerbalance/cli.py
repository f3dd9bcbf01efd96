"""
Command-line front end.

    powerbalance check INSTANCE ALLOCATION
    powerbalance states INSTANCE ALLOCATION
    powerbalance solve INSTANCE [INSTANCE ...] [--method auto|lp|complete|flow]
    powerbalance gen [--mode random|balanced|complete|bipartite]
    powerbalance nash INSTANCE ALLOCATION [--samples N]

Human output numbers countries from 1; --json output and files use 0-based indices.
Exit codes: 0 success, 1 infeasible or not balanced, 2 usage or input error,
3 numerical failure.
"""
import argparse
import logging
import sys
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
import numpy as np
from powerbalance.arg_validators import warn_inexact
from powerbalance.balance import check_balanced
from powerbalance.balance import is_balanced
from powerbalance.dataframe_utils import edge_table
from powerbalance.dataframe_utils import sort_states
from powerbalance.dataframe_utils import states_table
from powerbalance.dataframe_utils import violations_table
from powerbalance.exceptions import EnumerationCapError
from powerbalance.exceptions import NumericalFailure
from powerbalance.game import as_allocation
from powerbalance.game import sampled_nash_check
from powerbalance.game import state_vector
from powerbalance.generators import random_balanced_instance
from powerbalance.generators import random_bipartite_instance
from powerbalance.generators import random_complete_instance
from powerbalance.generators import random_instance
from powerbalance.io_utils import dumps
from powerbalance.io_utils import load_allocation
from powerbalance.io_utils import load_instance
from powerbalance.io_utils import save_allocation
from powerbalance.io_utils import save_edge_vector
from powerbalance.io_utils import save_instance
from powerbalance.io_utils import save_solution
from powerbalance.io_utils import solution_to_dict
from powerbalance.io_utils import write_lineage
from powerbalance.number_utils import to_jsonable
from powerbalance.settings import NASH_SAMPLES
from powerbalance.settings import POWER_RANGE
from powerbalance.settings import SUBSET_CAP
from powerbalance.settings import TOLERANCE
from powerbalance.solvers import METHODS
from powerbalance.solvers import peeling_sequence
from powerbalance.solvers import solve
from powerbalance.text_utils import format_value
from powerbalance.text_utils import format_violation
from powerbalance.text_utils import format_witness
from powerbalance.text_utils import render_table
from powerbalance.text_utils import summarize_states

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


@dataclass
class RunReport:
    """
    Result of one command: exit code, machine-readable payload and human-readable lines.

    Timings are shown in human output only, so the JSON form is reproducible.
    """

    command: str
    exit_code: int = EXIT_OK
    payload: Dict[str, Any] = field(default_factory=dict)
    lines: List[str] = field(default_factory=list)
    timings: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {"command": self.command, "exit_code": self.exit_code, **self.payload}


def non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not an integer.")
    if value < 0:
        raise argparse.ArgumentTypeError(f"'{text}' should be non-negative.")
    return value


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a number.")
    if not value > 0:
        raise argparse.ArgumentTypeError(f"'{text}' should be positive.")
    return value


def probability(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a number.")
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"'{text}' should be between 0 and 1.")
    return value


def _state_values(states) -> List[str]:
    return [s.value for s in states]


def cmd_check(args: argparse.Namespace) -> RunReport:
    """Balance verdict with per-condition diagnostics and the state vector."""
    g = load_instance(args.instance)
    U = load_allocation(args.allocation, g)
    warn_inexact(args.tolerance or TOLERANCE, g.powers, U)
    report = check_balanced(g, U, args.tolerance)
    states = state_vector(g, U, args.tolerance)
    verdict = "yes" if report.balanced else f"no ({format_violation(report.first)})"
    lines = [f"balanced: {verdict}; states: {summarize_states(states)}"]
    if report.violations:
        lines.append(render_table(violations_table(report, one_based=True)))
    payload = {
        "balanced": report.balanced,
        "violations": [
            {"condition": v.condition, "location": list(v.location), "message": v.message}
            for v in report.violations
        ],
        "states": _state_values(states),
    }
    return RunReport("check", EXIT_OK if report.balanced else EXIT_NO, payload, lines)


def cmd_states(args: argparse.Namespace) -> RunReport:
    """Table of sigma_i, tau_i and x_i."""
    g = load_instance(args.instance)
    U = as_allocation(g, load_allocation(args.allocation, g), args.tolerance)
    warn_inexact(args.tolerance or TOLERANCE, g.powers, U)
    table = states_table(g, U, args.tolerance, one_based=True)
    if args.sort:
        table = sort_states(table)
    records = states_table(g, U, args.tolerance).to_dict(orient="records")
    countries = []
    for row in records:
        state = row.pop("state")
        countries.append({**{key: to_jsonable(value) for key, value in row.items()}, "state": state})
    payload = {"countries": countries}
    lines = [render_table(table, numeric=("power", "support", "threat"))]
    return RunReport("states", EXIT_OK, payload, lines)


def _trace_lines(g) -> List[str]:
    vertices = [int(i) for i in np.flatnonzero(g.has_adversaries)]
    steps = peeling_sequence([g.powers[i] for i in vertices])
    if not steps:
        return ["peel: none (at most three countries with adversaries)"]
    return [
        f"peel: {format_value(step.amount)} on ({vertices[step.strong] + 1},{vertices[step.weak] + 1})"
        for step in steps
    ]


def cmd_solve(args: argparse.Namespace) -> RunReport:
    """Solve one or more instances in turn; write a solution file for each feasible one."""
    if args.out is not None and len(args.instances) > 1:
        raise ValueError("--out takes a single instance.")
    report = RunReport("solve")
    results = []
    for path in args.instances:
        g = load_instance(path)
        warn_inexact(args.tolerance or TOLERANCE, g.powers)
        start = time.perf_counter()
        solution = solve(g, method=args.method, tol=args.tolerance, cap=args.cap)
        report.timings[str(path)] = time.perf_counter() - start
        result = {"instance": str(path), **solution_to_dict(solution)}
        if solution.feasible:
            out = Path(args.out) if args.out else Path(path).with_suffix(".solution.json")
            save_solution(solution, out)
            result["solution_file"] = str(out)
            values = ", ".join(format_value(x) for x in solution.v)
            report.lines.append(f"{path}: feasible via {solution.method}; v = ({values})")
            if len(solution.v):
                report.lines.append(render_table(edge_table(g, solution.v, one_based=True), numeric=("v",)))
            if args.trace and solution.method == "complete":
                report.lines.extend(_trace_lines(g))
            report.lines.append(f"solution written to {out}")
        else:
            report.exit_code = EXIT_NO
            report.lines.append(f"{path}: infeasible via {solution.method}; {format_witness(solution.witness)}")
        results.append(result)
    report.payload = {"results": results}
    return report


def cmd_gen(args: argparse.Namespace) -> RunReport:
    """Write a generated instance (and, in balanced mode, its equilibrium, edge vector and lineage)."""
    out = Path(args.out or "instance.json")
    power_range = tuple(args.power_range)
    payload: Dict[str, Any] = {"mode": args.mode, "instance": str(out)}
    lines = []
    if args.mode == "balanced":
        bundle = random_balanced_instance(args.steps, seed=args.seed)
        g = bundle.graph
        allocation_path = out.with_suffix(".allocation.json")
        edge_vector_path = out.with_suffix(".v.json")
        lineage_path = out.with_suffix(".lineage.jsonl")
        save_allocation(bundle.equilibrium, allocation_path)
        save_edge_vector(g, bundle.edge_vector, edge_vector_path)
        write_lineage(bundle.lineage, lineage_path)
        payload.update(
            allocation=str(allocation_path),
            edge_vector=str(edge_vector_path),
            lineage=str(lineage_path),
            steps=args.steps,
        )
        lines.append(f"wrote {allocation_path}, {edge_vector_path} and {lineage_path}")
    elif args.mode == "complete":
        g = random_complete_instance(args.n, power_range, seed=args.seed)
    elif args.mode == "bipartite":
        g = random_bipartite_instance(args.n // 2, args.n - args.n // 2, args.density, power_range, seed=args.seed)
    else:
        g = random_instance(args.n, args.density, power_range, args.sign_ratio, seed=args.seed)
    save_instance(g, out)
    payload.update(countries=g.n, adversary_pairs=len(g.adversary_edges), friend_pairs=len(g.friend_edges))
    lines.insert(
        0,
        f"wrote {out}: {g.n} countries, {len(g.adversary_edges)} adversary pairs, "
        f"{len(g.friend_edges)} friend pairs",
    )
    return RunReport("gen", EXIT_OK, payload, lines)


def cmd_nash(args: argparse.Namespace) -> RunReport:
    """Sample deviations and look for one that a country strongly prefers."""
    g = load_instance(args.instance)
    U = as_allocation(g, load_allocation(args.allocation, g), args.tolerance)
    result = sampled_nash_check(g, U, samples=args.samples, seed=args.seed, tol=args.tolerance)
    if result.passed and not is_balanced(g, U, args.tolerance):
        warnings.warn(
            "No strongly preferred deviation was sampled, but the allocation is not balanced; "
            "this is evidence, not proof, of a Nash equilibrium."
        )
    countries = sorted({w.country for w in result.witnesses})
    verdict = "passed" if result.passed else "failed"
    lines = [f"nash check: {verdict} ({result.deviations_drawn} deviations drawn)"]
    for w in result.witnesses:
        row = ", ".join(f"{x:.4g}" for x in w.new_row)
        lines.append(f"country {w.country + 1} gets out of danger with row [{row}]")
    payload = {
        "passed": result.passed,
        "samples": result.samples,
        "deviations_drawn": result.deviations_drawn,
        "witness_countries": countries,
    }
    return RunReport("nash", EXIT_OK if result.passed else EXIT_NO, payload, lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the machine-readable report")
    common.add_argument(
        "--tolerance", type=positive_float, default=None, help="tolerance for float input"
    )
    common.add_argument("-v", "--verbose", action="store_true", help="log debug messages")

    parser = argparse.ArgumentParser(
        prog="powerbalance",
        description="Balanced equilibria of networked power allocation games.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common], help="check a balanced equilibrium")
    check.add_argument("instance", type=Path)
    check.add_argument("allocation", type=Path, help="allocation or edge-vector file")
    check.set_defaults(handler=cmd_check)

    states = commands.add_parser("states", parents=[common], help="support, threat and state table")
    states.add_argument("instance", type=Path)
    states.add_argument("allocation", type=Path)
    states.add_argument("--sort", action="store_true", help="list unsafe countries first")
    states.set_defaults(handler=cmd_states)

    solver = commands.add_parser("solve", parents=[common], help="find a balanced equilibrium")
    solver.add_argument("instances", type=Path, nargs="+")
    solver.add_argument("--method", choices=METHODS, default="auto")
    solver.add_argument("--cap", type=non_negative_int, default=SUBSET_CAP, help="subset enumeration cap")
    solver.add_argument("--trace", action="store_true", help="print the peeling steps")
    solver.add_argument("--out", type=Path, default=None, help="solution file")
    solver.set_defaults(handler=cmd_solve)

    gen = commands.add_parser("gen", parents=[common], help="generate an instance")
    gen.add_argument("--mode", choices=("random", "balanced", "complete", "bipartite"), default="random")
    gen.add_argument("--n", type=non_negative_int, default=6, help="number of countries")
    gen.add_argument("--density", type=probability, default=0.5)
    gen.add_argument("--sign-ratio", type=probability, default=0.5, help="share of adversary pairs")
    gen.add_argument(
        "--power-range", type=non_negative_int, nargs=2, default=list(POWER_RANGE), metavar=("LOW", "HIGH")
    )
    gen.add_argument("--steps", type=non_negative_int, default=10, help="construction steps (balanced mode)")
    gen.add_argument("--seed", type=non_negative_int, default=None)
    gen.add_argument("--out", type=Path, default=None, help="instance file (default instance.json)")
    gen.set_defaults(handler=cmd_gen)

    nash = commands.add_parser("nash", parents=[common], help="sampled Nash check")
    nash.add_argument("instance", type=Path)
    nash.add_argument("allocation", type=Path)
    nash.add_argument("--samples", type=non_negative_int, default=NASH_SAMPLES)
    nash.add_argument("--seed", type=non_negative_int, default=None)
    nash.set_defaults(handler=cmd_nash)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        report = args.handler(args)
    except NumericalFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (OSError, TypeError, ValueError, IndexError, EnumerationCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        sys.stdout.write(dumps(report.to_dict()))
    else:
        print("\n".join(report.lines))
        for label, seconds in report.timings.items():
            print(f"time {label}: {seconds:.3f}s")
    return report.exit_code
