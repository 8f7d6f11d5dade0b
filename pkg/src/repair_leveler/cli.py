"""Batch command line: parse a plan, level it, realize the moves, write files.

Exit codes: 0 success, 1 parse error, 2 infeasible or constraint
violation, 3 oracle budget exceeded, 4 bad flags.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .errors import (
    BoundViolationError,
    BudgetExceededError,
    FeasibilityError,
    LevelingError,
    PlanError,
    PlanParseError,
    ShiftBoundaryError,
    ShiftValidationError,
    UnsupportedLengthError,
)
from .io import build_report, parse_plan, render_report, write_plan, write_shift_matrix
from .oracle import DEFAULT_BUDGET, brute_force_subset, brute_force_transfers
from .plan import (
    AnnualPlan,
    TransferVector,
    apply_transfers,
    column_sums,
    l1_deviation,
    mean_load,
    quadratic_deviation,
)
from .realization import RealizationResult, SelectionProblem, realize_transfers
from .solvers import (
    Method,
    Objective,
    SolveResult,
    SolverConfig,
    solve_bisection,
    solve_exact,
    solve_greedy,
)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_CONSTRAINT = 2
EXIT_BUDGET = 3
EXIT_USAGE = 4

_CONSTRAINT_ERRORS = (
    PlanError,
    BoundViolationError,
    FeasibilityError,
    ShiftBoundaryError,
    ShiftValidationError,
    UnsupportedLengthError,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; 2 means infeasible here
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _transfer_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part.strip()) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("transfer list is empty")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="repair-leveler",
        description="Level an annual repair plan by moving work across month boundaries, "
        "then pick the concrete repairs that realize each move.",
    )
    parser.add_argument("--input", required=True, help="plan CSV: one row per equipment item, one integer column per month")
    parser.add_argument("--output-dir", default=".", help="where adjusted_plan.csv, shifts.csv and report.json go (default: current directory)")
    parser.add_argument("--method", choices=[m.value for m in Method], default=Method.EXACT.value, help="transfer solver (default: exact)")
    parser.add_argument("--objective", choices=[o.value for o in Objective], default=Objective.L1.value, help="deviation metric to minimize (default: l1)")
    parser.add_argument("--months", type=int, default=None, help="validate that the plan has exactly this many months")
    parser.add_argument("--verify", action="store_true", help="cross-check the result against the exhaustive reference search")
    parser.add_argument("--shifts-only", action="store_true", help="skip solving; realize the vector given via --transfers")
    parser.add_argument("--transfers", type=_transfer_list, default=None, metavar="X1,X2,...", help='precomputed transfer vector, e.g. "4,-2,-4" (requires --shifts-only)')
    return parser


def _metric(loads, transfers, mean, objective: Objective) -> Fraction:
    if objective is Objective.L1:
        return l1_deviation(apply_transfers(loads, transfers), mean)
    return quadratic_deviation(loads, transfers, mean)


def _solve(loads, objective: Objective, method: Method) -> tuple[SolveResult, str | None]:
    config = SolverConfig(objective=objective, method=method)
    if method is Method.GREEDY:
        return solve_greedy(loads, config), None
    if method is Method.BISECTION:
        try:
            return solve_bisection(loads, config), None
        except UnsupportedLengthError:
            # splitting is only defined for quarter-structured years
            result = solve_exact(loads, SolverConfig(objective=objective))
            return result, Method.BISECTION.value
    return solve_exact(loads, config), None


def _oracle_transfer_block(loads, objective: Objective, result: SolveResult, exact: bool) -> dict:
    reference = brute_force_transfers(loads, objective, DEFAULT_BUDGET)
    gap = result.objective_value - reference.objective_value
    if exact:
        match = (
            result.objective_value == reference.objective_value
            and result.transfers == reference.transfers
        )
    else:
        match = gap >= 0
    return {
        "mode": "transfer-search",
        "objective": str(reference.objective_value),
        "objective_decimal": float(reference.objective_value),
        "transfers": list(reference.transfers.x),
        "gap": str(gap),
        "gap_decimal": float(gap),
        "match": match,
    }


def _oracle_subset_block(plan: AnnualPlan, transfers: TransferVector, realization: RealizationResult) -> dict:
    """Re-derive each boundary's donor pool and check the achieved hours
    against the exhaustive subset scan."""
    marks = realization.shift_matrix.shifts
    entries = []
    all_match = True
    for b, x in enumerate(transfers.x):
        if x == 0:
            continue
        if x > 0:
            month = b
            # cells claimed backward by the previous boundary were gone already
            rows = [i for i in range(plan.k) if plan.entries[i][month] > 0 and marks[i][month] != -1]
        else:
            month = b + 1
            rows = [i for i in range(plan.k) if plan.entries[i][month] > 0]
        items = tuple(plan.entries[i][month] for i in rows)
        reference = brute_force_subset(SelectionProblem(items, abs(x)), DEFAULT_BUDGET)
        best = sum(items[c] for c in reference)
        ok = best == realization.achieved[b]
        all_match = all_match and ok
        entries.append({"boundary": b + 1, "best_achievable": best, "achieved": realization.achieved[b], "match": ok})
    return {"mode": "subset-selection", "boundaries": entries, "match": all_match}


def _run(args) -> int:
    plan = parse_plan(args.input)
    if args.months is not None and plan.n != args.months:
        raise PlanError(f"plan has {plan.n} months, --months asked for {args.months}")
    loads = column_sums(plan)
    mean = mean_load(loads)
    objective = Objective(args.objective)

    requested_method = None
    if args.shifts_only:
        transfers = TransferVector(args.transfers)
        method_tag = "supplied-transfers"
        after = _metric(loads, transfers, mean, objective)
        optimal = False
        visited = 0
    else:
        result, requested_method = _solve(loads, objective, Method(args.method))
        transfers = result.transfers
        method_tag = result.method
        after = result.objective_value
        optimal = result.optimal
        visited = result.visited_states

    realization = realize_transfers(plan, transfers)

    oracle_block = None
    if args.verify:
        if args.shifts_only:
            oracle_block = _oracle_subset_block(plan, transfers, realization)
        else:
            oracle_block = _oracle_transfer_block(
                loads, objective, result, Method(args.method) is Method.EXACT and requested_method is None
            )

    report = build_report(
        plan=plan,
        objective=objective,
        method=method_tag,
        objective_after=after,
        transfers=transfers,
        achieved=realization.achieved,
        residuals=realization.residuals,
        adjusted_plan=realization.adjusted_plan,
        optimal=optimal,
        visited_states=visited,
        requested_method=requested_method,
        oracle=oracle_block,
    )

    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_plan(realization.adjusted_plan, out_dir / "adjusted_plan.csv")
    write_shift_matrix(realization.shift_matrix, out_dir / "shifts.csv")
    (out_dir / "report.json").write_text(render_report(report), encoding="utf-8")

    print(f"plan: {plan.k} items x {plan.n} months, {loads.total()} hours, mean {mean.value}")
    print(
        f"method {method_tag}, objective {objective.value}: "
        f"before {report.objective_before}, after {report.objective_after}, "
        f"realized {report.objective_realized}"
    )
    if oracle_block is not None:
        print(f"oracle check: {'match' if oracle_block['match'] else 'MISMATCH'}")
    print(f"wrote adjusted_plan.csv, shifts.csv, report.json to {out_dir}")
    return EXIT_OK


def run_pipeline(argv=None) -> int:
    """Parse flags, run the full pipeline, and return the exit status.

    Equivalent to invoking the command line; output files land in the
    requested directory and diagnostics go to stderr.
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.shifts_only and args.transfers is None:
        parser.error("--shifts-only requires --transfers")
    if args.transfers is not None and not args.shifts_only:
        parser.error("--transfers is only accepted together with --shifts-only")
    try:
        return _run(args)
    except PlanParseError as exc:
        print(f"repair-leveler: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"repair-leveler: oracle budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except _CONSTRAINT_ERRORS as exc:
        print(f"repair-leveler: infeasible: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except LevelingError as exc:  # any straggler from the package
        print(f"repair-leveler: error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT


def main(argv=None) -> int:
    return run_pipeline(argv)


if __name__ == "__main__":
    sys.exit(main())
