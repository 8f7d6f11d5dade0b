"""Plan CSV files, shift CSV files, and the JSON leveling report.

All emitted files are deterministic byte for byte: fixed header, fixed
key order, exact rationals rendered as "p/q" strings with a float
rendering alongside for convenience.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import IO

from .errors import PlanError, PlanParseError
from .plan import (
    AnnualPlan,
    MeanLoad,
    MonthlyLoads,
    ShiftMatrix,
    TransferVector,
    column_sums,
    deviation_metrics,
    mean_load,
)
from .solvers import Objective, StandardFormQP

__all__ = [
    "parse_plan",
    "write_plan",
    "write_shift_matrix",
    "LevelingReport",
    "build_report",
    "render_report",
    "standard_form_to_dict",
]


def _parse_rows(rows: list[list[str]]) -> AnnualPlan:
    cleaned: list[tuple[int, list[str]]] = []  # (1-based file row, cells)
    for lineno, row in enumerate(rows, start=1):
        if not row:
            continue  # blank line
        cleaned.append((lineno, [cell.strip() for cell in row]))
    if not cleaned:
        raise PlanParseError("plan file holds no rows")

    def is_int(text: str) -> bool:
        try:
            int(text)
        except ValueError:
            return False
        return True

    first_row = cleaned[0][1]
    if not all(is_int(cell) for cell in first_row):
        cleaned = cleaned[1:]  # header row
        if not cleaned:
            raise PlanParseError("plan file holds a header but no data rows")

    width = len(cleaned[0][1])
    entries = []
    for lineno, cells in cleaned:
        if len(cells) != width:
            raise PlanParseError(
                f"row {lineno} has {len(cells)} cells, expected {width}", row=lineno
            )
        parsed = []
        for col, cell in enumerate(cells, start=1):
            if not is_int(cell):
                raise PlanParseError(
                    f"row {lineno}, column {col}: {cell!r} is not an integer",
                    row=lineno,
                    column=col,
                )
            value = int(cell)
            if value < 0:
                raise PlanParseError(
                    f"row {lineno}, column {col}: hours cannot be negative ({value})",
                    row=lineno,
                    column=col,
                )
            parsed.append(value)
        entries.append(tuple(parsed))
    try:
        return AnnualPlan(tuple(entries))
    except PlanError as exc:  # e.g. a one-month file: structurally bad input
        raise PlanParseError(str(exc)) from exc


def parse_plan(source: str | Path | IO[str]) -> AnnualPlan:
    """Read an annual plan from a CSV path or text stream.

    One row per equipment item, one integer column per month. A header
    row is optional and auto-detected (any non-integer cell in the first
    row). Raises PlanParseError with the 1-based row/column on malformed
    input, including unreadable paths.
    """
    if hasattr(source, "read"):
        return _parse_rows(list(csv.reader(source)))
    try:
        with open(source, newline="", encoding="utf-8") as fh:
            return _parse_rows(list(csv.reader(fh)))
    except OSError as exc:
        raise PlanParseError(f"cannot read plan file {source}: {exc.strerror}") from exc


def _header(n: int) -> list[str]:
    return [f"month_{j + 1}" for j in range(n)]


def write_plan(plan: AnnualPlan, path: str | Path) -> None:
    """Write a plan as CSV with the standard month header."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_header(plan.n))
        writer.writerows(plan.entries)


def write_shift_matrix(shifts: ShiftMatrix, path: str | Path) -> None:
    """Write a shift matrix (-1/0/+1 cells) as CSV with the month header."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_header(shifts.n))
        writer.writerows(shifts.shifts)


def _ratio(value: Fraction) -> str:
    return str(value)  # "p/q", or plain "p" when the denominator is 1


@dataclass(frozen=True)
class LevelingReport:
    """Everything the pipeline decided, in one serializable record.

    objective_after is the configured metric at the transfer vector the
    solver (or the caller) produced; objective_realized is the same
    metric recomputed from the emitted adjusted plan, so the two differ
    exactly when realization left residuals.
    """

    equipment: int
    months: int
    column_sums: tuple[int, ...]
    total_hours: int
    mean: Fraction
    method: str
    objective: str
    objective_before: Fraction
    objective_after: Fraction
    objective_realized: Fraction
    transfers: tuple[int, ...]
    boundaries: tuple[dict, ...]
    optimal: bool
    visited_states: int
    requested_method: str | None = None
    oracle: dict | None = None

    def to_dict(self) -> dict:
        doc: dict = {
            "input": {
                "equipment": self.equipment,
                "months": self.months,
                "column_sums": list(self.column_sums),
                "total_hours": self.total_hours,
                "mean": _ratio(self.mean),
                "mean_decimal": float(self.mean),
            },
            "method": self.method,
        }
        if self.requested_method is not None:
            doc["requested_method"] = self.requested_method
        doc.update(
            {
                "objective": self.objective,
                "objective_before": _ratio(self.objective_before),
                "objective_before_decimal": float(self.objective_before),
                "objective_after": _ratio(self.objective_after),
                "objective_after_decimal": float(self.objective_after),
                "objective_realized": _ratio(self.objective_realized),
                "objective_realized_decimal": float(self.objective_realized),
                "transfers": list(self.transfers),
                "boundaries": list(self.boundaries),
                "optimal": self.optimal,
                "visited_states": self.visited_states,
            }
        )
        if self.oracle is not None:
            doc["oracle"] = self.oracle
        return doc


def build_report(
    plan: AnnualPlan,
    objective: Objective,
    method: str,
    objective_after: Fraction,
    transfers: TransferVector,
    achieved: tuple[int, ...],
    residuals: tuple[int, ...],
    adjusted_plan: AnnualPlan,
    optimal: bool,
    visited_states: int,
    requested_method: str | None = None,
    oracle: dict | None = None,
) -> LevelingReport:
    """Assemble the report; before/realized metrics are recomputed here."""
    loads = column_sums(plan)
    mean = mean_load(loads)
    before = deviation_metrics(loads, mean)
    realized = deviation_metrics(column_sums(adjusted_plan), mean)
    pick = (lambda r: r.l1) if objective is Objective.L1 else (lambda r: r.quadratic)
    boundaries = tuple(
        {
            "boundary": b + 1,
            "requested": transfers.x[b],
            "achieved": achieved[b],
            "residual": residuals[b],
        }
        for b in range(len(transfers.x))
    )
    return LevelingReport(
        equipment=plan.k,
        months=plan.n,
        column_sums=loads.loads,
        total_hours=loads.total(),
        mean=mean.value,
        method=method,
        objective=objective.value,
        objective_before=pick(before),
        objective_after=objective_after,
        objective_realized=pick(realized),
        transfers=transfers.x,
        boundaries=boundaries,
        optimal=optimal,
        visited_states=visited_states,
        requested_method=requested_method,
        oracle=oracle,
    )


def render_report(report: LevelingReport) -> str:
    """Deterministic JSON rendering, keys in fixed order."""
    return json.dumps(report.to_dict(), indent=2) + "\n"


def standard_form_to_dict(qp: StandardFormQP) -> dict:
    """Serialize a standard-form export; rationals become "p/q" strings."""
    return {
        "shifted_loads": [_ratio(v) for v in qp.shifted_loads],
        "linear_coeffs": [_ratio(v) for v in qp.linear_coeffs],
        "quadratic_coeffs": [[_ratio(v) for v in row] for row in qp.quadratic_coeffs],
        "constraint_matrix": [list(row) for row in qp.constraint_matrix],
        "constraint_rhs": list(qp.constraint_rhs),
        "variables": list(qp.variables),
        "substitution": {
            "relation": "x_i = xbar_i - x0, all substituted variables non-negative",
            "variables": list(qp.substitution.variables),
            "linear": [_ratio(v) for v in qp.substitution.linear],
            "quadratic": [[_ratio(v) for v in row] for row in qp.substitution.quadratic],
        },
        "constant_offset": _ratio(qp.constant_offset),
    }
