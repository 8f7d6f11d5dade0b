"""Annual repair plans and the algebra of month-boundary transfers.

Hours are non-negative integers. The monthly mean and both deviation
metrics are exact rationals (`fractions.Fraction`), so callers compare
results with plain equality, no tolerances.

Sign convention for a transfer x_j at the boundary between months j and
j+1 (1-based): positive moves hours forward into month j+1, negative
moves hours backward into month j. A month can donate at most what its
original plan holds, and no adjusted month may go negative.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BoundViolationError,
    FeasibilityError,
    PlanError,
    ShiftBoundaryError,
    ShiftValidationError,
)

__all__ = [
    "AnnualPlan",
    "MonthlyLoads",
    "MeanLoad",
    "TransferVector",
    "ShiftMatrix",
    "DeviationReport",
    "column_sums",
    "mean_load",
    "validate_transfers",
    "apply_transfers",
    "l1_deviation",
    "squared_deviation",
    "quadratic_deviation",
    "deviation_metrics",
    "apply_shift_matrix",
]


def _check_hours(value: object, where: str) -> None:
    # bool is an int subclass; hours must be actual integers
    if not isinstance(value, int) or isinstance(value, bool) or value < 0:
        raise PlanError(f"{where} must be a non-negative integer, got {value!r}")


@dataclass(frozen=True)
class AnnualPlan:
    """Repair plan matrix: one row per equipment item, one column per month."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if not rows:
            raise PlanError("plan needs at least one equipment row")
        n = len(rows[0])
        if n < 2:
            raise PlanError("plan needs at least two months")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise PlanError(f"row {i + 1} has {len(row)} cells, expected {n}")
            for j, cell in enumerate(row):
                _check_hours(cell, f"cell ({i + 1},{j + 1})")
        object.__setattr__(self, "entries", rows)

    @property
    def k(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return len(self.entries[0])

    def total_hours(self) -> int:
        return sum(sum(row) for row in self.entries)


@dataclass(frozen=True)
class MonthlyLoads:
    """Total repair hours per month."""

    loads: tuple[int, ...]

    def __post_init__(self):
        loads = tuple(self.loads)
        if not loads:
            raise PlanError("need at least one month")
        for j, v in enumerate(loads):
            _check_hours(v, f"month {j + 1} load")
        object.__setattr__(self, "loads", loads)

    @property
    def n(self) -> int:
        return len(self.loads)

    def total(self) -> int:
        return sum(self.loads)


@dataclass(frozen=True)
class MeanLoad:
    """Average monthly load, kept as the exact ratio total hours / months."""

    numerator: int
    denominator: int

    def __post_init__(self):
        _check_hours(self.numerator, "total hours")
        if not isinstance(self.denominator, int) or isinstance(self.denominator, bool) or self.denominator < 1:
            raise PlanError(f"month count must be a positive integer, got {self.denominator!r}")

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)


@dataclass(frozen=True)
class TransferVector:
    """Integer hours moved across each month boundary (positive = forward)."""

    x: tuple[int, ...]

    def __post_init__(self):
        xs = tuple(self.x)
        if not xs:
            raise PlanError("a transfer vector needs at least one boundary")
        for b, v in enumerate(xs):
            if not isinstance(v, int) or isinstance(v, bool):
                raise PlanError(f"boundary {b + 1} transfer must be an integer, got {v!r}")
        object.__setattr__(self, "x", xs)


@dataclass(frozen=True)
class ShiftMatrix:
    """Per-cell month shifts: -1 one month earlier, 0 stay, +1 one month later."""

    shifts: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.shifts)
        if not rows:
            raise ShiftValidationError("shift matrix needs at least one row")
        n = len(rows[0])
        if n < 2:
            raise ShiftValidationError("shift matrix needs at least two months")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ShiftValidationError(f"row {i + 1} has {len(row)} cells, expected {n}")
            for j, s in enumerate(row):
                if s not in (-1, 0, 1) or isinstance(s, bool):
                    raise ShiftValidationError(f"cell ({i + 1},{j + 1}) must be -1, 0 or +1, got {s!r}")
        for i, row in enumerate(rows):
            if row[0] == -1:
                raise ShiftBoundaryError(f"row {i + 1} moves work backward out of the first month")
            if row[n - 1] == 1:
                raise ShiftBoundaryError(f"row {i + 1} moves work forward out of the last month")
        object.__setattr__(self, "shifts", rows)

    @property
    def k(self) -> int:
        return len(self.shifts)

    @property
    def n(self) -> int:
        return len(self.shifts[0])


@dataclass(frozen=True)
class DeviationReport:
    """Both deviation metrics of a load vector against the mean."""

    l1: Fraction
    quadratic: Fraction

    def __post_init__(self):
        if self.l1 < 0 or self.quadratic < 0:
            raise PlanError("deviations are non-negative by construction")


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def column_sums(plan: AnnualPlan) -> MonthlyLoads:
    """Total hours per month of the plan."""
    return MonthlyLoads(tuple(sum(row[j] for row in plan.entries) for j in range(plan.n)))


def mean_load(loads: MonthlyLoads) -> MeanLoad:
    """Average monthly hours as an exact ratio, never rounded."""
    return MeanLoad(loads.total(), loads.n)


def validate_transfers(loads: MonthlyLoads, transfers: TransferVector) -> None:
    """Check the transfer vector against the donor bounds and non-negativity.

    Each boundary may move forward at most what its left month holds and
    backward at most what its right month holds (bounds are against the
    original loads: hours cannot pass through a month). Raises
    BoundViolationError or FeasibilityError with the offending position.
    """
    L = loads.loads
    xs = transfers.x
    if len(xs) != len(L) - 1:
        raise PlanError(f"expected {len(L) - 1} transfers for {len(L)} months, got {len(xs)}")
    for b, x in enumerate(xs):
        if x > L[b]:
            raise BoundViolationError(
                b + 1, f"boundary {b + 1}: forward transfer {x} exceeds month {b + 1} hours {L[b]}"
            )
        if x < -L[b + 1]:
            raise BoundViolationError(
                b + 1, f"boundary {b + 1}: backward transfer {x} exceeds month {b + 2} hours {L[b + 1]}"
            )
    prev = 0
    for j in range(len(L)):
        out = xs[j] if j < len(xs) else 0
        adjusted = L[j] - out + prev
        if adjusted < 0:
            raise FeasibilityError(j + 1, f"month {j + 1} would hold {adjusted} hours")
        prev = out


def apply_transfers(loads: MonthlyLoads, transfers: TransferVector) -> MonthlyLoads:
    """Adjusted monthly loads after moving the transfer volumes.

    Month j receives the previous boundary's flow and gives up its own:
    adjusted_j = load_j - x_j + x_{j-1}, with zero flow outside the year.
    Total hours are conserved.
    """
    validate_transfers(loads, transfers)
    L = loads.loads
    xs = transfers.x
    out = []
    prev = 0
    for j in range(len(L)):
        cur = xs[j] if j < len(xs) else 0
        out.append(L[j] - cur + prev)
        prev = cur
    return MonthlyLoads(tuple(out))


def l1_deviation(loads: MonthlyLoads, mean: MeanLoad) -> Fraction:
    """Sum of absolute deviations of the monthly loads from the mean."""
    m = mean.value
    return sum((abs(Fraction(v) - m) for v in loads.loads), Fraction(0))


def squared_deviation(loads: MonthlyLoads, mean: MeanLoad) -> Fraction:
    """Sum of squared deviations of the monthly loads from the mean."""
    m = mean.value
    return sum(((Fraction(v) - m) ** 2 for v in loads.loads), Fraction(0))


def quadratic_deviation(loads: MonthlyLoads, transfers: TransferVector, mean: MeanLoad) -> Fraction:
    """Quadratic deviation evaluated term by term from the transfer values.

    Sums (load_j - mean - x_j + x_{j-1})^2 over the first n-1 months plus
    (load_n - mean + x_{n-1})^2 for the last one. Equal to
    squared_deviation of the adjusted loads for every feasible vector.
    """
    validate_transfers(loads, transfers)
    m = mean.value
    L = loads.loads
    xs = transfers.x
    total = Fraction(0)
    prev = 0
    for j in range(len(L) - 1):
        total += (L[j] - m - xs[j] + prev) ** 2
        prev = xs[j]
    total += (L[-1] - m + prev) ** 2
    return total


def deviation_metrics(loads: MonthlyLoads, mean: MeanLoad) -> DeviationReport:
    """Both metrics of the given loads in one report."""
    return DeviationReport(l1=l1_deviation(loads, mean), quadratic=squared_deviation(loads, mean))


def apply_shift_matrix(plan: AnnualPlan, shifts: ShiftMatrix) -> AnnualPlan:
    """Move each marked cell's full hours one month in the marked direction.

    A cell may only be marked if it holds hours; destination cells
    accumulate. Total hours are conserved and rows never mix. Raises
    ShiftValidationError on a shape mismatch or a move on an empty cell
    (out-of-year moves are rejected by ShiftMatrix itself).
    """
    if shifts.k != plan.k or shifts.n != plan.n:
        raise ShiftValidationError(
            f"shift matrix is {shifts.k}x{shifts.n}, plan is {plan.k}x{plan.n}"
        )
    adjusted = [[0] * plan.n for _ in range(plan.k)]
    for i, (prow, srow) in enumerate(zip(plan.entries, shifts.shifts)):
        for j, (hours, s) in enumerate(zip(prow, srow)):
            if s != 0 and hours == 0:
                raise ShiftValidationError(f"cell ({i + 1},{j + 1}) is empty but marked to move")
            adjusted[i][j + s] += hours
    return AnnualPlan(tuple(tuple(row) for row in adjusted))
