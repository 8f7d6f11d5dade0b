"""Solvers for the boundary-transfer leveling problem.

Three routes produce an integer transfer vector: an exact chain dynamic
program over boundary flows, a half/quarter splitting heuristic, and a
single-pass greedy sweep. A fourth operation exports the quadratic
objective in standard form for external QP machinery; nothing here
solves that form.

Internally deviations are scaled by the month count (L1) or its square
(quadratic) so the search runs on plain integers; results convert back
to exact fractions at the end.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor

from .errors import PlanError, UnsupportedLengthError
from .plan import (
    MeanLoad,
    MonthlyLoads,
    TransferVector,
    apply_transfers,
    l1_deviation,
    mean_load,
    quadratic_deviation,
    validate_transfers,
)

__all__ = [
    "Objective",
    "Method",
    "TieBreak",
    "SolverConfig",
    "SolveResult",
    "StandardFormQP",
    "ShiftedVariableForm",
    "solve_exact",
    "solve_bisection",
    "solve_greedy",
    "standard_form",
]


class Objective(str, enum.Enum):
    L1 = "l1"
    QUADRATIC = "quadratic"


class Method(str, enum.Enum):
    EXACT = "exact"
    BISECTION = "bisection"
    GREEDY = "greedy"


class TieBreak(str, enum.Enum):
    # single policy, named so results document their own determinism
    SMALLEST_LEXICOGRAPHIC = "smallest-lexicographic"


@dataclass(frozen=True)
class SolverConfig:
    """What to minimize, how, and how ties are broken."""

    objective: Objective = Objective.L1
    method: Method = Method.EXACT
    tie_break: TieBreak = TieBreak.SMALLEST_LEXICOGRAPHIC

    def __post_init__(self):
        if not isinstance(self.objective, Objective):
            raise PlanError(f"unknown objective {self.objective!r}")
        if not isinstance(self.method, Method):
            raise PlanError(f"unknown method {self.method!r}")
        if not isinstance(self.tie_break, TieBreak):
            raise PlanError(f"unknown tie-break {self.tie_break!r}")


@dataclass(frozen=True)
class SolveResult:
    """A feasible transfer vector plus the metric it achieves."""

    transfers: TransferVector
    objective_value: Fraction
    method: str
    optimal: bool
    visited_states: int


# ---------------------------------------------------------------------------
# scaled integer costs shared by the exact and splitting routes
# ---------------------------------------------------------------------------


def _scaled_month_cost(objective: Objective, n: int, total: int):
    """Per-month cost as a plain integer.

    The deviation of an adjusted load A' from the mean total/n equals
    (n*A' - total)/n, so |.| costs carry a factor n and squared costs a
    factor n^2. Returns (cost function, that scale factor).
    """
    if objective is Objective.L1:

        def cost(load: int) -> int:
            d = n * load - total
            return -d if d < 0 else d

        return cost, n

    def cost(load: int) -> int:
        d = n * load - total
        return d * d

    return cost, n * n


def _chain_dp(L, cost, fixed=None):
    """Minimize the summed per-month cost over integer boundary flows.

    The state at boundary b is its flow x_b in [-L[b+1], L[b]]; month b+1
    costs cost(L[b+1] - x_{b+1} + x_b), so a backward sweep of suffix
    minima followed by a forward reconstruction is exact. Reconstruction
    takes the smallest flow at every stage, which yields the
    lexicographically smallest optimal vector. `fixed` pins chosen
    boundaries (0-based) to a single value; a pinned value may make some
    states dead, tracked as None.

    Returns (best scaled cost, flows tuple, transition evaluations).
    """
    n = len(L)
    B = n - 1
    doms = []
    for b in range(B):
        if fixed is not None and b in fixed:
            v = fixed[b]
            doms.append((v, v))
        else:
            doms.append((-L[b + 1], L[b]))
    visited = 0

    # suffix[b][x - lo] = least cost of months b+1..n-1 given flow x at b
    suffix: list[list] = [[] for _ in range(B)]
    lo, hi = doms[B - 1]
    last = L[n - 1]
    suffix[B - 1] = [cost(last + x) for x in range(lo, hi + 1)]
    visited += hi - lo + 1
    for b in range(B - 2, -1, -1):
        lo, hi = doms[b]
        lo1, hi1 = doms[b + 1]
        nxt = suffix[b + 1]
        month = L[b + 1]
        vals = []
        for x in range(lo, hi + 1):
            pool = month + x  # hours in month b+1 before its own outflow
            top = pool if pool < hi1 else hi1  # outflow past the pool goes negative
            best = None
            for i in range(top - lo1 + 1):
                v = nxt[i]
                if v is None:
                    continue
                c = cost(pool - lo1 - i) + v
                if best is None or c < best:
                    best = c
            if top >= lo1:
                visited += top - lo1 + 1
            vals.append(best)
        suffix[b] = vals

    lo0, hi0 = doms[0]
    head = suffix[0]
    first = L[0]
    best_total = None
    for i in range(hi0 - lo0 + 1):
        v = head[i]
        if v is None:
            continue
        c = cost(first - lo0 - i) + v
        if best_total is None or c < best_total:
            best_total = c
    visited += hi0 - lo0 + 1
    if best_total is None:
        raise PlanError("no feasible transfer vector")  # unreachable for in-bound pins

    xs: list[int] = []
    target = best_total
    for b in range(B):
        lo, hi = doms[b]
        pool = L[b] + (xs[-1] if b else 0)
        top = pool if pool < hi else hi
        vals = suffix[b]
        for x in range(lo, top + 1):
            v = vals[x - lo]
            if v is None:
                continue
            if cost(pool - x) + v == target:
                xs.append(x)
                target = v
                break
        else:
            raise AssertionError("suffix table and reconstruction disagree")
    return best_total, tuple(xs), visited


def _metric_at(loads: MonthlyLoads, transfers: TransferVector, mean: MeanLoad, objective: Objective) -> Fraction:
    if objective is Objective.L1:
        return l1_deviation(apply_transfers(loads, transfers), mean)
    return quadratic_deviation(loads, transfers, mean)


# ---------------------------------------------------------------------------
# the three methods
# ---------------------------------------------------------------------------


def solve_exact(loads: MonthlyLoads, config: SolverConfig = SolverConfig()) -> SolveResult:
    """Globally optimal integer transfers for the configured objective.

    Covers the whole feasible box through the chain DP; among optima the
    returned vector is the lexicographically smallest.
    """
    L = loads.loads
    if len(L) < 2:
        raise PlanError("leveling needs at least two months")
    cost, scale = _scaled_month_cost(config.objective, len(L), sum(L))
    best, xs, visited = _chain_dp(L, cost)
    transfers = TransferVector(xs)
    validate_transfers(loads, transfers)  # contract check on the way out
    return SolveResult(transfers, Fraction(best, scale), Method.EXACT.value, True, visited)


def _round_half_toward_zero(value: Fraction) -> int:
    """Nearest integer, exact .5 ties going toward zero."""
    if value >= 0:
        return ceil(value - Fraction(1, 2))
    return floor(value + Fraction(1, 2))


def solve_greedy(loads: MonthlyLoads, config: SolverConfig = SolverConfig(method=Method.GREEDY)) -> SolveResult:
    """One left-to-right sweep: push each month's excess forward, pull each
    deficit from the following month.

    The per-boundary quantum is the rounded distance from the running
    load to the mean (ties toward zero), clamped to the donor bound and
    to the hours actually present. Fast and always feasible, not optimal.
    """
    L = loads.loads
    n = len(L)
    if n < 2:
        raise PlanError("leveling needs at least two months")
    mean = mean_load(loads)
    m = mean.value
    xs = []
    carry = 0  # signed flow chosen at the previous boundary
    for b in range(n - 1):
        current = L[b] + carry
        step = _round_half_toward_zero(current - m)
        if step > 0:
            x = min(step, L[b], current)
        elif step < 0:
            x = -min(-step, L[b + 1])  # months to the right are still untouched
        else:
            x = 0
        xs.append(x)
        carry = x
    transfers = TransferVector(tuple(xs))
    validate_transfers(loads, transfers)
    value = _metric_at(loads, transfers, mean, config.objective)
    return SolveResult(transfers, value, Method.GREEDY.value, False, n - 1)


def _scan_min(fn, lo: int, hi: int) -> tuple[int, int]:
    """Smallest argmin of fn over the integer range [lo, hi], plus scan size."""
    best_v = None
    best_x = lo
    for x in range(lo, hi + 1):
        v = fn(x)
        if best_v is None or v < best_v:
            best_v = v
            best_x = x
    return best_x, hi - lo + 1


def solve_bisection(loads: MonthlyLoads, config: SolverConfig = SolverConfig(method=Method.BISECTION)) -> SolveResult:
    """Fix the mid-year flow, then the two quarter flows, then level each
    quarter's interior exactly with those three flows pinned.

    Each split flow is chosen by scanning its donor bounds for the value
    that best balances the two sides of the split (smallest flow on
    ties). Only defined when the month count is divisible by four;
    callers that need other lengths should fall back to solve_exact.
    """
    L = loads.loads
    n = len(L)
    if n < 4 or n % 4 != 0:
        raise UnsupportedLengthError(f"splitting needs a month count divisible by 4, got {n}")
    total = sum(L)
    cost, scale = _scaled_month_cost(config.objective, n, total)
    q, mid = n // 4, n // 2

    if config.objective is Objective.L1:

        def pair(a: int, b: int) -> int:
            return (a if a >= 0 else -a) + (b if b >= 0 else -b)

    else:

        def pair(a: int, b: int) -> int:
            return a * a + b * b

    # mid-year flow: balance the two half sums around total/2 (x2 scaling);
    # both halves deviate by the same amount, so one |.| decides either objective
    h1 = sum(L[:mid])

    def half_cost(v: int) -> int:
        d = 2 * (h1 - v) - total
        return -d if d < 0 else d

    v_mid, scan1 = _scan_min(half_cost, -L[mid], L[mid - 1])

    # quarter flows: balance the two quarters of each half around total/4 (x4)
    q1, q2 = sum(L[:q]), sum(L[q:mid])

    def first_quarter_cost(v: int) -> int:
        return pair(4 * (q1 - v) - total, 4 * (q2 + v - v_mid) - total)

    v_q1, scan2 = _scan_min(first_quarter_cost, -L[q], L[q - 1])

    q3, q4 = sum(L[mid : 3 * q]), sum(L[3 * q :])

    def third_quarter_cost(v: int) -> int:
        return pair(4 * (q3 + v_mid - v) - total, 4 * (q4 + v) - total)

    v_q3, scan3 = _scan_min(third_quarter_cost, -L[3 * q], L[3 * q - 1])

    fixed = {q - 1: v_q1, mid - 1: v_mid, 3 * q - 1: v_q3}
    best, xs, visited = _chain_dp(L, cost, fixed)
    transfers = TransferVector(xs)
    validate_transfers(loads, transfers)
    return SolveResult(
        transfers,
        Fraction(best, scale),
        Method.BISECTION.value,
        False,
        visited + scan1 + scan2 + scan3,
    )


# ---------------------------------------------------------------------------
# standard-form export of the quadratic objective
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ShiftedVariableForm:
    """The same objective over non-negative variables via x_i = xbar_i - x0.

    `variables` names the columns (xbar_1..xbar_{n-1}, x0); linear and
    quadratic are the coefficients of z in those variables.
    """

    variables: tuple[str, ...]
    linear: tuple[Fraction, ...]
    quadratic: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class StandardFormQP:
    """Slack-variable encoding of the quadratic leveling objective.

    Maximizing z(x) = linear_coeffs . x + x^T quadratic_coeffs x subject
    to the slack rows is equivalent to minimizing the quadratic deviation
    V: at every feasible x, z(x) = constant_offset - V(x) exactly. The
    slack rows encode x_i + xp_i = A_i and -x_i + xpp_i = A_{i+1} with
    all slack variables non-negative.
    """

    shifted_loads: tuple[Fraction, ...]  # per-month load minus the mean
    linear_coeffs: tuple[Fraction, ...]  # over x_1..x_{n-1}
    quadratic_coeffs: tuple[tuple[Fraction, ...], ...]  # symmetric, consecutive coupling
    constraint_matrix: tuple[tuple[int, ...], ...]
    constraint_rhs: tuple[int, ...]
    variables: tuple[str, ...]  # column order of constraint_matrix
    substitution: ShiftedVariableForm
    constant_offset: Fraction  # sum of squared shifted loads

    def objective_z(self, x) -> Fraction:
        """Evaluate z at a transfer vector (any integers or rationals)."""
        if len(x) != len(self.linear_coeffs):
            raise PlanError(f"expected {len(self.linear_coeffs)} flows, got {len(x)}")
        z = sum((c * v for c, v in zip(self.linear_coeffs, x)), Fraction(0))
        for i, row in enumerate(self.quadratic_coeffs):
            for j, d in enumerate(row):
                if d:
                    z += d * x[i] * x[j]
        return z

    def substituted_z(self, xbar, x0) -> Fraction:
        """Evaluate the substituted objective at (xbar_1..xbar_{n-1}, x0)."""
        sub = self.substitution
        if len(xbar) + 1 != len(sub.linear):
            raise PlanError(f"expected {len(sub.linear) - 1} shifted flows, got {len(xbar)}")
        vec = tuple(xbar) + (x0,)
        z = sum((c * v for c, v in zip(sub.linear, vec)), Fraction(0))
        for i, row in enumerate(sub.quadratic):
            for j, d in enumerate(row):
                if d:
                    z += d * vec[i] * vec[j]
        return z

    def slack_values(self, x) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The slack pair (xp, xpp) for a transfer vector; non-negative iff x is in bounds."""
        B = len(self.linear_coeffs)
        if len(x) != B:
            raise PlanError(f"expected {B} flows, got {len(x)}")
        xp = tuple(self.constraint_rhs[i] - x[i] for i in range(B))
        xpp = tuple(self.constraint_rhs[B + i] + x[i] for i in range(B))
        return xp, xpp


def standard_form(loads: MonthlyLoads) -> StandardFormQP:
    """Export max z = c.x + x^T D x with slack constraints and the
    non-negative substitution record.

    The encoding is derived directly from the quadratic deviation so the
    identity z(x) = constant_offset - V(x) holds exactly; D couples only
    consecutive flows, and the substituted form couples xbar_i with
    xbar_{i+-1} and x0 only.
    """
    L = loads.loads
    n = len(L)
    if n < 2:
        raise PlanError("standard form needs at least two months")
    mean = Fraction(sum(L), n)
    ahat = tuple(Fraction(v) - mean for v in L)
    B = n - 1

    c = tuple(-2 * (ahat[i + 1] - ahat[i]) for i in range(B))
    D = [[Fraction(0)] * B for _ in range(B)]
    for i in range(B):
        D[i][i] = Fraction(-2)
        if i + 1 < B:
            D[i][i + 1] = Fraction(1)
            D[i + 1][i] = Fraction(1)

    width = 3 * B
    rows = []
    rhs = []
    for i in range(B):  # x_i + xp_i = A_i
        row = [0] * width
        row[i] = 1
        row[B + i] = 1
        rows.append(tuple(row))
        rhs.append(L[i])
    for i in range(B):  # -x_i + xpp_i = A_{i+1}
        row = [0] * width
        row[i] = -1
        row[2 * B + i] = 1
        rows.append(tuple(row))
        rhs.append(L[i + 1])
    variables = (
        tuple(f"x{i + 1}" for i in range(B))
        + tuple(f"x{i + 1}_prime" for i in range(B))
        + tuple(f"x{i + 1}_dprime" for i in range(B))
    )

    # substitution x_i = xbar_i - x0: expand both objective pieces in the
    # shifted variables; row_sums = D.1 drives the x0 cross terms
    row_sums = [sum(D[i], Fraction(0)) for i in range(B)]
    sub_linear = c + (-sum(c, Fraction(0)),)
    Q = [[Fraction(0)] * (B + 1) for _ in range(B + 1)]
    for i in range(B):
        for j in range(B):
            Q[i][j] = D[i][j]
        Q[i][B] = -row_sums[i]
        Q[B][i] = -row_sums[i]
    Q[B][B] = sum(row_sums, Fraction(0))
    sub_vars = tuple(f"xbar{i + 1}" for i in range(B)) + ("x0",)

    return StandardFormQP(
        shifted_loads=ahat,
        linear_coeffs=c,
        quadratic_coeffs=tuple(tuple(r) for r in D),
        constraint_matrix=tuple(rows),
        constraint_rhs=tuple(rhs),
        variables=variables,
        substitution=ShiftedVariableForm(
            variables=sub_vars,
            linear=sub_linear,
            quadratic=tuple(tuple(r) for r in Q),
        ),
        constant_offset=sum((a * a for a in ahat), Fraction(0)),
    )
