import random

import pytest

from repair_leveler import (
    AnnualPlan,
    PlanError,
    SelectionProblem,
    TransferVector,
    apply_shift_matrix,
    apply_transfers,
    brute_force_subset,
    column_sums,
    realize_transfers,
    solve_exact,
    subset_select,
)
from helpers import GOLDEN_PLAN, random_feasible_transfers, random_plan


def test_subset_select_basic():
    assert subset_select(SelectionProblem((8, 6, 5), 11)) == (1, 2)
    assert subset_select(SelectionProblem((21, 11, 3), 21)) == (0,)
    assert subset_select(SelectionProblem((2, 3), 10)) == (0, 1)


def test_subset_select_nothing_fits():
    assert subset_select(SelectionProblem((9, 8), 5)) == ()
    assert subset_select(SelectionProblem((5,), 0)) == ()
    assert subset_select(SelectionProblem((8, 6, 5), 0)) == ()


def test_subset_tie_break_fewest_items():
    # 5 alone ties the pair (3,2) on sum; the single item wins
    assert subset_select(SelectionProblem((5, 3, 2), 5)) == (0,)


def test_subset_tie_break_lexicographic():
    assert subset_select(SelectionProblem((3, 3), 3)) == (0,)
    assert subset_select(SelectionProblem((4, 4, 4), 8)) == (0, 1)


def test_subset_problem_validation():
    with pytest.raises(PlanError):
        SelectionProblem((0, 3), 5)
    with pytest.raises(PlanError):
        SelectionProblem((3, -1), 5)
    with pytest.raises(PlanError):
        SelectionProblem((3,), -1)
    assert SelectionProblem((), 4).items == ()
    assert subset_select(SelectionProblem((), 4)) == ()


def test_subset_matches_oracle():
    rng = random.Random(909)
    for _ in range(300):
        count = rng.randint(1, 12)
        items = tuple(rng.randint(1, 15) for _ in range(count))
        capacity = rng.randint(0, sum(items))
        problem = SelectionProblem(items, capacity)
        assert subset_select(problem) == brute_force_subset(problem)


def test_realize_golden():
    result = solve_exact(column_sums(GOLDEN_PLAN))
    real = realize_transfers(GOLDEN_PLAN, result.transfers)
    assert result.transfers.x == (3, -3, -5)
    assert real.achieved == (0, 3, 5)
    assert real.residuals == (3, 0, 0)
    assert column_sums(real.adjusted_plan).loads == (50, 43, 46, 46)


def test_realize_golden_cells():
    real = realize_transfers(GOLDEN_PLAN, TransferVector((3, -3, -5)))
    # boundary 2 pulls row 3's 3-hour item out of month 3; boundary 3
    # pulls the 2- and 3-hour items out of month 4
    assert real.shift_matrix.shifts == (
        (0, 0, 0, 0),
        (0, 0, 0, 0),
        (0, 0, -1, -1),
        (0, 0, 0, -1),
    )
    assert real.adjusted_plan.entries == (
        (10, 20, 30, 40),
        (5, 8, 6, 6),
        (21, 14, 2, 0),
        (14, 1, 8, 0),
    )


def test_realize_supplied_vector():
    real = realize_transfers(GOLDEN_PLAN, TransferVector((4, -2, -4)))
    # no month-1 item fits under 4 hours and nothing in month 3 fits
    # under 2, so only the last boundary moves work
    assert real.achieved == (0, 0, 3)
    assert real.residuals == (4, 2, 1)
    assert column_sums(real.adjusted_plan).loads == (50, 40, 47, 48)


def test_realize_zero_vector_is_noop():
    real = realize_transfers(GOLDEN_PLAN, TransferVector((0, 0, 0)))
    assert real.achieved == (0, 0, 0)
    assert real.residuals == (0, 0, 0)
    assert real.adjusted_plan.entries == GOLDEN_PLAN.entries
    assert all(v == 0 for row in real.shift_matrix.shifts for v in row)


def test_realize_rejects_wrong_length():
    with pytest.raises(PlanError):
        realize_transfers(GOLDEN_PLAN, TransferVector((1, 2)))


def test_realize_excludes_cells_already_moved():
    # boundary 1 pulls row 2's 4 hours back out of month 2; boundary 2
    # must not reuse that cell, and nothing else fits under 4
    plan = AnnualPlan(((0, 5, 0), (0, 4, 0)))
    real = realize_transfers(plan, TransferVector((-4, 4)))
    assert real.achieved == (4, 0)
    assert real.residuals == (0, 4)
    assert real.shift_matrix.shifts == ((0, 0, 0), (0, -1, 0))


def test_realize_forward_then_forward_uses_fresh_cells():
    plan = AnnualPlan(((4, 3, 0),))
    real = realize_transfers(plan, TransferVector((4, 3)))
    # month 2 gains the moved 4 but only its own original 3 may move on
    assert real.achieved == (4, 3)
    assert real.adjusted_plan.entries == ((0, 4, 3),)


def test_realize_residual_identity():
    rng = random.Random(4242)
    for _ in range(200):
        plan = random_plan(rng, rng.randint(1, 4), rng.randint(2, 5), 8)
        x = random_feasible_transfers(rng, column_sums(plan))
        real = realize_transfers(plan, x)
        for flow, got in zip(x.x, real.achieved):
            assert 0 <= got <= abs(flow)
        residuals = tuple(abs(f) - g for f, g in zip(x.x, real.achieved))
        assert real.residuals == residuals


def test_realize_consistency_invariant():
    # the realized plan's column sums equal the original sums moved by
    # the signed achieved flows
    rng = random.Random(77)
    for _ in range(200):
        plan = random_plan(rng, rng.randint(1, 4), rng.randint(2, 5), 8)
        loads = column_sums(plan)
        x = random_feasible_transfers(rng, loads)
        real = realize_transfers(plan, x)
        signed = tuple(
            g if f >= 0 else -g for f, g in zip(x.x, real.achieved)
        )
        expected = apply_transfers(loads, TransferVector(signed))
        assert column_sums(real.adjusted_plan).loads == expected.loads
        assert real.adjusted_plan.total_hours() == plan.total_hours()
        # the returned plan is exactly the shift matrix applied to the input
        assert apply_shift_matrix(plan, real.shift_matrix).entries == real.adjusted_plan.entries


def test_realize_single_row_plan():
    plan = AnnualPlan(((6, 0),))
    real = realize_transfers(plan, TransferVector((6,)))
    assert real.achieved == (6,)
    assert real.adjusted_plan.entries == ((0, 6),)


def test_realize_single_mover():
    real = realize_transfers(AnnualPlan(((5, 0), (0, 0))), TransferVector((5,)))
    assert real.shift_matrix.shifts == ((1, 0), (0, 0))
    assert real.achieved == (5,)
    assert real.residuals == (0,)


def test_realize_best_under_target():
    # neither 4 nor 3 alone hits 5, and together they overshoot
    real = realize_transfers(AnnualPlan(((4, 0), (3, 0))), TransferVector((5,)))
    assert real.achieved == (4,)
    assert real.residuals == (1,)
    assert real.shift_matrix.shifts == ((1, 0), (0, 0))
