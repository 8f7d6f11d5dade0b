"""Shared instance generators for the test suite.

Every draw goes through an explicit random.Random so each test is
reproducible from its seed alone.
"""

import random

from repair_leveler import AnnualPlan, MonthlyLoads, TransferVector

# The transfer oracle enumerates every boundary flow, so random sweeps
# must shrink the load range as the month count grows.
SWEEP_LOAD_CAP = {2: 60, 3: 60, 4: 30, 5: 14, 6: 8}

GOLDEN_PLAN = AnnualPlan((
    (10, 20, 30, 40),
    (5, 8, 6, 6),
    (21, 11, 3, 2),
    (14, 1, 5, 3),
))

GOLDEN_LOADS = MonthlyLoads((50, 40, 44, 51))


def random_loads(rng: random.Random, n: int, max_load: int) -> MonthlyLoads:
    return MonthlyLoads(tuple(rng.randint(0, max_load) for _ in range(n)))


def random_plan(rng: random.Random, k: int, n: int, max_entry: int) -> AnnualPlan:
    rows = tuple(tuple(rng.randint(0, max_entry) for _ in range(n)) for _ in range(k))
    return AnnualPlan(rows)


def random_feasible_transfers(rng: random.Random, loads: MonthlyLoads) -> TransferVector:
    # Sample boundary by boundary.  The upper bound folds in the running
    # flow so no month is ever drained below zero; the range always
    # contains 0, so it is never empty.
    hours = loads.loads
    xs = []
    prev = 0
    for b in range(len(hours) - 1):
        lo = -hours[b + 1]
        hi = hours[b] + min(0, prev)
        x = rng.randint(lo, hi)
        xs.append(x)
        prev = x
    return TransferVector(tuple(xs))


def sweep_instances(seed: int, count: int) -> list[MonthlyLoads]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(2, 6)
        out.append(random_loads(rng, n, SWEEP_LOAD_CAP[n]))
    return out
