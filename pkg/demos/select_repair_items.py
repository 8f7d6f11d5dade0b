"""The item-selection stage on its own.

A transfer volume says how many hours should cross a month boundary;
repairs move whole or not at all, so the donor month runs a subset-sum
pick: come as close to the target as possible without overshooting,
preferring fewer moves, then earlier rows.
"""

from repair_leveler import SelectionProblem, subset_select

CASES = (
    ((10, 5, 21, 14), 4),
    ((30, 6, 3, 5), 3),
    ((40, 6, 2, 3), 5),
    ((8, 6, 5), 11),
    ((5, 3, 2), 5),
    ((3, 3), 3),
)


def main() -> None:
    for items, target in CASES:
        chosen = subset_select(SelectionProblem(items, target))
        moved = sum(items[i] for i in chosen)
        names = [f"item {i + 1} ({items[i]}h)" for i in chosen] or ["nothing"]
        print(f"target {target:>2}h from {items}:")
        print(f"  move {', '.join(names)}  ->  {moved}h, residual {target - moved}h")


if __name__ == "__main__":
    main()
