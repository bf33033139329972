"""Welfare maximization: the exact solver, block-count bounds, and ties.

Finding the best partition by trying all of them stops being fun around
a dozen players (the counts grow like the Bell numbers); the solver uses
dynamic programming over subsets instead, which handles 18 players.

Run:  python3 demos/03_solver.py
"""

import time

from coalstab import (
    GeneratorSpec,
    all_maximizers,
    check_dp,
    example_game,
    optimal_partition,
    optimal_partition_bounded,
    random_game,
)


def main() -> None:
    g = example_game("exa-a")
    res = optimal_partition(g)
    print(f"== exa-a: optimum {res.optimum} at {res.witness} ==")
    print()

    print("== bounding the number of blocks ==")
    for k in (1, 2, 3):
        bounded = optimal_partition_bounded(g, k)
        print(f"  at most {k} block(s): optimum {bounded.optimum} at {bounded.witness}")
    print()

    print("== ties: every maximizer of the 'missed stability' game ==")
    g = example_game("exa-miss")
    for q in all_maximizers(g):
        print(f"  {q}   (dp-stable: {check_dp(g, q).stable})")
    print("two maximizers tie at welfare 5, so neither is *strictly* dp-stable.")
    print()

    print("== a bigger instance, solved exactly ==")
    big = random_game(GeneratorSpec(n=8, kind="general", low=0, high=50, seed=2024))
    t0 = time.perf_counter()
    res = optimal_partition(big)
    dt = (time.perf_counter() - t0) * 1000
    print(f"8 players, random values: optimum {res.optimum} at {res.witness}")
    print(f"({dt:.1f} ms; enumeration would have visited 4140 partitions)")


if __name__ == "__main__":
    main()
