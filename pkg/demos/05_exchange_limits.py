"""Richer rewrite rules — transfer and exchange — and their limits.

Merge and split treat blocks as atoms.  Transfer moves a proper subgroup
between blocks; exchange swaps subgroups.  Both escape some merge/split
traps, but even all four rules together cannot reach every optimum.

Run:  python3 demos/05_exchange_limits.py
"""

from coalstab import (
    ALL_RULES,
    applicable_rules,
    closure_outcomes,
    example_game,
    generalized_odd_game,
    is_closed,
    iterate,
    odds_evens_partition,
    optimal_partition,
    pairs_partition,
    social_welfare,
    trace_lines,
)


def main() -> None:
    print("== exchange escapes a merge/split trap ==")
    g = example_game("exa-miss")
    from coalstab import Partition

    trap = Partition.parse("{1,3} {2,4}")
    print(f"at {trap}: merge/split fixpoint? {is_closed(g, trap)}")
    print(f"with all four rules? {is_closed(g, trap, rules=ALL_RULES)}")
    for a in applicable_rules(g, trap, rules=ALL_RULES):
        print(f"  applicable: {a}")
    tr = iterate(g, trap, rules=ALL_RULES)
    for line in trace_lines(tr):
        print(f"  taken: {line}")
    print(f"  -> {tr.final}, which is dc-stable")
    print()

    print("== but a trap can defeat all four rules at once ==")
    for n in (2, 3):
        g = generalized_odd_game(n)
        pairs = pairs_partition(n)
        odds = odds_evens_partition(n)
        print(f"n = {n} ({2 * n} players): the odd players together are worth {n + 1},")
        print(f"  every other coalition its size.")
        print(f"  optimum {optimal_partition(g).optimum} at {odds}")
        print(f"  pairs partition {pairs} has welfare {social_welfare(g, pairs)}")
        closed = is_closed(g, pairs, rules=ALL_RULES)
        print(f"  fixpoint of merge+split+transfer+exchange? {closed}")
        if not closed:
            apps = applicable_rules(g, pairs, rules=ALL_RULES)
            print(f"  (n = 2 is special: {apps[0]} still helps)")
        else:
            outs = closure_outcomes(g, pairs, rules=ALL_RULES)
            print(f"  closure outcomes from pairs: {[str(q) for q in outs]}")
            print("  assembling the odd block needs several pair blocks torn up")
            print("  in one move, which no single rule provides.")
        print()


if __name__ == "__main__":
    main()
