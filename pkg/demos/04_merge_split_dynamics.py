"""Merge/split dynamics: greedy reorganization and where it can end up.

Starting from any partition, repeatedly apply a welfare-improving merge
or split until none exists.  Every run terminates (welfare strictly
increases each step), but *where* it ends can depend on the order of
moves — and the best partition can be unreachable outright.

Run:  python3 demos/04_merge_split_dynamics.py
"""

from coalstab import (
    BEST_GAIN,
    Partition,
    check_dc,
    closure_outcomes,
    example_game,
    iterate,
    optimal_partition,
    social_welfare,
    trace_lines,
)


def show_trace(tag, trace):
    print(f"  {tag}: start {trace.initial}")
    for line in trace_lines(trace):
        print(f"    {line}")
    print(f"    -> fixpoint {trace.final}")


def main() -> None:
    print("== the order of moves decides the endpoint ==")
    g = example_game("exa-1")
    print("{1,2} is worth 1 and {1,3} is worth 2; everything else 0.")
    start = Partition.singletons(4)
    show_trace("first applicable move", iterate(g, start))
    show_trace("best gain first     ", iterate(g, start, strategy=BEST_GAIN))
    outs = closure_outcomes(g, start)
    print(f"  all reachable fixpoints: {', '.join(sorted(map(str, outs)))}")
    print("  player 1 can only join one of the two pairs; greedy runs that")
    print("  grab {1,2} first lock welfare at 1 instead of 2.")
    print()

    print("== merge/split can miss the dc-stable partition entirely ==")
    g = example_game("exa-miss")
    trap = Partition.parse("{1,3} {2,4}")
    stable = Partition.parse("{1,2} {3,4}")
    print(f"dc-stable partition: {stable} (welfare {social_welfare(g, stable)})")
    print(f"but starting from {trap} (welfare {social_welfare(g, trap)}):")
    print(f"  reachable fixpoints: {[str(q) for q in closure_outcomes(g, trap)]}")
    print("  no single merge or split gains, so the walk never moves.")
    print()

    print("== and sometimes every run converges to the same place ==")
    g = example_game("exa-2")
    from coalstab import enumerate_partitions

    finals = set()
    for p in enumerate_partitions(4):
        finals |= closure_outcomes(g, p)
    print(f"from all 15 starting partitions: fixpoints {[str(q) for q in finals]}")
    res = optimal_partition(g)
    only = next(iter(finals))
    print(f"that endpoint has welfare {social_welfare(g, only)}, "
          f"the global optimum is {res.optimum},")
    print(f"and yet it is not dc-stable: {check_dc(g, only).stable} "
          f"(witness {check_dc(g, only).witness})")


if __name__ == "__main__":
    main()
