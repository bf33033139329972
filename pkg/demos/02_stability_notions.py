"""The three stability notions, side by side, on games where they differ.

A partition is stable when no group of players can do better by walking
away and reorganizing.  The notions differ in who is allowed to walk:

  dc   any collection of disjoint coalitions (the strongest test)
  dp   any full repartition of all players (welfare maximality)
  dhp  only merge/split rearrangements of the current blocks (the weakest)

Run:  python3 demos/02_stability_notions.py
"""

from coalstab import (
    Partition,
    check_dc,
    check_dc_strict,
    check_dhp,
    check_dp,
    enumerate_partitions,
    example_game,
    find_dc_stable,
)


def verdict_row(g, p):
    marks = []
    for checker in (check_dc, check_dp, check_dhp):
        marks.append("yes" if checker(g, p).stable else "no ")
    return f"  {str(p):24s} dc: {marks[0]}  dp: {marks[1]}  dhp: {marks[2]}"


def main() -> None:
    print("== a game where no partition survives the dc test ==")
    g = example_game("exa-a")
    print("3 players; any single player is worth 2, any pair 5, the triple 6.")
    for p in enumerate_partitions(3):
        print(verdict_row(g, p))
    v = check_dc(g, Partition.parse("{1,2} {3}"))
    print(f"witness against {{1,2}} {{3}}: {v.witness}")
    print("(the pair {2,3} is worth 5 but collects only 2 + 2 = 4 where it sits)")
    print(f"find_dc_stable: {find_dc_stable(g)}")
    print()

    print("== a game with a dc-stable partition ==")
    g = example_game("exa-miss")
    print("4 players; {1,2} is worth 3, every other coalition its size.")
    for p in enumerate_partitions(4):
        if check_dhp(g, p).stable:
            print(verdict_row(g, p))
    print("(only rearrangement-stable partitions shown)")
    print(f"find_dc_stable: {find_dc_stable(g)}")
    print()

    print("== strictness matters ==")
    p = Partition.parse("{1,2} {3,4}")
    print(f"{p} is dc-stable: {check_dc(g, p).stable}")
    strict = check_dc_strict(g, p)
    print(f"but strictly dc-stable: {strict.stable}  (witness: {strict.witness})")
    print("splitting {3,4} changes nothing — a tie, which strictness forbids.")


if __name__ == "__main__":
    main()
