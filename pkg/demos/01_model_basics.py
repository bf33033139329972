"""Tour of the core model: coalitions, partitions, games, and welfare.

Run:  python3 demos/01_model_basics.py
"""

from fractions import Fraction

from coalstab import (
    Coalition,
    Collection,
    Game,
    Partition,
    enumerate_partitions,
    frame,
    modified_social_welfare,
    social_welfare,
)


def main() -> None:
    print("== coalitions are bit patterns over players 1..n ==")
    c = Coalition.of(1, 3)
    print(f"Coalition.of(1, 3) -> {c}  (mask {c.mask:#05b}, members {c.members})")
    print(f"parsed from text: {Coalition.parse('{2,4}')}")
    print()

    print("== partitions cover every player exactly once ==")
    p = Partition.parse("{1,2} {3,4}")
    print(f"p = {p}  with n = {p.n}")
    print(f"singletons: {Partition.singletons(4)}")
    print(f"grand:      {Partition.grand(4)}")
    print(f"blocks are canonically ordered: {Partition.parse('{3,4} {1,2}')} == p: "
          f"{Partition.parse('{3,4} {1,2}') == p}")
    print()

    print("== games map coalitions to exact values (never floats) ==")
    g = Game.from_table(
        4,
        {(1, 2): 3, (3, 4): 2, (1, 3): Fraction(5, 2)},
        default=1,
    )
    print(f"v({{1,2}}) = {g.value(Coalition.of(1, 2))}")
    print(f"v({{1,3}}) = {g.value(Coalition.of(1, 3))}  (an exact fraction)")
    print(f"v({{2,3}}) = {g.value(Coalition.of(2, 3))}  (the default)")
    print(f"social welfare of {p}: {social_welfare(g, p)}")
    print()

    print("== the frame: how a partition regroups a set of players ==")
    d = Collection.parse("{1,3} {2}")
    f = frame(d, p)
    print(f"collection {d} regrouped by {p} -> {f}")
    print(f"its welfare as-is:        {social_welfare(g, d)}")
    print(f"its welfare once framed:  {modified_social_welfare(g, d, p)}")
    print()

    print("== enumeration ==")
    parts = list(enumerate_partitions(3))
    print(f"the {len(parts)} partitions of 3 players: " + ", ".join(map(str, parts)))


if __name__ == "__main__":
    main()
