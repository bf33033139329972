"""Exact welfare maximization over partitions.

``optimal_partition`` runs the standard subset dynamic program: the best
split of a player set S considers every candidate block containing S's
least player, so each partition is represented exactly once and the whole
computation costs O(3**n).  The bounded variant layers the same recurrence
by block budget.  ``all_maximizers`` enumerates partitions outright, which
is trivially correct within its cap and doubles as the solver's oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    CapExceededError,
    Coalition,
    Game,
    Partition,
    Value,
    _iter_partition_masks,
)

SOLVER_CAP = 18
BOUNDED_SOLVER_CAP = 16
MAXIMIZER_CAP = 10


@dataclass(frozen=True)
class OptResult:
    """Best achievable welfare, one witness partition, and (when known)
    how many partitions achieve that optimum."""

    optimum: Value
    witness: Partition
    maximizer_count: "int | None" = None


def optimal_partition(g: Game) -> OptResult:
    """Maximum social welfare over all partitions, with a witness.

    Deterministic: ties at every table cell break toward the candidate
    block with the smallest bit pattern.  The result is cached on the game.
    """
    cached = g._opt
    if cached is not None:
        return cached
    n = g.n
    if n > SOLVER_CAP:
        raise CapExceededError(f"{n} players exceed the solver cap of {SOLVER_CAP}")
    v = g.dense_table()
    size = 1 << n
    opt: list[Value] = [0] * size
    choice = [0] * size
    for s in range(1, size):
        low = s & -s
        rest = s ^ low
        best = None
        best_t = 0
        t = rest
        while True:
            tm = low | t
            cand = v[tm] + opt[s ^ tm]
            if best is None or cand >= best:
                best = cand
                best_t = tm
            if t == 0:
                break
            t = (t - 1) & rest
        opt[s] = best
        choice[s] = best_t
    blocks = []
    s = size - 1
    while s:
        tm = choice[s]
        blocks.append(Coalition(tm))
        s ^= tm
    result = OptResult(opt[size - 1], Partition(tuple(blocks)))
    g._opt = result
    return result


def optimal_partition_bounded(g: Game, k: int) -> OptResult:
    """Maximum welfare over partitions with at most ``k`` blocks.

    Same recurrence as :func:`optimal_partition`, layered by block budget;
    monotone in ``k`` and equal to the unbounded optimum at ``k = n``.
    Results for every budget up to ``k`` are cached on the game.
    """
    if isinstance(k, bool) or not isinstance(k, int):
        raise TypeError("block budget k must be an int")
    n = g.n
    if not 1 <= k <= n:
        raise ValueError(f"block budget k must be in 1..{n}, got {k}")
    cached = g._bounded.get(k)
    if cached is not None:
        return cached  # type: ignore[return-value]
    if n > BOUNDED_SOLVER_CAP:
        raise CapExceededError(
            f"{n} players exceed the bounded solver cap of {BOUNDED_SOLVER_CAP}"
        )
    v = g.dense_table()
    size = 1 << n
    prev: "list[Value | None]" = [None] * size
    prev[0] = 0
    layer_best: "list[list[Value | None]]" = [prev]
    layer_choice: list[list[int]] = [[0] * size]
    for _ in range(k):
        cur: "list[Value | None]" = [None] * size
        cur[0] = 0
        ch = [0] * size
        for s in range(1, size):
            low = s & -s
            rest = s ^ low
            best = None
            best_t = 0
            t = rest
            while True:
                tm = low | t
                below = prev[s ^ tm]
                if below is not None:
                    cand = v[tm] + below
                    if best is None or cand >= best:
                        best = cand
                        best_t = tm
                if t == 0:
                    break
                t = (t - 1) & rest
            cur[s] = best
            ch[s] = best_t
        layer_best.append(cur)
        layer_choice.append(ch)
        prev = cur
    full = size - 1
    for j in range(1, k + 1):
        if j in g._bounded:
            continue
        blocks = []
        s = full
        layer = j
        while s:
            tm = layer_choice[layer][s]
            blocks.append(Coalition(tm))
            s ^= tm
            layer -= 1
        optimum = layer_best[j][full]
        assert optimum is not None  # one block always suffices for j >= 1
        g._bounded[j] = OptResult(optimum, Partition(tuple(blocks)))
    return g._bounded[k]  # type: ignore[return-value]


def all_maximizers(g: Game) -> "list[Partition]":
    """Every partition achieving the optimum, in enumeration order.

    Runs by full enumeration (Bell(n) partitions), hence the tighter cap.
    The result is cached on the game; callers get a fresh list each time.
    """
    if g._maximizers is None:
        n = g.n
        if n > MAXIMIZER_CAP:
            raise CapExceededError(
                f"{n} players exceed the maximizer enumeration cap of {MAXIMIZER_CAP}"
            )
        v = g.dense_table()
        best = None
        found: list[tuple[int, ...]] = []
        for masks in _iter_partition_masks([1 << i for i in range(n)]):
            total: Value = 0
            for m in masks:
                total += v[m]
            if best is None or total > best:
                best = total
                found = [masks]
            elif total == best:
                found.append(masks)
        g._maximizers = tuple(
            Partition(tuple(Coalition(m) for m in masks)) for masks in found
        )
    return list(g._maximizers)
