"""Rewrite rules over partitions: merge, split, transfer, exchange.

Every rule application must strictly increase social welfare, so any
iteration terminates.  The default rule set is merge + split: its
fixpoints are exactly the partitions stable against merge/split rivals
(the ``dhp`` family), while transfer and exchange exist to probe
situations the default rules cannot reach.

Application generation is deterministic.  Rules come out rule-major in
the order merge, split, transfer, exchange; within a rule the scan order
is documented on the generator and stable across runs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Union

from .model import (
    PARTITION_ENUM_CAP,
    CapExceededError,
    Coalition,
    Collection,
    Game,
    Partition,
    Value,
    _bits_of,
    _iter_partition_masks,
    format_value,
)

CLOSURE_CAP = 8


class RuleName(str, Enum):
    MERGE = "merge"
    SPLIT = "split"
    TRANSFER = "transfer"
    EXCHANGE = "exchange"


DEFAULT_RULES = frozenset((RuleName.MERGE, RuleName.SPLIT))
ALL_RULES = frozenset(RuleName)


@dataclass(frozen=True)
class Merge:
    """Fuse the blocks at the given indices (ascending, two or more)."""

    indices: tuple[int, ...]
    gain: Value

    rule = RuleName.MERGE


@dataclass(frozen=True)
class Split:
    """Replace the block at ``index`` by the given parts (two or more)."""

    index: int
    parts: Collection
    gain: Value

    rule = RuleName.SPLIT


@dataclass(frozen=True)
class Transfer:
    """Move ``moved`` — a proper nonempty subset of the source block —
    into the target block."""

    source: int
    target: int
    moved: Coalition
    gain: Value

    rule = RuleName.TRANSFER


@dataclass(frozen=True)
class Exchange:
    """Swap ``from_first`` and ``from_second`` (each a proper nonempty
    subset of its block) between the blocks at ``first`` and ``second``."""

    first: int
    second: int
    from_first: Coalition
    from_second: Coalition
    gain: Value

    rule = RuleName.EXCHANGE


RuleApplication = Union[Merge, Split, Transfer, Exchange]


@dataclass(frozen=True)
class Strategy:
    """How :func:`iterate` picks among applicable rules: ``first`` takes
    the first in canonical order, ``best`` the largest gain (ties broken
    canonically), ``random`` draws uniformly with a fixed seed."""

    kind: str
    seed: "int | None" = None

    def __post_init__(self) -> None:
        if self.kind not in ("first", "best", "random"):
            raise ValueError(f"unknown strategy {self.kind!r}")
        if (self.kind == "random") != (self.seed is not None):
            raise ValueError("exactly the random strategy takes a seed")


FIRST_APPLICABLE = Strategy("first")
BEST_GAIN = Strategy("best")


def random_strategy(seed: int) -> Strategy:
    if isinstance(seed, bool) or not isinstance(seed, int):
        raise TypeError("random strategy seed must be an int")
    return Strategy("random", seed)


def _coerce_rules(rules: "Iterable[RuleName | str]") -> frozenset:
    out = set()
    for r in rules:
        if isinstance(r, RuleName):
            out.add(r)
        elif isinstance(r, str):
            try:
                out.add(RuleName(r.strip().lower()))
            except ValueError as exc:
                raise ValueError(f"unknown rule {r!r}") from exc
        else:
            raise TypeError(f"rules must be RuleName or str, got {r!r}")
    if not out:
        raise ValueError("at least one rule is required")
    return frozenset(out)


def _check_partition(g: Game, p: Partition) -> None:
    if not isinstance(p, Partition):
        raise TypeError("expected a Partition")
    if p.union_mask != g.full_mask:
        raise ValueError(
            f"player-count mismatch: game has {g.n} players, partition covers {p.n}"
        )


def _iter_applications(g: Game, p: Partition, rules: frozenset) -> Iterator[RuleApplication]:
    """All strictly-gaining applications, deterministic order.

    Merges scan index subsets ascending by bit pattern; splits scan blocks
    ascending and, per block, the ways of cutting it in restricted-growth
    order; transfers scan ordered block pairs and moved subsets ascending;
    exchanges scan unordered block pairs with both swapped subsets ascending.
    """
    v = g.dense_table()
    pmasks = p.masks
    k = len(pmasks)
    bvals = [v[m] for m in pmasks]
    if RuleName.MERGE in rules:
        for tmask in range(3, 1 << k):
            if tmask.bit_count() < 2:
                continue
            union = 0
            separate: Value = 0
            tt = tmask
            while tt:
                j = (tt & -tt).bit_length() - 1
                union |= pmasks[j]
                separate += bvals[j]
                tt &= tt - 1
            gain = v[union] - separate
            if gain > 0:
                yield Merge(tuple(j for j in range(k) if tmask >> j & 1), gain)
    if RuleName.SPLIT in rules:
        for i, pm in enumerate(pmasks):
            bits = _bits_of(pm)
            if len(bits) < 2:
                continue
            if len(bits) > PARTITION_ENUM_CAP:
                raise CapExceededError(
                    f"block {Coalition(pm)} has {len(bits)} players, past the "
                    f"split-scan cap of {PARTITION_ENUM_CAP}"
                )
            whole = bvals[i]
            for parts in _iter_partition_masks(bits):
                if len(parts) < 2:
                    continue
                total: Value = 0
                for m in parts:
                    total += v[m]
                gain = total - whole
                if gain > 0:
                    yield Split(
                        i, Collection(tuple(Coalition(m) for m in parts)), gain
                    )
    if RuleName.TRANSFER in rules:
        for i in range(k):
            src = pmasks[i]
            if src.bit_count() < 2:
                continue
            for j in range(k):
                if j == i:
                    continue
                tgt = pmasks[j]
                base = bvals[i] + bvals[j]
                t = 0
                while True:
                    t = (t - src) & src
                    if t == 0:
                        break
                    if t == src:
                        continue
                    gain = v[src ^ t] + v[tgt | t] - base
                    if gain > 0:
                        yield Transfer(i, j, Coalition(t), gain)
    if RuleName.EXCHANGE in rules:
        for i in range(k):
            bi = pmasks[i]
            if bi.bit_count() < 2:
                continue
            for j in range(i + 1, k):
                bj = pmasks[j]
                if bj.bit_count() < 2:
                    continue
                base = bvals[i] + bvals[j]
                u1 = 0
                while True:
                    u1 = (u1 - bi) & bi
                    if u1 == 0:
                        break
                    if u1 == bi:
                        continue
                    u2 = 0
                    while True:
                        u2 = (u2 - bj) & bj
                        if u2 == 0:
                            break
                        if u2 == bj:
                            continue
                        gain = v[(bi ^ u1) | u2] + v[(bj ^ u2) | u1] - base
                        if gain > 0:
                            yield Exchange(i, j, Coalition(u1), Coalition(u2), gain)


def applicable_rules(
    g: Game, p: Partition, rules: "Iterable[RuleName | str]" = DEFAULT_RULES
) -> "list[RuleApplication]":
    """All applications of the given rules that strictly gain welfare."""
    _check_partition(g, p)
    return list(_iter_applications(g, p, _coerce_rules(rules)))


def is_closed(g: Game, p: Partition, rules: "Iterable[RuleName | str]" = DEFAULT_RULES) -> bool:
    """True iff no rule in the set strictly gains welfare at ``p``."""
    _check_partition(g, p)
    return next(_iter_applications(g, p, _coerce_rules(rules)), None) is None


def step(p: Partition, a: RuleApplication) -> Partition:
    """Apply one rewrite to ``p``; payload indices and coalitions are
    validated structurally, gains are the caller's concern."""
    blocks = list(p.blocks)
    count = len(blocks)
    if isinstance(a, Merge):
        idxs = a.indices
        if (
            len(idxs) < 2
            or list(idxs) != sorted(set(idxs))
            or not all(0 <= i < count for i in idxs)
        ):
            raise ValueError("merge needs two or more distinct ascending block indices in range")
        chosen = set(idxs)
        union = 0
        for i in idxs:
            union |= blocks[i].mask
        rest = [b for i, b in enumerate(blocks) if i not in chosen]
        return Partition(tuple(rest) + (Coalition(union),))
    if isinstance(a, Split):
        if not 0 <= a.index < count:
            raise ValueError("split index out of range")
        target = blocks[a.index]
        if len(a.parts) < 2 or a.parts.union_mask != target.mask:
            raise ValueError("split parts must cut the block into two or more pieces")
        rest = [b for i, b in enumerate(blocks) if i != a.index]
        return Partition(tuple(rest) + tuple(a.parts.blocks))
    if isinstance(a, Transfer):
        i, j = a.source, a.target
        if not (0 <= i < count and 0 <= j < count) or i == j:
            raise ValueError("transfer needs two distinct block indices in range")
        src, tgt = blocks[i].mask, blocks[j].mask
        m = a.moved.mask
        if m & ~src or m == src:
            raise ValueError("transfer payload must be a proper nonempty subset of the source block")
        blocks[i] = Coalition(src ^ m)
        blocks[j] = Coalition(tgt | m)
        return Partition(tuple(blocks))
    if isinstance(a, Exchange):
        i, j = a.first, a.second
        if not (0 <= i < count and 0 <= j < count) or i == j:
            raise ValueError("exchange needs two distinct block indices in range")
        bi, bj = blocks[i].mask, blocks[j].mask
        u1, u2 = a.from_first.mask, a.from_second.mask
        if u1 & ~bi or u1 == bi or u2 & ~bj or u2 == bj:
            raise ValueError("exchange payloads must be proper nonempty subsets of their blocks")
        blocks[i] = Coalition((bi ^ u1) | u2)
        blocks[j] = Coalition((bj ^ u2) | u1)
        return Partition(tuple(blocks))
    raise TypeError(f"not a rule application: {a!r}")


@dataclass(frozen=True)
class TraceStep:
    application: RuleApplication
    result: Partition
    welfare: Value


@dataclass(frozen=True)
class Trace:
    """One terminating run of the rewrite engine."""

    initial: Partition
    steps: tuple[TraceStep, ...]

    @property
    def final(self) -> Partition:
        return self.steps[-1].result if self.steps else self.initial


def iterate(
    g: Game,
    p0: Partition,
    strategy: Strategy = FIRST_APPLICABLE,
    rules: "Iterable[RuleName | str]" = DEFAULT_RULES,
) -> Trace:
    """Apply rules per the strategy until none applies.

    Terminates on every input because each application strictly increases
    welfare and there are finitely many partitions.  Deterministic for all
    three strategies (random is seeded per call).
    """
    rules = _coerce_rules(rules)
    _check_partition(g, p0)
    if not isinstance(strategy, Strategy):
        raise TypeError("expected a Strategy")
    rng = random.Random(strategy.seed) if strategy.kind == "random" else None
    v = g.dense_table()
    current = p0
    welfare: Value = 0
    for m in p0.masks:
        welfare += v[m]
    steps: list[TraceStep] = []
    while True:
        if strategy.kind == "first":
            app = next(_iter_applications(g, current, rules), None)
            if app is None:
                break
        else:
            apps = list(_iter_applications(g, current, rules))
            if not apps:
                break
            if strategy.kind == "best":
                app = max(apps, key=lambda a: a.gain)
            else:
                app = rng.choice(apps)  # type: ignore[union-attr]
        current = step(current, app)
        welfare += app.gain
        steps.append(TraceStep(app, current, welfare))
    return Trace(p0, tuple(steps))


def closure_outcomes(
    g: Game, p0: Partition, rules: "Iterable[RuleName | str]" = DEFAULT_RULES
) -> "set[Partition]":
    """Every fixpoint reachable from ``p0`` by any order of applications.

    Explores the full reachability graph (a DAG, since welfare strictly
    increases along every edge) with memoization, so it is exponential in
    the number of reachable partitions — hence the dedicated cap.
    """
    rules = _coerce_rules(rules)
    _check_partition(g, p0)
    if g.n > CLOSURE_CAP:
        raise CapExceededError(f"{g.n} players exceed the closure cap of {CLOSURE_CAP}")

    def successors(p: Partition) -> "list[Partition]":
        seen = set()
        out = []
        for a in _iter_applications(g, p, rules):
            q = step(p, a)
            if q not in seen:
                seen.add(q)
                out.append(q)
        return out

    succ_cache: "dict[Partition, list[Partition]]" = {}
    outcome: "dict[Partition, frozenset[Partition]]" = {}
    stack: "list[tuple[Partition, bool]]" = [(p0, False)]
    while stack:
        node, expanded = stack.pop()
        if expanded:
            succ = succ_cache[node]
            if succ:
                outcome[node] = frozenset().union(*(outcome[q] for q in succ))
            else:
                outcome[node] = frozenset((node,))
            continue
        if node in outcome:
            continue
        succ = succ_cache.setdefault(node, successors(node))
        stack.append((node, True))
        for q in succ:
            if q not in outcome:
                stack.append((q, False))
    return set(outcome[p0])


def format_application(a: RuleApplication, source: Partition) -> str:
    """Render an application against the partition it applies to:
    rule name, payload blocks in brace notation, and the exact gain."""
    blocks = source.blocks
    if isinstance(a, Merge):
        payload = " ".join(str(blocks[i]) for i in a.indices)
        return f"merge {payload} gain {format_value(a.gain)}"
    if isinstance(a, Split):
        return f"split {blocks[a.index]} into {a.parts} gain {format_value(a.gain)}"
    if isinstance(a, Transfer):
        return (
            f"transfer {a.moved} from {blocks[a.source]} to {blocks[a.target]} "
            f"gain {format_value(a.gain)}"
        )
    if isinstance(a, Exchange):
        return (
            f"exchange {a.from_first} from {blocks[a.first]} with "
            f"{a.from_second} from {blocks[a.second]} gain {format_value(a.gain)}"
        )
    raise TypeError(f"not a rule application: {a!r}")


def trace_lines(trace: Trace) -> "list[str]":
    """One line per step: the application and the partition it produced."""
    lines = []
    src = trace.initial
    for st in trace.steps:
        lines.append(f"{format_application(st.application, src)} -> {st.result}")
        src = st.result
    return lines
