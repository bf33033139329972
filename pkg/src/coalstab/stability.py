"""Stability checkers: fast characterization-based checks that return
violating witnesses, plus brute-force definitional oracles used to
cross-validate them.

A partition P is stable against a family of rival collections when no
rival C obtains more welfare on its own than its players would get after
being regrouped by P (C's "framed" welfare).  Supported families:

* ``dc``  — every collection of disjoint coalitions;
* ``dp``  — every partition of the full player set;
* ``dpk`` — every partition with at most k blocks;
* ``dhp`` — every partition reachable from P by merging whole blocks and
  splitting single blocks.

Strict variants demand that P do strictly better against every rival that
regrouping actually changes; rivals with ``frame(C, P) == C`` compare
equal by construction and are exempt (for the partition families that is
exactly the rival ``C == P``).

The fast checks rest on exact characterizations:

* dc-stability holds iff (1) inside every block, disjoint pieces never
  beat their union, and (2) every coalition straddling blocks is covered
  by the sum of its per-block pieces.  Strict dc-stability is the same
  with both families of inequalities sharp.
* dp-stability says P attains the solver optimum; the strict version says
  it is the unique maximizer.
* dhp-stability holds iff no way of splitting one block and no merge of
  several blocks gains welfare; the strict version is the same with the
  inequalities sharp.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .model import (
    COLLECTION_ENUM_CAP,
    PARTITION_ENUM_CAP,
    CapExceededError,
    Coalition,
    Collection,
    Game,
    Partition,
    Value,
    _bits_of,
    _iter_collection_masks,
    _iter_homogeneous_masks,
    _iter_partition_masks,
)
from .solver import all_maximizers, optimal_partition, optimal_partition_bounded


@dataclass(frozen=True)
class DefectionKind:
    """Which family of rival collections a stability check ranges over."""

    family: str
    k: "int | None" = None

    def __post_init__(self) -> None:
        if self.family not in ("dc", "dp", "dpk", "dhp"):
            raise ValueError(f"unknown defection family {self.family!r}")
        if self.family == "dpk":
            if isinstance(self.k, bool) or not isinstance(self.k, int) or self.k < 1:
                raise ValueError("dpk needs an integer size bound k >= 1")
        elif self.k is not None:
            raise ValueError(f"{self.family} does not take a size bound")

    def __str__(self) -> str:
        return f"dpk:{self.k}" if self.family == "dpk" else self.family


DC = DefectionKind("dc")
DP = DefectionKind("dp")
DHP = DefectionKind("dhp")


def dp_k(k: int) -> DefectionKind:
    return DefectionKind("dpk", k)


def kind_from_string(text: str) -> DefectionKind:
    """Parse ``dc`` / ``dp`` / ``dhp`` / ``dpk:K`` into a DefectionKind."""
    token = text.strip().lower()
    if token == "dc":
        return DC
    if token == "dp":
        return DP
    if token == "dhp":
        return DHP
    if token.startswith("dpk"):
        _, sep, num = token.partition(":")
        if sep and num:
            try:
                return dp_k(int(num))
            except ValueError as exc:
                raise ValueError(f"bad size bound in stability notion {text!r}") from exc
        raise ValueError("dpk needs a size bound, e.g. dpk:2")
    raise ValueError(f"unknown stability notion {text!r}; expected dc, dp, dpk:K, or dhp")


# ---------------------------------------------------------------------------
# Witnesses and verdicts


@dataclass(frozen=True)
class DefectingCollection:
    """A rival collection whose own welfare beats (strict checks: at least
    ties) what its players get once regrouped by the checked partition."""

    collection: Collection
    framed_welfare: Value
    welfare: Value


@dataclass(frozen=True)
class IntraBlockPair:
    """Disjoint pieces A and B inside one block whose union is worth less
    than (strict checks: no more than) the two taken separately."""

    block_index: int
    a: Coalition
    b: Coalition
    separate: Value
    combined: Value


@dataclass(frozen=True)
class IncompatibleSet:
    """A coalition straddling several blocks worth more than (strict
    checks: at least) the sum of its per-block pieces."""

    coalition: Coalition
    pieces_value: Value
    whole_value: Value


@dataclass(frozen=True)
class BlockSplit:
    """A way of splitting one block whose parts together are worth more
    than (strict checks: at least) the whole block."""

    block_index: int
    parts: Collection
    whole_value: Value
    parts_value: Value


@dataclass(frozen=True)
class BlockMerge:
    """Blocks whose union is worth more than (strict checks: at least)
    the same blocks taken separately."""

    block_indices: tuple[int, ...]
    separate: Value
    merged: Value


Witness = Union[DefectingCollection, IntraBlockPair, IncompatibleSet, BlockSplit, BlockMerge]


@dataclass(frozen=True)
class Verdict:
    """Outcome of a stability check; unstable verdicts carry a witness."""

    stable: bool
    witness: "Witness | None" = None

    def __post_init__(self) -> None:
        if self.stable == (self.witness is not None):
            raise ValueError("exactly the unstable verdicts carry a witness")

    def __bool__(self) -> bool:
        return self.stable


STABLE = Verdict(True)


def _validate(g: Game, p: Partition) -> None:
    if not isinstance(p, Partition):
        raise TypeError("expected a Partition")
    if p.union_mask != g.full_mask:
        raise ValueError(
            f"player-count mismatch: game has {g.n} players, partition covers {p.n}"
        )


def _welfare(v: "list[Value]", masks: "tuple[int, ...]") -> Value:
    total: Value = 0
    for m in masks:
        total += v[m]
    return total


# ---------------------------------------------------------------------------
# dc: stability against arbitrary collections


def _dc_scan(g: Game, p: Partition, strict: bool) -> Verdict:
    v = g.dense_table()
    pmasks = p.masks
    # Condition 1: inside each block, no pair of disjoint pieces may beat
    # (strict: tie) their union.  Pairs are anchored on the union's least
    # player so each unordered pair appears once.
    for i, pm in enumerate(pmasks):
        u = pm
        while u:
            if u & (u - 1):
                low = u & -u
                rest = u ^ low
                combined = v[u]
                t = (rest - 1) & rest
                while True:
                    a = low | t
                    separate = v[a] + v[u ^ a]
                    if combined < separate or (strict and combined == separate):
                        return Verdict(
                            False,
                            IntraBlockPair(i, Coalition(a), Coalition(u ^ a), separate, combined),
                        )
                    if t == 0:
                        break
                    t = (t - 1) & rest
            u = (u - 1) & pm
    # Condition 2: every coalition straddling blocks must be covered
    # (strict: beaten) by the sum of its per-block pieces.  Scanned from the
    # largest bit pattern down.
    if len(pmasks) > 1:
        for tmask in range(g.full_mask, 0, -1):
            low = tmask & -tmask
            compatible = False
            for pm in pmasks:
                if pm & low:
                    compatible = not tmask & ~pm
                    break
            if compatible:
                continue
            pieces: Value = 0
            for pm in pmasks:
                pieces += v[pm & tmask]
            whole = v[tmask]
            if pieces < whole or (strict and pieces == whole):
                return Verdict(False, IncompatibleSet(Coalition(tmask), pieces, whole))
    return STABLE


def check_dc(g: Game, p: Partition) -> Verdict:
    """Is no collection of disjoint coalitions better off on its own?"""
    _validate(g, p)
    return _dc_scan(g, p, False)


def check_dc_strict(g: Game, p: Partition) -> Verdict:
    """Strict version of :func:`check_dc`: both families of inequalities sharp."""
    _validate(g, p)
    return _dc_scan(g, p, True)


# ---------------------------------------------------------------------------
# dp / dpk: stability against partitions (bounded or not)


def check_dp(g: Game, p: Partition) -> Verdict:
    """Is ``p`` a social-welfare maximizer among all partitions?"""
    _validate(g, p)
    v = g.dense_table()
    swp = _welfare(v, p.masks)
    res = optimal_partition(g)
    if swp == res.optimum:
        return STABLE
    return Verdict(False, DefectingCollection(res.witness, swp, res.optimum))


def check_strict_dp(g: Game, p: Partition) -> Verdict:
    """Is ``p`` the unique social-welfare maximizer?"""
    _validate(g, p)
    maxi = all_maximizers(g)
    if maxi == [p]:
        return STABLE
    v = g.dense_table()
    swp = _welfare(v, p.masks)
    rival = next(q for q in maxi if q != p)
    return Verdict(False, DefectingCollection(rival, swp, _welfare(v, rival.masks)))


def _validate_bound(g: Game, p: Partition, k: int) -> None:
    if isinstance(k, bool) or not isinstance(k, int):
        raise TypeError("size bound k must be an int")
    if not 1 <= k <= g.n:
        raise ValueError(f"size bound k must be in 1..{g.n}, got {k}")
    if len(p.blocks) > k:
        raise ValueError(
            f"partition exceeds size bound: {len(p.blocks)} blocks with k = {k}"
        )


def check_dp_k(g: Game, p: Partition, k: int) -> Verdict:
    """Is ``p`` welfare-maximal among partitions with at most ``k`` blocks?"""
    _validate(g, p)
    _validate_bound(g, p, k)
    v = g.dense_table()
    swp = _welfare(v, p.masks)
    res = optimal_partition_bounded(g, k)
    if swp == res.optimum:
        return STABLE
    return Verdict(False, DefectingCollection(res.witness, swp, res.optimum))


def check_dp_k_strict(g: Game, p: Partition, k: int) -> Verdict:
    """Is ``p`` the unique welfare maximizer among partitions with at most
    ``k`` blocks?  Runs by enumeration, so the partition enumeration cap
    applies."""
    _validate(g, p)
    _validate_bound(g, p, k)
    if g.n > PARTITION_ENUM_CAP:
        raise CapExceededError(
            f"{g.n} players exceed the partition enumeration cap of {PARTITION_ENUM_CAP}"
        )
    v = g.dense_table()
    pmasks = p.masks
    swp = _welfare(v, pmasks)
    for qmasks in _iter_partition_masks([1 << i for i in range(g.n)]):
        if len(qmasks) > k or qmasks == pmasks:
            continue
        total = _welfare(v, qmasks)
        if total >= swp:
            rival = Partition(tuple(Coalition(m) for m in qmasks))
            return Verdict(False, DefectingCollection(rival, swp, total))
    return STABLE


# ---------------------------------------------------------------------------
# dhp: stability against merge/split rearrangements of p itself


def _dhp_scan(g: Game, p: Partition, strict: bool) -> Verdict:
    v = g.dense_table()
    pmasks = p.masks
    # Splits: no way of cutting one block into two or more parts may gain
    # (strict: tie).
    for i, pm in enumerate(pmasks):
        bits = _bits_of(pm)
        if len(bits) < 2:
            continue
        if len(bits) > PARTITION_ENUM_CAP:
            raise CapExceededError(
                f"block {Coalition(pm)} has {len(bits)} players, past the "
                f"split-scan cap of {PARTITION_ENUM_CAP}"
            )
        whole = v[pm]
        for parts in _iter_partition_masks(bits):
            if len(parts) < 2:
                continue
            total = _welfare(v, parts)
            if whole < total or (strict and whole == total):
                return Verdict(
                    False,
                    BlockSplit(i, Collection(tuple(Coalition(m) for m in parts)), whole, total),
                )
    # Merges: no union of two or more whole blocks may gain (strict: tie).
    k = len(pmasks)
    block_vals = [v[pm] for pm in pmasks]
    for tmask in range(3, 1 << k):
        if tmask.bit_count() < 2:
            continue
        union = 0
        separate: Value = 0
        tt = tmask
        while tt:
            j = (tt & -tt).bit_length() - 1
            union |= pmasks[j]
            separate += block_vals[j]
            tt &= tt - 1
        merged = v[union]
        if separate < merged or (strict and separate == merged):
            indices = tuple(j for j in range(k) if tmask >> j & 1)
            return Verdict(False, BlockMerge(indices, separate, merged))
    return STABLE


def check_dhp(g: Game, p: Partition) -> Verdict:
    """Is ``p`` stable against every merge/split rearrangement of itself?"""
    _validate(g, p)
    return _dhp_scan(g, p, False)


def check_strict_dhp(g: Game, p: Partition) -> Verdict:
    """Strict version of :func:`check_dhp`: split and merge comparisons sharp.

    Equivalent to the definitional strict check: any rearrangement other
    than ``p`` itself either cuts some block (its parts then tie or beat the
    block, which the sharp split scan catches on the coarsest such cut) or
    only merges whole blocks (caught by the sharp merge scan).
    """
    _validate(g, p)
    return _dhp_scan(g, p, True)


# ---------------------------------------------------------------------------
# Definitional oracles


def check_definitional(
    g: Game, p: Partition, kind: "DefectionKind | str", strict: bool = False
) -> Verdict:
    """Brute-force oracle: test the stability inequality against every rival
    in the family, returning the first violation in enumeration order.

    Exponential; intended for cross-validation at small n.  For the ``dc``
    family the collection enumeration cap applies, otherwise the partition
    enumeration cap.
    """
    _validate(g, p)
    if isinstance(kind, str):
        kind = kind_from_string(kind)
    v = g.dense_table()
    pmasks = p.masks
    if kind.family == "dc":
        if g.n > COLLECTION_ENUM_CAP:
            raise CapExceededError(
                f"{g.n} players exceed the collection enumeration cap of {COLLECTION_ENUM_CAP}"
            )
        framed_by_union: dict[int, Value] = {}
        for cmasks in _iter_collection_masks(g.n):
            welfare: Value = 0
            u = 0
            for m in cmasks:
                welfare += v[m]
                u |= m
            framed = framed_by_union.get(u)
            if framed is None:
                framed = 0
                for pm in pmasks:
                    framed += v[pm & u]
                framed_by_union[u] = framed
            if framed < welfare or (
                strict and framed == welfare and not _frame_fixes(cmasks, u, pmasks)
            ):
                rival = Collection(tuple(Coalition(m) for m in cmasks))
                return Verdict(False, DefectingCollection(rival, framed, welfare))
        return STABLE
    if g.n > PARTITION_ENUM_CAP:
        raise CapExceededError(
            f"{g.n} players exceed the partition enumeration cap of {PARTITION_ENUM_CAP}"
        )
    if kind.family == "dpk":
        _validate_bound(g, p, kind.k)
    swp = _welfare(v, pmasks)
    if kind.family == "dhp":
        rivals = _iter_homogeneous_masks(pmasks)
    else:
        rivals = _iter_partition_masks([1 << i for i in range(g.n)])
    for qmasks in rivals:
        if kind.family == "dpk" and len(qmasks) > kind.k:
            continue
        total = _welfare(v, qmasks)
        if swp < total or (strict and swp == total and qmasks != pmasks):
            rival = Partition(tuple(Coalition(m) for m in qmasks))
            return Verdict(False, DefectingCollection(rival, swp, total))
    return STABLE


def _frame_fixes(cmasks: "tuple[int, ...]", union: int, pmasks: "tuple[int, ...]") -> bool:
    """True iff regrouping the collection by the partition reproduces it."""
    pieces = sorted(pm & union for pm in pmasks if pm & union)
    return pieces == sorted(cmasks)


# ---------------------------------------------------------------------------
# Game-class predicates and shortcut corollaries


def is_additive(g: Game) -> bool:
    """True iff every coalition is worth the sum of its members' singleton
    values — equivalently, value adds up across every disjoint pair.
    Exactly these games have every partition dc-stable."""
    v = g.dense_table()
    sums: list[Value] = [0] * (1 << g.n)
    for s in range(1, 1 << g.n):
        low = s & -s
        sums[s] = sums[s ^ low] + v[low]
        if sums[s] != v[s]:
            return False
    return True


def is_superadditive(g: Game, strict: bool = False) -> bool:
    """True iff every disjoint pair satisfies v(A) + v(B) <= v(A∪B)
    (``strict=True``: <).  Costs a 3**n disjoint-pair scan."""
    v = g.dense_table()
    for u in range(3, 1 << g.n):
        if u.bit_count() < 2:
            continue
        low = u & -u
        rest = u ^ low
        vu = v[u]
        t = (rest - 1) & rest
        while True:
            separate = v[low | t] + v[u ^ (low | t)]
            if separate > vu or (strict and separate == vu):
                return False
            if t == 0:
                break
            t = (t - 1) & rest
    return True


@dataclass(frozen=True)
class CorollaryReport:
    """Shortcut verdicts for the two canonical partitions.

    ``grand_stable``: the one-block partition is dc-stable, which happens
    exactly for superadditive games; ``grand_unique``: the game is strictly
    superadditive, making it the unique dc-stable partition.
    ``singletons_stable``: the all-singletons partition is dc-stable, which
    happens exactly when no coalition beats the sum of its members'
    singleton values; ``singletons_unique``: every such comparison is
    strict (for coalitions of two or more players), making it unique.
    """

    grand_stable: bool
    grand_unique: bool
    singletons_stable: bool
    singletons_unique: bool


def corollary_shortcuts(g: Game) -> CorollaryReport:
    v = g.dense_table()
    sums: list[Value] = [0] * (1 << g.n)
    singles_ok = True
    singles_strict = True
    for s in range(1, 1 << g.n):
        low = s & -s
        sums[s] = sums[s ^ low] + v[low]
        if s != low:
            if sums[s] < v[s]:
                singles_ok = False
                singles_strict = False
            elif sums[s] == v[s]:
                singles_strict = False
    return CorollaryReport(
        grand_stable=is_superadditive(g),
        grand_unique=is_superadditive(g, strict=True),
        singletons_stable=singles_ok,
        singletons_unique=singles_ok and singles_strict,
    )


def find_dc_stable(g: Game) -> "Partition | None":
    """A dc-stable partition if one exists, else None.

    Only welfare maximizers can be dc-stable, so the search space is
    :func:`all_maximizers` (whose player cap applies); each candidate is
    then vetted with the dc scan.
    """
    for q in all_maximizers(g):
        if _dc_scan(g, q, False).stable:
            return q
    return None
