"""Core model: players, coalitions, collections, partitions, exact values.

Players are numbered 1..n.  A coalition is a nonempty subset of players
stored as a bit pattern (player i corresponds to bit i - 1), so subset
algebra is integer bit-twiddling.  Game values are exact rationals (int or
fractions.Fraction); floats are rejected outright so that strict and
non-strict comparisons never blur.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

MAX_PLAYERS = 20
PARTITION_ENUM_CAP = 12   # partitions of a set this large: Bell(12) = 4,213,597
COLLECTION_ENUM_CAP = 10  # collections over n players number Bell(n + 1)

Value = Union[int, Fraction]


class CapExceededError(ValueError):
    """An operation would enumerate past its documented size cap."""


def as_value(x: object) -> Value:
    """Coerce ``x`` to an exact value: an int, or a Fraction in lowest terms.

    Accepts int, Fraction, Decimal, and strings such as ``"5"``, ``"-3/4"``
    or ``"2.5"`` (finite decimals convert exactly).  Floats and booleans are
    rejected because exactness is load-bearing throughout this package.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not game values")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, Decimal):
        return as_value(Fraction(x))
    if isinstance(x, str):
        try:
            f = Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"malformed rational: {x!r}") from exc
        return f.numerator if f.denominator == 1 else f
    if isinstance(x, float):
        raise TypeError(
            f"refusing float {x!r}: values must be exact; pass an int, Fraction, or string"
        )
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact value")


def format_value(v: Value) -> str:
    """Render an exact value the way the parsers accept it: ``5``, ``-3/4``."""
    return str(v)


def _check_player_count(n: object) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError("player count must be an int")
    if not 1 <= n <= MAX_PLAYERS:
        raise ValueError(f"player count must be between 1 and {MAX_PLAYERS}, got {n}")


def _bits_of(mask: int) -> list[int]:
    """Decompose a mask into its single-bit masks, ascending."""
    bits = []
    while mask:
        low = mask & -mask
        bits.append(low)
        mask ^= low
    return bits


@dataclass(frozen=True, order=True)
class Coalition:
    """A nonempty set of players as a bit pattern; hashable, ordered by mask."""

    mask: int

    def __post_init__(self) -> None:
        if isinstance(self.mask, bool) or not isinstance(self.mask, int):
            raise TypeError("coalition mask must be an int")
        if self.mask <= 0:
            raise ValueError("a coalition must contain at least one player")
        if self.mask.bit_length() > MAX_PLAYERS:
            raise ValueError(f"player index exceeds the {MAX_PLAYERS}-player cap")

    @classmethod
    def of(cls, *players: int) -> "Coalition":
        return cls.from_members(players)

    @classmethod
    def from_members(cls, members: Iterable[int]) -> "Coalition":
        mask = 0
        for p in members:
            if isinstance(p, bool) or not isinstance(p, int):
                raise TypeError(f"player numbers must be ints, got {p!r}")
            if not 1 <= p <= MAX_PLAYERS:
                raise ValueError(f"player {p} out of range 1..{MAX_PLAYERS}")
            mask |= 1 << (p - 1)
        return cls(mask)

    @classmethod
    def parse(cls, text: str) -> "Coalition":
        """Parse a literal like ``{1,3}`` (braces optional, commas or spaces)."""
        inner = text.strip()
        if inner.startswith("{") and inner.endswith("}"):
            inner = inner[1:-1]
        tokens = inner.replace(",", " ").split()
        if not tokens:
            raise ValueError(f"empty coalition literal: {text!r}")
        try:
            members = [int(t) for t in tokens]
        except ValueError as exc:
            raise ValueError(f"bad player number in coalition literal {text!r}") from exc
        return cls.from_members(members)

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(i + 1 for i in range(self.mask.bit_length()) if self.mask >> i & 1)

    @property
    def least(self) -> int:
        """The smallest player in the coalition."""
        return (self.mask & -self.mask).bit_length()

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, player: object) -> bool:
        return (
            isinstance(player, int)
            and not isinstance(player, bool)
            and player >= 1
            and bool(self.mask >> (player - 1) & 1)
        )

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.members)) + "}"

    __repr__ = __str__


_BLOCK_RE = re.compile(r"\{([^{}]*)\}")


@dataclass(frozen=True, eq=False)
class Collection:
    """A family of pairwise-disjoint nonempty coalitions; possibly empty.

    Blocks are stored canonically, sorted by least member, so equality and
    hashing are insensitive to construction order.  A Collection need not
    cover all players; :class:`Partition` adds that requirement.
    """

    blocks: tuple[Coalition, ...]

    def __post_init__(self) -> None:
        blocks = tuple(self.blocks)
        union = 0
        for b in blocks:
            if not isinstance(b, Coalition):
                raise TypeError("blocks must be Coalition instances")
            if union & b.mask:
                raise ValueError("blocks must be pairwise disjoint")
            union |= b.mask
        ordered = tuple(sorted(blocks, key=lambda b: b.mask & -b.mask))
        object.__setattr__(self, "blocks", ordered)
        object.__setattr__(self, "_masks", tuple(b.mask for b in ordered))
        object.__setattr__(self, "_union", union)

    @classmethod
    def of(cls, *blocks: "Coalition | Iterable[int]"):
        coerced = tuple(
            b if isinstance(b, Coalition) else Coalition.from_members(b) for b in blocks
        )
        return cls(coerced)

    @classmethod
    def parse(cls, text: str):
        """Parse a literal like ``{1,2} {3}`` or ``{{1,2},{3}}``."""
        groups = _BLOCK_RE.findall(text)
        if not groups:
            if text.strip():
                raise ValueError(f"no coalition literals found in {text!r}")
            return cls(())
        return cls(tuple(Coalition.parse("{" + g + "}") for g in groups))

    @property
    def union_mask(self) -> int:
        return self._union  # type: ignore[attr-defined]

    @property
    def masks(self) -> tuple[int, ...]:
        """Block bit patterns in canonical order."""
        return self._masks  # type: ignore[attr-defined]

    @property
    def size(self) -> int:
        return len(self.blocks)

    def is_subcollection_of(self, other: "Collection") -> bool:
        """True iff every block here is literally a block of ``other``."""
        return set(self.masks) <= set(other.masks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Collection):
            return NotImplemented
        return self.masks == other.masks

    def __hash__(self) -> int:
        return hash(self.masks)

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self) -> Iterator[Coalition]:
        return iter(self.blocks)

    def __str__(self) -> str:
        return " ".join(str(b) for b in self.blocks) if self.blocks else "(empty)"

    __repr__ = __str__


class Partition(Collection):
    """A :class:`Collection` whose blocks cover every player 1..n exactly once."""

    def __post_init__(self) -> None:
        super().__post_init__()
        u = self.union_mask
        if u == 0:
            raise ValueError("a partition needs at least one block")
        if u & (u + 1):
            missing = [i + 1 for i in range(u.bit_length()) if not u >> i & 1]
            raise ValueError(
                f"blocks must cover players 1..{u.bit_length()} with no gaps; missing {missing}"
            )

    @property
    def n(self) -> int:
        return self.union_mask.bit_length()

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        _check_player_count(n)
        return cls(tuple(Coalition(1 << i) for i in range(n)))

    @classmethod
    def grand(cls, n: int) -> "Partition":
        _check_player_count(n)
        return cls((Coalition((1 << n) - 1),))


def _key_mask(key: object, n: int) -> int:
    """Interpret a table key (Coalition, int mask, or player iterable) as a mask."""
    if isinstance(key, Coalition):
        mask = key.mask
    elif isinstance(key, bool):
        raise TypeError("booleans are not coalition keys")
    elif isinstance(key, int):
        if key < 0:
            raise ValueError(f"coalition mask must be nonnegative, got {key}")
        mask = key
    elif isinstance(key, Iterable):
        members = tuple(key)
        mask = Coalition.from_members(members).mask if members else 0
    else:
        raise TypeError(f"cannot interpret {type(key).__name__} as a coalition")
    if mask >= 1 << n:
        raise ValueError(f"player index out of range for an {n}-player game")
    return mask


class Game:
    """An n-player game: an exact value for every coalition, 0 for the empty set.

    Either table-backed (a dense list of 2**n values) or rule-backed (a
    callable on masks, memoized behind a lock so concurrent reads are safe
    and deterministic).  Treat instances as immutable; the only internal
    mutation is caching.  ``family``/``params`` carry optional provenance
    used by the file format to round-trip generated games.
    """

    __slots__ = (
        "n", "full_mask", "family", "params",
        "_table", "_rule", "_memo", "_lock",
        "_opt", "_bounded", "_maximizers",
    )

    def __init__(
        self,
        n: int,
        *,
        table: "list[Value] | None" = None,
        rule: "Callable[[int], object] | None" = None,
        family: "str | None" = None,
        params: "Mapping[str, object] | None" = None,
    ) -> None:
        _check_player_count(n)
        if (table is None) == (rule is None):
            raise ValueError("provide exactly one of table= or rule=")
        self.n = n
        self.full_mask = (1 << n) - 1
        self.family = family
        self.params = dict(params) if params else {}
        self._table = table
        self._rule = rule
        self._memo: "dict[int, Value] | None" = {} if rule is not None else None
        self._lock = threading.Lock() if rule is not None else None
        self._opt = None
        self._bounded: dict[int, object] = {}
        self._maximizers = None

    @classmethod
    def from_table(
        cls,
        n: int,
        entries: Mapping[object, object],
        default: object = 0,
        *,
        family: "str | None" = None,
        params: "Mapping[str, object] | None" = None,
    ) -> "Game":
        """Build a dense game from coalition-to-value entries.

        Keys may be Coalitions, int masks, or iterables of players.
        Unlisted coalitions take ``default``; the empty set is always 0, and
        an explicit nonzero entry for it is an error.
        """
        _check_player_count(n)
        dense: list[Value] = [as_value(default)] * (1 << n)
        seen: set[int] = set()
        for key, raw in entries.items():
            mask = _key_mask(key, n)
            if mask in seen:
                raise ValueError(f"duplicate coalition entry for mask {mask}")
            seen.add(mask)
            val = as_value(raw)
            if mask == 0:
                if val != 0:
                    raise ValueError("the empty set must have value 0")
                continue
            dense[mask] = val
        dense[0] = 0
        return cls(n, table=dense, family=family, params=params)

    @classmethod
    def from_rule(
        cls,
        n: int,
        rule: Callable[[int], object],
        *,
        family: "str | None" = None,
        params: "Mapping[str, object] | None" = None,
    ) -> "Game":
        """Build a lazily evaluated game from a callable on coalition masks."""
        return cls(n, rule=rule, family=family, params=params)

    def mask_value(self, mask: int) -> Value:
        """Value of the coalition with the given bit pattern (0 for mask 0)."""
        if mask == 0:
            return 0
        table = self._table
        if table is not None:
            return table[mask]
        memo = self._memo
        try:
            return memo[mask]  # type: ignore[index]
        except KeyError:
            pass
        with self._lock:  # type: ignore[union-attr]
            got = memo.get(mask)  # type: ignore[union-attr]
            if got is None:
                got = as_value(self._rule(mask))  # type: ignore[misc]
                memo[mask] = got  # type: ignore[index]
            return got

    def value(self, coalition: Coalition) -> Value:
        if not isinstance(coalition, Coalition):
            raise TypeError("value() takes a Coalition; use mask_value() for raw masks")
        if coalition.mask & ~self.full_mask:
            raise ValueError(f"coalition {coalition} uses players beyond this {self.n}-player game")
        return self.mask_value(coalition.mask)

    def dense_table(self) -> "list[Value]":
        """The full value list indexed by mask (index 0 is the empty set).

        Computed once and cached for rule-backed games.  Treat as read-only.
        """
        if self._table is None:
            mv = self.mask_value
            self._table = [0] + [mv(m) for m in range(1, 1 << self.n)]
        return self._table

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Game):
            return NotImplemented
        return self.n == other.n and self.dense_table() == other.dense_table()

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        tag = f", family={self.family!r}" if self.family else ""
        return f"Game(n={self.n}{tag})"


def frame(collection: Collection, partition: Partition) -> Collection:
    """Regroup the collection's players by the partition's blocks.

    The result's blocks are the nonempty intersections of the partition's
    blocks with the union of the collection, so its union equals the
    collection's union.  If the collection is itself a partition of all
    players, the result is exactly ``partition``; if its blocks are a subset
    of the partition's, the result is the collection itself.
    """
    u = collection.union_mask
    if u & ~partition.union_mask:
        raise ValueError(
            "player-count mismatch: the collection uses players the partition does not cover"
        )
    return Collection(tuple(Coalition(pm & u) for pm in partition.masks if pm & u))


def social_welfare(g: Game, collection: Collection) -> Value:
    """Sum of the game's values over the collection's blocks (0 if empty)."""
    if collection.union_mask & ~g.full_mask:
        raise ValueError(
            "player-count mismatch: the collection uses players beyond the game"
        )
    total: Value = 0
    for m in collection.masks:
        total += g.mask_value(m)
    return total


def modified_social_welfare(g: Game, collection: Collection, partition: Partition) -> Value:
    """Welfare the collection's players would get regrouped by the partition.

    Equals ``social_welfare(g, frame(collection, partition))``.  When the
    collection is a partition of all players this is simply the partition's
    own welfare.
    """
    if partition.union_mask != g.full_mask:
        raise ValueError(
            "player-count mismatch: the partition does not cover the game's players"
        )
    return social_welfare(g, frame(collection, partition))


def is_compatible(t: Coalition, p: Partition) -> bool:
    """True iff the coalition fits inside a single block of the partition."""
    if t.mask & ~p.union_mask:
        raise ValueError(
            "player-count mismatch: the coalition uses players the partition does not cover"
        )
    low = t.mask & -t.mask
    for pm in p.masks:
        if pm & low:
            return not t.mask & ~pm
    return False


def is_homogeneous(q: Partition, p: Partition) -> bool:
    """True iff ``q`` arises from ``p`` by merges and splits alone.

    Concretely: every block of ``q`` either sits inside a single block of
    ``p`` or is a union of whole blocks of ``p``.
    """
    if q.union_mask != p.union_mask:
        raise ValueError("player-count mismatch: the partitions cover different players")
    for qm in q.masks:
        touching = [pm for pm in p.masks if pm & qm]
        if len(touching) == 1 and not qm & ~touching[0]:
            continue  # inside one block
        if all(not pm & ~qm for pm in touching):
            continue  # a union of whole blocks
        return False
    return True


# ---------------------------------------------------------------------------
# Exhaustive enumeration.  The raw generators below work on mask tuples and
# back the definitional stability oracles; the public enumerate_* functions
# wrap them in model objects.

_SMALL_CACHE_BITS = 9  # memoize full groupings of sets up to this size


def _iter_partitions_of_bits(bits: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Group single-bit masks every possible way, as tuples of block masks.

    Enumeration follows restricted growth strings: the first element is
    pinned to the first block, and each later element joins the existing
    blocks in order before opening a new one.  The order is therefore
    deterministic, and every yielded tuple is already sorted by least member.
    """
    count = len(bits)
    if count == 0:
        yield ()
        return
    blocks = [0] * count

    def rec(i: int, used: int) -> Iterator[tuple[int, ...]]:
        if i == count:
            yield tuple(blocks[:used])
            return
        b = bits[i]
        for j in range(used):
            blocks[j] |= b
            yield from rec(i + 1, used)
            blocks[j] ^= b
        blocks[used] = b
        yield from rec(i + 1, used + 1)

    yield from rec(0, 0)


@lru_cache(maxsize=None)
def _partitions_of_bits_cached(bits: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    return tuple(_iter_partitions_of_bits(bits))


def _iter_partition_masks(bits: Sequence[int]) -> Iterator[tuple[int, ...]]:
    bits = tuple(bits)
    if len(bits) <= _SMALL_CACHE_BITS:
        yield from _partitions_of_bits_cached(bits)
    else:
        yield from _iter_partitions_of_bits(bits)


def _iter_collection_masks(n: int) -> Iterator[tuple[int, ...]]:
    """Every family of disjoint nonempty subsets of {1..n}, as mask tuples.

    Implemented by partitioning an augmented set holding one marker bit: the
    marker's block collects the uncovered players.  There are Bell(n + 1)
    collections; the empty collection comes first.
    """
    bits = tuple(1 << i for i in range(n + 1))  # bit 0 is the marker
    for grouped in _iter_partition_masks(bits):
        yield tuple(m >> 1 for m in grouped if not m & 1)


def _iter_homogeneous_masks(pmasks: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Every partition reachable from the given blocks by merging whole
    blocks and splitting single blocks, as canonical mask tuples.

    Block indices are grouped every possible way; a group of two or more
    blocks becomes their (whole) union, while a lone block contributes every
    way of splitting it.  Each result arises exactly once: merged blocks are
    strictly larger than any single block, so the grouping is recoverable.
    """
    pmasks = tuple(pmasks)
    k = len(pmasks)
    index_bits = tuple(1 << i for i in range(k))

    def choices(gmask: int) -> Iterator[tuple[int, ...]]:
        if gmask & (gmask - 1):
            union = 0
            g = gmask
            while g:
                union |= pmasks[(g & -g).bit_length() - 1]
                g &= g - 1
            yield (union,)
        else:
            yield from _iter_partition_masks(_bits_of(pmasks[gmask.bit_length() - 1]))

    def rec(groups: tuple[int, ...], idx: int, acc: list[int]) -> Iterator[tuple[int, ...]]:
        if idx == len(groups):
            yield tuple(sorted(acc, key=lambda m: m & -m))
            return
        for part in choices(groups[idx]):
            yield from rec(groups, idx + 1, acc + list(part))

    for grouping in _iter_partition_masks(index_bits):
        yield from rec(grouping, 0, [])


def enumerate_partitions(players: "int | Coalition | Iterable[int]"):
    """Yield every partition of the given players, restricted-growth order.

    ``players`` may be a count n (meaning {1..n}), a Coalition, or an
    iterable of player numbers.  When the players are exactly {1..n} the
    yields are Partition objects; otherwise they are Collections covering
    the given set.  There are Bell(#players) of them.
    """
    if isinstance(players, bool):
        raise TypeError("player count must be an int")
    if isinstance(players, int):
        _check_player_count(players)
        mask = (1 << players) - 1
    elif isinstance(players, Coalition):
        mask = players.mask
    else:
        mask = Coalition.from_members(players).mask
    bits = _bits_of(mask)
    if len(bits) > PARTITION_ENUM_CAP:
        raise CapExceededError(
            f"{len(bits)} players exceed the partition enumeration cap of {PARTITION_ENUM_CAP}"
        )
    build = Partition if mask & (mask + 1) == 0 else Collection
    for masks in _iter_partition_masks(bits):
        yield build(tuple(Coalition(m) for m in masks))


def enumerate_collections(n: int) -> Iterator[Collection]:
    """Yield every collection over {1..n}; the empty collection comes first."""
    _check_player_count(n)
    if n > COLLECTION_ENUM_CAP:
        raise CapExceededError(
            f"{n} players exceed the collection enumeration cap of {COLLECTION_ENUM_CAP}"
        )
    for masks in _iter_collection_masks(n):
        yield Collection(tuple(Coalition(m) for m in masks))


def enumerate_homogeneous_partitions(p: Partition) -> Iterator[Partition]:
    """Yield every partition obtainable from ``p`` by merges and splits."""
    if p.n > PARTITION_ENUM_CAP:
        raise CapExceededError(
            f"{p.n} players exceed the partition enumeration cap of {PARTITION_ENUM_CAP}"
        )
    for masks in _iter_homogeneous_masks(p.masks):
        yield Partition(tuple(Coalition(m) for m in masks))
