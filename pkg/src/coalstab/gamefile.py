"""Plain-text game documents.

A document is a sequence of ``key: value`` lines; ``#`` starts a comment
and blank lines are ignored.  Two representations exist::

    representation: table          representation: rule
    n: 3                           family: generalized_odd
    default: 0                     param n: 3
    value {1,2}: 5/2               partition pairs: {1,2} {3,4} {5,6}
    partition main: {1,2} {3}

Values are exact: integers, fractions like ``3/4``, or finite decimals
(converted exactly).  Table documents without a ``default`` line must
value every nonempty coalition.  Rule documents name a generator family
and its parameters, and round-trip through those parameters rather than
through an expanded table.  Named partitions are optional in both forms.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Mapping

from .model import (
    MAX_PLAYERS,
    Coalition,
    Collection,
    Game,
    Partition,
    Value,
    as_value,
    format_value,
)
from .games import (
    CityConfig,
    GeneratorSpec,
    example_game,
    generalized_odd_game,
    partition_power_game,
    random_game,
    transportation_game,
)


class ParseError(ValueError):
    """A malformed game document; messages carry the offending line number."""


FAMILIES = ("example", "generalized_odd", "partition_power", "transportation", "random")


def _parse_int(raw: str, what: str) -> int:
    try:
        return int(raw.strip())
    except ValueError as exc:
        raise ValueError(f"{what} must be an integer, got {raw!r}") from exc


def _parse_value_list(raw: str) -> "tuple[Value, ...]":
    return tuple(as_value(tok) for tok in raw.replace(",", " ").split())


def build_family(family: str, raw_params: "Mapping[str, str]") -> Game:
    """Construct a game from a family name and raw string parameters.

    Shared by the document parser and the ``generate`` command.  Raises
    ValueError on unknown families, unknown or missing parameters, and any
    parameter that fails its family's validation.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; valid: {', '.join(FAMILIES)}")
    params = dict(raw_params)

    def take(name: str, default: "str | None" = None) -> str:
        if name in params:
            return params.pop(name)
        if default is not None:
            return default
        raise ValueError(f"family {family!r} needs parameter {name!r}")

    if family == "example":
        game = example_game(take("name").strip())
    elif family == "generalized_odd":
        game = generalized_odd_game(_parse_int(take("n"), "n"))
    elif family == "partition_power":
        defining = Partition.parse(take("partition"))
        game = partition_power_game(defining, _parse_int(take("m"), "m"))
    elif family == "transportation":
        cfg = CityConfig(
            cities=Partition.parse(take("cities")),
            base=_parse_value_list(take("base")),
            decay=_parse_value_list(take("decay")),
            penalty=as_value(take("penalty")),
        )
        game = transportation_game(cfg)[0]
    else:
        spec = GeneratorSpec(
            n=_parse_int(take("n"), "n"),
            kind=take("class", "general").strip(),
            low=_parse_int(take("low", "0"), "low"),
            high=_parse_int(take("high", "6"), "high"),
            seed=_parse_int(take("seed", "0"), "seed"),
        )
        game = random_game(spec)
    if params:
        leftover = ", ".join(sorted(params))
        raise ValueError(f"unknown parameter(s) for family {family!r}: {leftover}")
    return game


def _parse_entry_mask(literal: str, n: int, lineno: int) -> int:
    inner = literal.strip()
    if inner.startswith("{") and inner.endswith("}"):
        inner = inner[1:-1]
    tokens = inner.replace(",", " ").split()
    mask = 0
    for tok in tokens:
        try:
            player = int(tok)
        except ValueError as exc:
            raise ParseError(f"line {lineno}: bad player number {tok!r}") from exc
        if not 1 <= player <= n:
            raise ParseError(
                f"line {lineno}: player index out of range: {player} in a {n}-player game"
            )
        mask |= 1 << (player - 1)
    return mask


def parse_game(text: str) -> "tuple[Game, dict[str, Partition]]":
    """Parse a game document into a Game and its named partitions."""
    representation = None
    n = None
    n_line = 0
    default_entry: "tuple[int, str] | None" = None
    value_entries: "list[tuple[int, str, str]]" = []
    family = None
    family_line = 0
    raw_params: "dict[str, str]" = {}
    partition_entries: "list[tuple[int, str, str]]" = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(f"line {lineno}: expected 'key: value', got {line!r}")
        head, _, tail = line.partition(":")
        head = head.strip()
        tail = tail.strip()
        words = head.split(None, 1)
        key = words[0] if words else ""
        arg = words[1].strip() if len(words) > 1 else None
        if key == "representation" and arg is None:
            if representation is not None:
                raise ParseError(f"line {lineno}: duplicate representation line")
            if tail not in ("table", "rule"):
                raise ParseError(f"line {lineno}: representation must be 'table' or 'rule'")
            representation = tail
        elif key == "n" and arg is None:
            if n is not None:
                raise ParseError(f"line {lineno}: duplicate n line")
            try:
                n = _parse_int(tail, "n")
            except ValueError as exc:
                raise ParseError(f"line {lineno}: {exc}") from exc
            n_line = lineno
        elif key == "default" and arg is None:
            if default_entry is not None:
                raise ParseError(f"line {lineno}: duplicate default line")
            default_entry = (lineno, tail)
        elif key == "value":
            if arg is None:
                raise ParseError(f"line {lineno}: value lines look like 'value {{1,2}}: 5'")
            value_entries.append((lineno, arg, tail))
        elif key == "family" and arg is None:
            if family is not None:
                raise ParseError(f"line {lineno}: duplicate family line")
            if tail not in FAMILIES:
                raise ParseError(
                    f"line {lineno}: unknown family {tail!r}; valid: {', '.join(FAMILIES)}"
                )
            family = tail
            family_line = lineno
        elif key == "param":
            if arg is None:
                raise ParseError(f"line {lineno}: param lines look like 'param n: 3'")
            if arg in raw_params:
                raise ParseError(f"line {lineno}: duplicate parameter {arg!r}")
            raw_params[arg] = tail
        elif key == "partition":
            if arg is None:
                raise ParseError(f"line {lineno}: partition lines look like 'partition main: {{1,2}} {{3}}'")
            if any(name == arg for _, name, _ in partition_entries):
                raise ParseError(f"line {lineno}: duplicate partition name {arg!r}")
            partition_entries.append((lineno, arg, tail))
        else:
            raise ParseError(f"line {lineno}: unknown key {head!r}")

    if representation is None:
        raise ParseError("missing 'representation: table' or 'representation: rule' line")

    if representation == "table":
        if family is not None or raw_params:
            raise ParseError(
                f"line {family_line or 1}: table documents do not take family/param lines"
            )
        if n is None:
            raise ParseError("table documents need an 'n:' line")
        if not 1 <= n <= MAX_PLAYERS:
            raise ParseError(f"line {n_line}: n must be between 1 and {MAX_PLAYERS}")
        default: Value = 0
        if default_entry is not None:
            dl, draw = default_entry
            try:
                default = as_value(draw)
            except (TypeError, ValueError) as exc:
                raise ParseError(f"line {dl}: {exc}") from exc
        seen: "dict[int, Value]" = {}
        for lineno, literal, rawval in value_entries:
            mask = _parse_entry_mask(literal, n, lineno)
            try:
                val = as_value(rawval)
            except (TypeError, ValueError) as exc:
                raise ParseError(f"line {lineno}: {exc}") from exc
            if mask in seen:
                raise ParseError(f"line {lineno}: duplicate coalition entry {literal.strip()}")
            if mask == 0:
                if val != 0:
                    raise ParseError(f"line {lineno}: the empty set must have value 0")
                continue
            seen[mask] = val
        if default_entry is None:
            for m in range(1, 1 << n):
                if m not in seen:
                    raise ParseError(
                        f"missing value for coalition {Coalition(m)} and no default given"
                    )
        game = Game.from_table(n, seen, default=default)
    else:
        if value_entries or default_entry is not None:
            bad = value_entries[0][0] if value_entries else default_entry[0]  # type: ignore[index]
            raise ParseError(f"line {bad}: rule documents do not take value/default lines")
        if family is None:
            raise ParseError("rule documents need a 'family:' line")
        try:
            game = build_family(family, raw_params)
        except ParseError:
            raise
        except (TypeError, ValueError) as exc:
            raise ParseError(f"line {family_line}: {exc}") from exc
        if n is not None and n != game.n:
            raise ParseError(
                f"line {n_line}: n is {n} but family {family!r} produced {game.n} players"
            )

    named: "dict[str, Partition]" = {}
    for lineno, name, literal in partition_entries:
        try:
            part = Partition.parse(literal)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        if part.union_mask != game.full_mask:
            raise ParseError(
                f"line {lineno}: partition {name!r} does not cover players 1..{game.n}"
            )
        named[name] = part
    return game, named


def _format_param(value: object) -> str:
    if isinstance(value, Collection):
        return str(value)
    if isinstance(value, (tuple, list)):
        return " ".join(format_value(as_value(x)) for x in value)
    if isinstance(value, (int, Fraction)):
        return format_value(as_value(value))
    if isinstance(value, str):
        return value
    raise TypeError(f"cannot serialize parameter value {value!r}")


def serialize_game(g: Game, named: "Mapping[str, Partition] | None" = None) -> str:
    """Render a game document that :func:`parse_game` reads back.

    Games carrying family parameters serialize in rule form and round-trip
    through their parameters; everything else serializes as a dense table
    (zero-valued coalitions are elided under an explicit ``default: 0``).
    """
    lines = []
    if g.family in FAMILIES and g.params:
        lines.append("representation: rule")
        lines.append(f"family: {g.family}")
        for pname, pval in g.params.items():
            lines.append(f"param {pname}: {_format_param(pval)}")
    else:
        lines.append("representation: table")
        lines.append(f"n: {g.n}")
        lines.append("default: 0")
        v = g.dense_table()
        for m in range(1, 1 << g.n):
            if v[m] != 0:
                lines.append(f"value {Coalition(m)}: {format_value(v[m])}")
    for name, part in (named or {}).items():
        lines.append(f"partition {name}: {part}")
    return "\n".join(lines) + "\n"


def load_game(path: "str | Path") -> "tuple[Game, dict[str, Partition]]":
    """Read and parse a game document from disk."""
    text = Path(path).read_text(encoding="utf-8")
    try:
        return parse_game(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from exc


def save_game(path: "str | Path", g: Game, named: "Mapping[str, Partition] | None" = None) -> None:
    """Serialize a game document to disk."""
    Path(path).write_text(serialize_game(g, named), encoding="utf-8")
