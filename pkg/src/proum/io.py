"""Dataset / profit-table text formats, result output and a seeded generator.

Dataset lines hold one q-sequence each: ``item:quantity`` tokens, ``-1``
closing an element and ``-2`` closing the sequence, for example::

    1:2 3:1 -1 3:2 -1 2:10 6:3 -1 1:2 5:1 -2

A ``-1`` directly before ``-2`` is accepted on input and never written.
Profit files hold ``item<TAB>profit`` lines.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from pathlib import Path

from .model import (
    Item,
    Pattern,
    ProfitTable,
    QElement,
    QItem,
    QSequence,
    QSequenceDatabase,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


def parse_dataset(text: str) -> list[QSequence]:
    sequences = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        elements: list[QElement] = []
        current: dict[Item, int] = {}
        ended = False
        column = 1
        for token in line.split(" "):
            col = column
            column += len(token) + 1
            if not token:
                continue
            if ended:
                raise ParseError(f"token {token!r} after end of sequence", lineno, col)
            if token in ("-1", "-2"):
                if current:
                    elements.append(QElement(tuple(QItem(i, q) for i, q in sorted(current.items()))))
                    current = {}
                elif token == "-1":
                    raise ParseError("empty element", lineno, col)
                ended = token == "-2"
                continue
            item_text, sep, qty_text = token.partition(":")
            if not sep:
                raise ParseError(f"expected item:quantity, got {token!r}", lineno, col)
            try:
                item, qty = int(item_text), int(qty_text)
            except ValueError:
                raise ParseError(f"non-integer token {token!r}", lineno, col) from None
            if item < 1:
                raise ParseError(f"item must be positive, got {item}", lineno, col)
            if qty < 1:
                raise ParseError(f"quantity must be positive, got {qty}", lineno, col)
            if item in current:
                raise ParseError(f"item {item} repeated within an element", lineno, col)
            current[item] = qty
        if not ended:
            raise ParseError("missing -2 at end of sequence", lineno)
        if not elements:
            raise ParseError("empty sequence", lineno)
        sequences.append(QSequence(len(sequences) + 1, tuple(elements)))
    return sequences


def serialize_dataset(sequences) -> str:
    lines = []
    for s in sequences:
        parts = []
        for v in s.elements:
            parts.extend(f"{qi.item}:{qi.quantity}" for qi in v.qitems)
            parts.append("-1")
        parts[-1] = "-2"
        lines.append(" ".join(parts))
    return "".join(line + "\n" for line in lines)


def parse_profits(text: str) -> ProfitTable:
    table: dict[Item, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        fields = line.split("\t")
        if len(fields) != 2:
            raise ParseError(f"expected item<TAB>profit, got {line!r}", lineno)
        try:
            item, profit = int(fields[0]), int(fields[1])
        except ValueError:
            raise ParseError(f"non-integer field in {line!r}", lineno) from None
        if item < 1:
            raise ParseError(f"item must be positive, got {item}", lineno)
        if profit < 0:
            raise ParseError(f"profit must be non-negative, got {profit}", lineno)
        if item in table:
            raise ParseError(f"duplicate item {item}", lineno)
        table[item] = profit
    return ProfitTable(table)


def serialize_profits(profits: ProfitTable) -> str:
    return "".join(f"{item}\t{profits[item]}\n" for item in sorted(profits))


def load_database(data_path, profits_path) -> QSequenceDatabase:
    sequences = parse_dataset(Path(data_path).read_text(encoding="utf-8"))
    profits = parse_profits(Path(profits_path).read_text(encoding="utf-8"))
    return QSequenceDatabase(tuple(sequences), profits)


def format_pattern(t: Pattern) -> str:
    return " ".join(" ".join(map(str, e)) + " -1" for e in t.elements)


def write_results(result, stats: bool = True) -> str:
    """One ``pattern<TAB>utility`` line per HUSP, then ``# key=value`` counters.

    Wall time is left out so that identical runs give identical bytes.
    """
    ordered = sorted(result.husps.items(), key=lambda kv: kv[0].sort_key())
    lines = [f"{format_pattern(p)}\t{u}" for p, u in ordered]
    if stats:
        lines.extend(f"# {k}={v}" for k, v in result.stats.counters().items())
    return "".join(line + "\n" for line in lines)


@dataclass(frozen=True)
class GenParams:
    sequence_count: int = 100
    item_universe_size: int = 20
    mean_elements: float = 4.0
    mean_items: float = 2.0
    max_quantity: int = 5
    profit_min: int = 1
    profit_max: int = 10
    seed: int = 0
    max_elements: int | None = None
    max_items: int | None = None
    item_skew: float = 0.0

    def __post_init__(self):
        if self.item_universe_size < 1:
            raise ValueError("item_universe_size must be at least 1")
        if self.sequence_count < 0:
            raise ValueError("sequence_count must be non-negative")
        if self.mean_elements < 1 or self.mean_items < 1:
            raise ValueError("mean element and item counts must be at least 1")
        if self.max_quantity < 1:
            raise ValueError("max_quantity must be at least 1")
        if not 0 <= self.profit_min <= self.profit_max:
            raise ValueError("need 0 <= profit_min <= profit_max")
        if self.item_skew < 0:
            raise ValueError("item_skew must be non-negative")


def _truncated_geometric(rng: random.Random, mean: float, upper: int) -> int:
    # support 1..upper, untruncated mean = ``mean``
    if mean <= 1 or upper <= 1:
        return 1
    p = 1.0 / mean
    while True:
        k = 1 + int(math.log(1.0 - rng.random()) / math.log(1.0 - p))
        if k <= upper:
            return k


def _pick_items(rng: random.Random, universe: list[int], weights: list[float] | None, k: int) -> list[int]:
    if weights is None:
        return sorted(rng.sample(universe, k))
    chosen: set[int] = set()
    while len(chosen) < k:
        chosen.add(rng.choices(universe, weights)[0])
    return sorted(chosen)


def generate(params: GenParams) -> QSequenceDatabase:
    """Random q-sequence database, byte-for-byte reproducible per seed.

    Quantities and profits are uniform integers. Elements per sequence and
    items per element follow truncated geometric laws with the given means.
    ``item_skew`` > 0 makes item ``i`` drawn with weight ``i ** -item_skew``.
    """
    rng = random.Random(params.seed)
    universe = list(range(1, params.item_universe_size + 1))
    weights = [i ** -params.item_skew for i in universe] if params.item_skew > 0 else None
    profits = ProfitTable({i: rng.randint(params.profit_min, params.profit_max) for i in universe})
    max_elements = params.max_elements or max(1, math.ceil(4 * params.mean_elements))
    max_items = min(params.max_items or params.item_universe_size, params.item_universe_size)
    sequences = []
    for sid in range(1, params.sequence_count + 1):
        n_elements = _truncated_geometric(rng, params.mean_elements, max_elements)
        elements = []
        for _ in range(n_elements):
            k = _truncated_geometric(rng, params.mean_items, max_items)
            items = _pick_items(rng, universe, weights, k)
            elements.append(QElement(tuple(QItem(i, rng.randint(1, params.max_quantity)) for i in items)))
        sequences.append(QSequence(sid, tuple(elements)))
    return QSequenceDatabase(tuple(sequences), profits)


def write_generated(db: QSequenceDatabase, out_dir, stem: str = "synthetic") -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    data_path = out / f"{stem}.txt"
    profits_path = out / f"{stem}_profits.tsv"
    data_path.write_text(serialize_dataset(db.sequences), encoding="utf-8", newline="\n")
    profits_path.write_text(serialize_profits(db.profits), encoding="utf-8", newline="\n")
    return data_path, profits_path
