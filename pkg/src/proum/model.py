"""Quantitative sequence data, profit tables, patterns and exact utility arithmetic.

Items are positive integer ids ordered numerically. Utilities are plain Python
ints; totals are kept below ``UTILITY_LIMIT`` so results can be exchanged with
64-bit tooling.
"""
from __future__ import annotations

from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

Item = int
Utility = int

UTILITY_LIMIT = 2**63


class UnknownItemError(KeyError):
    """An item has no entry in the profit table."""

    def __init__(self, item: Item):
        super().__init__(item)
        self.item = item

    def __str__(self) -> str:
        return f"item {self.item} has no unit profit"


class ProfitTable(Mapping[Item, int]):
    """Immutable map from item to non-negative unit profit."""

    __slots__ = ("_profits",)

    def __init__(self, profits: Mapping[Item, int] | Iterable[tuple[Item, int]] = ()):
        table = dict(profits)
        for item, profit in table.items():
            _check_item(item)
            if not isinstance(profit, int) or profit < 0:
                raise ValueError(f"profit of item {item} must be a non-negative integer, got {profit!r}")
        self._profits = table

    def __getitem__(self, item: Item) -> int:
        try:
            return self._profits[item]
        except KeyError:
            raise UnknownItemError(item) from None

    def __iter__(self) -> Iterator[Item]:
        return iter(self._profits)

    def __len__(self) -> int:
        return len(self._profits)

    def __repr__(self) -> str:
        return f"ProfitTable({self._profits!r})"

    def __hash__(self) -> int:
        return hash(frozenset(self._profits.items()))


def _check_item(item: Item) -> None:
    if not isinstance(item, int) or isinstance(item, bool) or item < 1:
        raise ValueError(f"items are positive integers, got {item!r}")


@dataclass(frozen=True, order=True)
class QItem:
    item: Item
    quantity: int

    def __post_init__(self):
        _check_item(self.item)
        if not isinstance(self.quantity, int) or self.quantity < 1:
            raise ValueError(f"quantity of item {self.item} must be a positive integer, got {self.quantity!r}")


@dataclass(frozen=True)
class QElement:
    qitems: tuple[QItem, ...]

    def __post_init__(self):
        qitems = tuple(self.qitems)
        object.__setattr__(self, "qitems", qitems)
        if not qitems:
            raise ValueError("an element must contain at least one item")
        for a, b in zip(qitems, qitems[1:]):
            if a.item >= b.item:
                raise ValueError(f"element items must be strictly ascending, got {a.item} before {b.item}")

    @classmethod
    def of(cls, *pairs: tuple[Item, int]) -> QElement:
        """Build from ``(item, quantity)`` pairs in any order."""
        return cls(tuple(QItem(i, q) for i, q in sorted(pairs)))

    @property
    def items(self) -> tuple[Item, ...]:
        return tuple(qi.item for qi in self.qitems)

    def __len__(self) -> int:
        return len(self.qitems)


@dataclass(frozen=True)
class QSequence:
    sid: int
    elements: tuple[QElement, ...]

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        if not elements:
            raise ValueError(f"sequence {self.sid} has no elements")

    @classmethod
    def of(cls, sid: int, *elements: Iterable[tuple[Item, int]]) -> QSequence:
        return cls(sid, tuple(QElement.of(*e) for e in elements))

    @cached_property
    def flat(self) -> tuple[tuple[int, Item, int], ...]:
        """``(eid, item, quantity)`` per global position, eids starting at 1."""
        return tuple(
            (eid, qi.item, qi.quantity)
            for eid, element in enumerate(self.elements, start=1)
            for qi in element.qitems
        )

    def __len__(self) -> int:
        return len(self.flat)

    @property
    def size(self) -> int:
        return len(self.elements)

    def items(self) -> set[Item]:
        return {item for _, item, _ in self.flat}


@dataclass(frozen=True)
class QSequenceDatabase:
    sequences: tuple[QSequence, ...]
    profits: ProfitTable = field(default_factory=ProfitTable)

    def __post_init__(self):
        sequences = tuple(self.sequences)
        object.__setattr__(self, "sequences", sequences)
        if not isinstance(self.profits, ProfitTable):
            object.__setattr__(self, "profits", ProfitTable(self.profits))
        seen = set()
        for s in sequences:
            if s.sid in seen:
                raise ValueError(f"duplicate sid {s.sid}")
            seen.add(s.sid)
            for _, item, _ in s.flat:
                if item not in self.profits:
                    raise UnknownItemError(item)

    def __len__(self) -> int:
        return len(self.sequences)

    def __iter__(self) -> Iterator[QSequence]:
        return iter(self.sequences)

    def items(self) -> list[Item]:
        found: set[Item] = set()
        for s in self.sequences:
            found |= s.items()
        return sorted(found)

    def by_sid(self, sid: int) -> QSequence:
        for s in self.sequences:
            if s.sid == sid:
                return s
        raise KeyError(f"no sequence with sid {sid}")


@dataclass(frozen=True)
class Pattern:
    """A sequence of itemsets without quantities."""

    elements: tuple[tuple[Item, ...], ...] = ()

    def __post_init__(self):
        elements = tuple(tuple(e) for e in self.elements)
        object.__setattr__(self, "elements", elements)
        for e in elements:
            if not e:
                raise ValueError("pattern itemsets must be non-empty")
            for i in e:
                _check_item(i)
            for a, b in zip(e, e[1:]):
                if a >= b:
                    raise ValueError(f"pattern itemsets must be strictly ascending, got {e}")

    @classmethod
    def of(cls, *elements: Iterable[Item]) -> Pattern:
        return cls(tuple(tuple(sorted(e)) for e in elements))

    @property
    def size(self) -> int:
        return len(self.elements)

    @property
    def length(self) -> int:
        return sum(len(e) for e in self.elements)

    @property
    def last_item(self) -> Item | None:
        return self.elements[-1][-1] if self.elements else None

    def is_empty(self) -> bool:
        return not self.elements

    def sort_key(self) -> tuple:
        return (self.size, self.length, self.elements)

    def __str__(self) -> str:
        return "<" + ",".join("[" + " ".join(map(str, e)) + "]" for e in self.elements) + ">"


@dataclass(frozen=True)
class Threshold:
    """Minimum utility ratio kept as an exact fraction ``numerator/denominator``."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.numerator <= 0 or self.denominator <= 0:
            raise ValueError("threshold terms must be positive integers")
        if self.numerator > self.denominator:
            raise ValueError(f"threshold {self.numerator}/{self.denominator} exceeds 1")

    @classmethod
    def from_fraction(cls, value: Fraction | int | str) -> Threshold:
        f = Fraction(value)
        return cls(f.numerator, f.denominator)

    @classmethod
    def parse(cls, text: str) -> Threshold:
        """Accept ``0.25``, ``1/4`` or ``25%``."""
        text = text.strip()
        try:
            if text.endswith("%"):
                f = Fraction(text[:-1].strip()) / 100
            else:
                f = Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"cannot parse threshold {text!r}") from None
        if not 0 < f <= 1:
            raise ValueError(f"threshold must lie in (0, 1], got {text!r}")
        return cls(f.numerator, f.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def min_utility(self, total: Utility) -> Fraction:
        return self.fraction * total

    def is_met(self, utility: Utility, total: Utility) -> bool:
        return utility * self.denominator >= self.numerator * total

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def q_item_utility(qi: QItem, profits: Mapping[Item, int]) -> Utility:
    return qi.quantity * profits[qi.item]


def element_utility(v: QElement, profits: Mapping[Item, int]) -> Utility:
    return sum(q_item_utility(qi, profits) for qi in v.qitems)


def sequence_utility(s: QSequence, profits: Mapping[Item, int]) -> Utility:
    return sum(element_utility(v, profits) for v in s.elements)


def database_utility(db: QSequenceDatabase) -> Utility:
    total = sum(sequence_utility(s, db.profits) for s in db.sequences)
    if total >= UTILITY_LIMIT:
        raise OverflowError(f"database utility {total} exceeds the supported limit 2**63")
    return total


def position_utilities(s: QSequence, profits: Mapping[Item, int]) -> list[Utility]:
    """Utility of each q-item in global position order (index 0 is position 1)."""
    return [q * profits[item] for _, item, q in s.flat]


def i_concatenate(t: Pattern, item: Item) -> Pattern:
    if t.is_empty():
        raise ValueError("cannot I-concatenate onto the empty pattern")
    if item <= t.elements[-1][-1]:
        raise ValueError(f"I-concatenation needs an item greater than {t.elements[-1][-1]}, got {item}")
    return Pattern(t.elements[:-1] + (t.elements[-1] + (item,),))


def s_concatenate(t: Pattern, item: Item) -> Pattern:
    return Pattern(t.elements + ((item,),))
