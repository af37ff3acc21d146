"""Reference (non-incremental) matching semantics and utility bounds.

Everything here is computed by exhaustive match enumeration straight from the
q-sequences. It is deliberately slow and simple: the utility-array projection
in :mod:`proum.uarray` and the brute-force oracle are both checked against it.

Global positions are 1-based and run left to right through the elements,
and within an element by ascending item id.
"""
from __future__ import annotations

from collections.abc import Iterator, Mapping
from dataclasses import dataclass

from .model import (
    Item,
    Pattern,
    QElement,
    QItem,
    QSequence,
    QSequenceDatabase,
    Utility,
    position_utilities,
    sequence_utility,
)


@dataclass(frozen=True)
class Match:
    """One way of pinning a pattern onto a q-sequence.

    ``eids[k]`` is the (1-based) element hosting pattern itemset ``k`` and
    ``positions[k]`` the global positions of its items there.
    """

    eids: tuple[int, ...]
    positions: tuple[tuple[int, ...], ...]

    @property
    def end_position(self) -> int:
        return self.positions[-1][-1]

    def utility(self, s: QSequence, profits: Mapping[Item, int]) -> Utility:
        us = position_utilities(s, profits)
        return sum(us[p - 1] for ps in self.positions for p in ps)


@dataclass(frozen=True)
class RestPart:
    """Suffix of ``sequence`` strictly after global position ``after``."""

    sequence: QSequence
    after: int

    @property
    def elements(self) -> tuple[QElement, ...]:
        grouped: dict[int, list[QItem]] = {}
        for pos, (eid, item, q) in enumerate(self.sequence.flat, start=1):
            if pos > self.after:
                grouped.setdefault(eid, []).append(QItem(item, q))
        return tuple(QElement(tuple(qis)) for qis in grouped.values())

    def utility(self, profits: Mapping[Item, int]) -> Utility:
        return sum(position_utilities(self.sequence, profits)[self.after:])


def _element_positions(s: QSequence) -> list[dict[Item, int]]:
    """Per element (0-based), item -> global position."""
    out: list[dict[Item, int]] = [{} for _ in s.elements]
    for pos, (eid, item, _) in enumerate(s.flat, start=1):
        out[eid - 1][item] = pos
    return out


def iter_matches(t: Pattern, s: QSequence) -> Iterator[Match]:
    """Yield matches in lexicographic order of their element-index vectors."""
    if t.is_empty():
        return
    index = _element_positions(s)

    def grow(k: int, start: int, eids: tuple, positions: tuple):
        if k == t.size:
            yield Match(eids, positions)
            return
        wanted = t.elements[k]
        for e in range(start, len(index)):
            where = index[e]
            if all(i in where for i in wanted):
                yield from grow(k + 1, e + 1, eids + (e + 1,), positions + (tuple(where[i] for i in wanted),))

    yield from grow(0, 0, (), ())


def enumerate_matches(t: Pattern, s: QSequence) -> list[Match]:
    return list(iter_matches(t, s))


def contains(t: Pattern, s: QSequence) -> bool:
    return next(iter_matches(t, s), None) is not None


def pattern_utility_in_seq(t: Pattern, s: QSequence, profits: Mapping[Item, int]) -> Utility | None:
    """Maximum utility over all matches, or ``None`` when ``t`` is not contained."""
    us = position_utilities(s, profits)
    best = None
    for m in iter_matches(t, s):
        u = sum(us[p - 1] for ps in m.positions for p in ps)
        if best is None or u > best:
            best = u
    return best


def pattern_utility(t: Pattern, db: QSequenceDatabase) -> Utility:
    total = 0
    for s in db.sequences:
        u = pattern_utility_in_seq(t, s, db.profits)
        if u is not None:
            total += u
    return total


def remaining_utility_at(s: QSequence, pos: int, profits: Mapping[Item, int]) -> Utility:
    if not 1 <= pos <= len(s):
        raise IndexError(f"position {pos} outside 1..{len(s)} of sequence {s.sid}")
    return sum(position_utilities(s, profits)[pos:])


def remaining_utility_of_pattern(t: Pattern, s: QSequence, profits: Mapping[Item, int]) -> Utility | None:
    ends = [m.end_position for m in iter_matches(t, s)]
    if not ends:
        return None
    return max(remaining_utility_at(s, e, profits) for e in ends)


def remaining_utility_in_db(t: Pattern, db: QSequenceDatabase) -> Utility:
    total = 0
    for s in db.sequences:
        r = remaining_utility_of_pattern(t, s, db.profits)
        if r is not None:
            total += r
    return total


def first_match(t: Pattern, s: QSequence) -> Match | None:
    return next(iter_matches(t, s), None)


def first_match_rest(t: Pattern, s: QSequence) -> RestPart | None:
    m = first_match(t, s)
    return None if m is None else RestPart(s, m.end_position)


def swu(t: Pattern, db: QSequenceDatabase) -> Utility:
    return sum(sequence_utility(s, db.profits) for s in db.sequences if contains(t, s))


def seu_in_seq(t: Pattern, s: QSequence, profits: Mapping[Item, int]) -> Utility | None:
    """Max-match utility plus the utility of the rest after the first match."""
    u = pattern_utility_in_seq(t, s, profits)
    if u is None:
        return None
    return u + first_match_rest(t, s).utility(profits)


def seu(t: Pattern, db: QSequenceDatabase) -> Utility:
    total = 0
    for s in db.sequences:
        v = seu_in_seq(t, s, db.profits)
        if v is not None:
            total += v
    return total


def spu_in_seq(t: Pattern, s: QSequence, profits: Mapping[Item, int]) -> Utility | None:
    """First-match utility plus rest after it. Not an upper bound; diagnostics only."""
    m = first_match(t, s)
    if m is None:
        return None
    return m.utility(s, profits) + RestPart(s, m.end_position).utility(profits)


def spu(t: Pattern, db: QSequenceDatabase) -> Utility:
    total = 0
    for s in db.sequences:
        v = spu_in_seq(t, s, db.profits)
        if v is not None:
            total += v
    return total
