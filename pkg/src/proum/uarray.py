"""Utility-arrays and prefix projection over them.

A utility-array flattens one q-sequence into per-position records
``(eid, item, u, ru, next_pos, next_eid)``. Positions and eids are 1-based;
the parallel lists below keep a dummy slot at index 0 so ``array.u[pos]``
reads naturally. Absent links are ``None``.

A projection never copies sequence content. For each sequence containing the
prefix pattern it keeps the *pivots*: every global position where some match
of the prefix ends, together with the best utility of any match ending there.
That is enough to get the prefix utility (max over pivots), its SEU (max pivot
utility plus ``ru`` at the first pivot) and all child projections.
"""
from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass

from .model import Item, QSequence, QSequenceDatabase, Utility


@dataclass(frozen=True)
class UtilityArrayEntry:
    pos: int
    eid: int
    item: Item
    u: Utility
    ru: Utility
    next_pos: int | None
    next_eid: int | None


class UtilityArray:
    __slots__ = ("sid", "eid", "item", "u", "ru", "next_pos", "next_eid", "first_occurrence", "n")

    def __init__(self, sid, eid, item, u, ru, next_pos, next_eid, first_occurrence):
        self.sid = sid
        self.eid = eid
        self.item = item
        self.u = u
        self.ru = ru
        self.next_pos = next_pos
        self.next_eid = next_eid
        self.first_occurrence = first_occurrence
        self.n = len(eid) - 1

    def __len__(self) -> int:
        return self.n

    def entry(self, pos: int) -> UtilityArrayEntry:
        if not 1 <= pos <= self.n:
            raise IndexError(pos)
        return UtilityArrayEntry(
            pos, self.eid[pos], self.item[pos], self.u[pos], self.ru[pos], self.next_pos[pos], self.next_eid[pos]
        )

    @property
    def entries(self) -> list[UtilityArrayEntry]:
        return [self.entry(p) for p in range(1, self.n + 1)]

    def occurrences(self, item: Item) -> list[int]:
        out = []
        p = self.first_occurrence.get(item)
        while p is not None:
            out.append(p)
            p = self.next_pos[p]
        return out

    def dump(self) -> str:
        """Tab-separated table: pos, eid, item, u, ru, next_pos, next_eid."""
        lines = ["pos\teid\titem\tu\tru\tnext_pos\tnext_eid"]
        for e in self.entries:
            cells = (e.pos, e.eid, e.item, e.u, e.ru, e.next_pos, e.next_eid)
            lines.append("\t".join("-" if c is None else str(c) for c in cells))
        return "\n".join(lines) + "\n"


def build_utility_array(s: QSequence, profits: Mapping[Item, int]) -> UtilityArray:
    flat = s.flat
    n = len(flat)
    eid = [0] * (n + 1)
    item = [0] * (n + 1)
    u = [0] * (n + 1)
    for pos, (e, i, q) in enumerate(flat, start=1):
        eid[pos] = e
        item[pos] = i
        u[pos] = q * profits[i]

    ru = [0] * (n + 1)
    for pos in range(n - 1, 0, -1):
        ru[pos] = ru[pos + 1] + u[pos + 1]
    if n:
        ru[0] = ru[1] + u[1]

    next_pos: list[int | None] = [None] * (n + 1)
    first_occurrence: dict[Item, int] = {}
    last_seen: dict[Item, int] = {}
    for pos in range(1, n + 1):
        i = item[pos]
        if i in last_seen:
            next_pos[last_seen[i]] = pos
        else:
            first_occurrence[i] = pos
        last_seen[i] = pos

    element_start = {}
    for pos in range(n, 0, -1):
        element_start[eid[pos]] = pos
    next_eid: list[int | None] = [None] * (n + 1)
    for pos in range(1, n + 1):
        next_eid[pos] = element_start.get(eid[pos] + 1)
    next_eid[0] = 1 if n else None

    return UtilityArray(s.sid, eid, item, u, ru, next_pos, next_eid, first_occurrence)


def build_all(db: QSequenceDatabase) -> list[UtilityArray]:
    return [build_utility_array(s, db.profits) for s in db.sequences]


@dataclass
class ProjectionState:
    """Projection of the database onto one prefix pattern.

    ``rows`` holds ``(array index, pivot positions, pivot best utilities)`` for
    every sequence containing the prefix, pivots ascending by position.
    """

    rows: list[tuple[int, list[int], list[Utility]]]
    utility: Utility
    seu: Utility

    def __len__(self) -> int:
        return len(self.rows)


def root_state(arrays: list[UtilityArray]) -> ProjectionState:
    """State of the empty prefix: a virtual pivot at position 0 (eid 0) everywhere."""
    rows = [(k, [0], [0]) for k, a in enumerate(arrays) if a.n]
    return ProjectionState(rows, 0, sum(arrays[k].ru[0] for k, _, _ in rows))


def _finish(rows, arrays) -> ProjectionState:
    utility = 0
    seu = 0
    for k, pos, best in rows:
        m = max(best)
        utility += m
        seu += m + arrays[k].ru[pos[0]]
    return ProjectionState(rows, utility, seu)


def project_i(state: ProjectionState, arrays: list[UtilityArray], item: Item) -> ProjectionState:
    """Extend the prefix's last itemset with ``item``."""
    rows = []
    for k, pivots, bests in state.rows:
        a = arrays[k]
        eid = a.eid
        new_pos = []
        new_best = []
        j = 0
        npiv = len(pivots)
        q = a.first_occurrence.get(item)
        while q is not None and j < npiv:
            e = eid[q]
            while j < npiv and eid[pivots[j]] < e:
                j += 1
            if j == npiv:
                break
            p = pivots[j]
            if eid[p] == e and p < q:
                new_pos.append(q)
                new_best.append(bests[j] + a.u[q])
            q = a.next_pos[q]
        if new_pos:
            rows.append((k, new_pos, new_best))
    return _finish(rows, arrays)


def project_s(state: ProjectionState, arrays: list[UtilityArray], item: Item) -> ProjectionState:
    """Append ``item`` as a new itemset after the prefix."""
    rows = []
    for k, pivots, bests in state.rows:
        a = arrays[k]
        eid = a.eid
        new_pos = []
        new_best = []
        j = 0
        npiv = len(pivots)
        run = -1
        q = a.first_occurrence.get(item)
        while q is not None:
            e = eid[q]
            while j < npiv and eid[pivots[j]] < e:
                if bests[j] > run:
                    run = bests[j]
                j += 1
            if run >= 0:
                new_pos.append(q)
                new_best.append(run + a.u[q])
            q = a.next_pos[q]
        if new_pos:
            rows.append((k, new_pos, new_best))
    return _finish(rows, arrays)


def initial_projection(arrays: list[UtilityArray], item: Item) -> ProjectionState:
    return project_s(root_state(arrays), arrays, item)


@dataclass(frozen=True)
class Candidate:
    item: Item
    seu: Utility
    utility: Utility


def extension_candidates(
    state: ProjectionState, arrays: list[UtilityArray]
) -> tuple[dict[Item, Candidate], dict[Item, Candidate]]:
    """One scan of the projected arrays collecting I- and S-extension items.

    Each candidate carries the SEU and utility its child pattern would have,
    so unpromising children can be dropped before any projection is built.
    """
    i_acc: dict[Item, list[int]] = {}
    s_acc: dict[Item, list[int]] = {}
    for k, pivots, bests in state.rows:
        a = arrays[k]
        eid, items, u, ru = a.eid, a.item, a.u, a.ru
        n = a.n
        i_seen: dict[Item, list[int]] = {}
        s_seen: dict[Item, list[int]] = {}

        for p, best in zip(pivots, bests):
            e = eid[p]
            q = p + 1
            while q <= n and eid[q] == e:
                v = best + u[q]
                rec = i_seen.get(items[q])
                if rec is None:
                    i_seen[items[q]] = [v, q]
                elif v > rec[0]:
                    rec[0] = v
                q += 1

        start = a.next_eid[pivots[0]]
        if start is not None:
            j = 0
            npiv = len(pivots)
            run = -1
            for q in range(start, n + 1):
                e = eid[q]
                while j < npiv and eid[pivots[j]] < e:
                    if bests[j] > run:
                        run = bests[j]
                    j += 1
                v = run + u[q]
                rec = s_seen.get(items[q])
                if rec is None:
                    s_seen[items[q]] = [v, q]
                elif v > rec[0]:
                    rec[0] = v

        for seen, acc in ((i_seen, i_acc), (s_seen, s_acc)):
            for it, (v, first) in seen.items():
                tot = acc.get(it)
                if tot is None:
                    acc[it] = [v + ru[first], v]
                else:
                    tot[0] += v + ru[first]
                    tot[1] += v

    def freeze(acc):
        return {it: Candidate(it, acc[it][0], acc[it][1]) for it in sorted(acc)}

    return freeze(i_acc), freeze(s_acc)
