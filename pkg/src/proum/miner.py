"""Projection-based high-utility sequential pattern mining.

Pipeline: compute u(D) on the input, drop items whose single-item SWU is below
the minimum utility (PUO), build utility-arrays for what is left, then grow
patterns depth-first from the empty prefix. At every node the projected
arrays are scanned once to collect I-/S-extension items with the SEU their
child would have; children below the minimum utility are skipped (PUK).
"""
from __future__ import annotations

import time
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields

from . import matcher
from .model import (
    Item,
    Pattern,
    QElement,
    QSequence,
    QSequenceDatabase,
    Threshold,
    Utility,
    database_utility,
    sequence_utility,
)
from .uarray import (
    ProjectionState,
    UtilityArray,
    build_all,
    extension_candidates,
    project_i,
    project_s,
    root_state,
)


class MiningResourceError(RuntimeError):
    """The search would exceed a configured resource cap."""


@dataclass(frozen=True)
class MinerConfig:
    threshold: Threshold
    enable_puo: bool = True
    enable_puk: bool = True
    max_pattern_length: int | None = None
    parallel_roots: bool = False
    workers: int | None = None


@dataclass
class MiningStats:
    nodes_visited: int = 0
    projections_built: int = 0
    puo_removed_items: int = 0
    puk_pruned_nodes: int = 0
    husp_count: int = 0
    elapsed: float = 0.0

    def counters(self) -> dict[str, int]:
        return {f.name: getattr(self, f.name) for f in fields(self) if f.name != "elapsed"}

    def merge(self, other: MiningStats) -> None:
        for name in ("nodes_visited", "projections_built", "puk_pruned_nodes"):
            setattr(self, name, getattr(self, name) + getattr(other, name))


@dataclass
class MiningResult:
    husps: dict[Pattern, Utility]
    stats: MiningStats
    total_utility: Utility = 0

    def __post_init__(self):
        self.husps = dict(sorted(self.husps.items(), key=lambda kv: kv[0].sort_key()))

    def patterns(self) -> list[Pattern]:
        return list(self.husps)

    def __len__(self) -> int:
        return len(self.husps)


def single_item_swu(db: QSequenceDatabase) -> dict[Item, Utility]:
    out: dict[Item, Utility] = {}
    for s in db.sequences:
        us = sequence_utility(s, db.profits)
        for item in s.items():
            out[item] = out.get(item, 0) + us
    return out


def revise_database(
    db: QSequenceDatabase, threshold: Threshold, total: Utility | None = None
) -> tuple[QSequenceDatabase, frozenset[Item]]:
    """Remove every item whose single-item SWU falls below the minimum utility.

    ``total`` defaults to u(D) of ``db`` itself; the miner passes the original
    database total so revision never lowers the bar.
    """
    if total is None:
        total = database_utility(db)
    removed = frozenset(i for i, w in single_item_swu(db).items() if not threshold.is_met(w, total))
    if not removed:
        return db, removed
    sequences = []
    for s in db.sequences:
        elements = []
        for v in s.elements:
            kept = tuple(qi for qi in v.qitems if qi.item not in removed)
            if kept:
                elements.append(QElement(kept))
        if elements:
            sequences.append(QSequence(s.sid, tuple(elements)))
    return QSequenceDatabase(tuple(sequences), db.profits), removed


class _Search:
    """Mutable bookkeeping for one depth-first search."""

    def __init__(self, arrays: list[UtilityArray], config: MinerConfig, total: Utility):
        self.arrays = arrays
        self.config = config
        self.total = total
        self.stats = MiningStats()
        self.husps: dict[Pattern, Utility] = {}
        t = config.threshold
        self._num, self._den = t.numerator, t.denominator

    def promising(self, value: Utility) -> bool:
        return value * self._den >= self._num * self.total

    def candidates(self, state: ProjectionState):
        """Candidate children of a node, I-extensions first, items ascending."""
        self.stats.nodes_visited += 1
        i_items, s_items = extension_candidates(state, self.arrays)
        out = []
        for kind, cands in (("i", i_items), ("s", s_items)):
            for item, cand in cands.items():
                if self.config.enable_puk and not self.promising(cand.seu):
                    self.stats.puk_pruned_nodes += 1
                    continue
                out.append((kind, item))
        return out

    def run(self, prefix: Pattern, state: ProjectionState, children: Iterable[tuple[str, Item]]) -> None:
        cap = self.config.max_pattern_length
        stack = [(prefix, state, list(children), 0)]
        while stack:
            t, st, kids, idx = stack[-1]
            if idx == len(kids):
                stack.pop()
                continue
            stack[-1] = (t, st, kids, idx + 1)
            kind, item = kids[idx]
            if kind == "i":
                child = Pattern(t.elements[:-1] + (t.elements[-1] + (item,),))
                child_state = project_i(st, self.arrays, item)
            else:
                child = Pattern(t.elements + ((item,),))
                child_state = project_s(st, self.arrays, item)
            self.stats.projections_built += 1
            if cap is not None and child.length > cap:
                raise MiningResourceError(
                    f"pattern {child} exceeds max_pattern_length={cap}; raise the cap or the threshold"
                )
            if self.config.enable_puk and not self.promising(child_state.seu):
                self.stats.puk_pruned_nodes += 1
                continue
            if self.promising(child_state.utility):
                self.husps[child] = child_state.utility
            stack.append((child, child_state, self.candidates(child_state), 0))


def _mine_root(arrays, config, total, item) -> tuple[dict[Pattern, Utility], MiningStats]:
    search = _Search(arrays, config, total)
    search.run(Pattern(), root_state(arrays), [("s", item)])
    return search.husps, search.stats


def mine(db: QSequenceDatabase, config: MinerConfig) -> MiningResult:
    start = time.perf_counter()
    total = database_utility(db)
    removed: frozenset[Item] = frozenset()
    if config.enable_puo:
        db, removed = revise_database(db, config.threshold, total)
    arrays = build_all(db)

    search = _Search(arrays, config, total)
    root = root_state(arrays)
    roots = search.candidates(root)
    if config.parallel_roots and len(roots) > 1:
        husps: dict[Pattern, Utility] = {}
        stats = search.stats
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            jobs = [pool.submit(_mine_root, arrays, config, total, item) for _, item in roots]
            for job in jobs:
                part, part_stats = job.result()
                husps.update(part)
                stats.merge(part_stats)
    else:
        search.run(Pattern(), root, roots)
        husps, stats = search.husps, search.stats

    stats.puo_removed_items = len(removed)
    stats.husp_count = len(husps)
    stats.elapsed = time.perf_counter() - start
    return MiningResult(husps, stats, total)


def project_search(
    t: Pattern,
    state: ProjectionState,
    arrays: list[UtilityArray],
    config: MinerConfig,
    total: Utility,
) -> MiningResult:
    """Mine every high-utility pattern strictly extending prefix ``t``."""
    search = _Search(arrays, config, total)
    search.run(t, state, search.candidates(state))
    search.stats.husp_count = len(search.husps)
    return MiningResult(search.husps, search.stats, total)


@dataclass
class VerifyReport:
    missing: dict[Pattern, Utility] = field(default_factory=dict)
    extra: dict[Pattern, Utility] = field(default_factory=dict)
    misvalued: dict[Pattern, tuple[Utility, Utility]] = field(default_factory=dict)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not (self.missing or self.extra or self.misvalued)

    def lines(self) -> list[str]:
        out = []
        for p, u in self.missing.items():
            out.append(f"missing\t{p}\t{u}")
        for p, u in self.extra.items():
            out.append(f"extra\t{p}\t{u}")
        for p, (got, want) in self.misvalued.items():
            out.append(f"misvalued\t{p}\treported={got}\texact={want}")
        return out


def verify(
    result: MiningResult,
    db: QSequenceDatabase,
    threshold: Threshold,
    *,
    cross_check: bool = True,
    limits=None,
) -> VerifyReport:
    """Recompute every reported utility; optionally diff against the oracle."""
    from . import oracle

    total = database_utility(db)
    report = VerifyReport()
    for p, u in result.husps.items():
        exact = matcher.pattern_utility(p, db)
        report.checked += 1
        if exact != u:
            report.misvalued[p] = (u, exact)
        elif not threshold.is_met(exact, total):
            report.extra[p] = u
    if cross_check:
        truth = oracle.oracle_mine(db, threshold, limits or oracle.OracleLimits())
        for p, u in truth.items():
            if p not in result.husps:
                report.missing[p] = u
        for p, u in result.husps.items():
            if p not in truth and p not in report.misvalued:
                report.extra[p] = u
    return report
