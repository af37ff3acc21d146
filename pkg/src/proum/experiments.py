"""Reusable experiment drivers: oracle sweeps, bound audits, pruning benchmarks.

Used by the acceptance tests and by the scripts in ``scripts/``.
"""
from __future__ import annotations

import random
import time
from collections import Counter
from dataclasses import dataclass, field

from . import matcher, oracle
from .io import GenParams, generate
from .miner import MinerConfig, mine
from .model import Pattern, QSequenceDatabase, Threshold, database_utility

SWEEP_THRESHOLDS = ("5%", "10%", "20%", "30%")

PRUNING_CONFIGS = {
    "full": dict(enable_puo=True, enable_puk=True),
    "no-puk": dict(enable_puo=True, enable_puk=False),
    "no-puo": dict(enable_puo=False, enable_puk=True),
    "none": dict(enable_puo=False, enable_puk=False),
}

# at most 12 sequences, 6 items, 4 elements/sequence, 3 items/element,
# quantities <= 5, profits <= 10
def sweep_database(seed: int) -> QSequenceDatabase:
    rng = random.Random(f"sweep-{seed}")
    params = GenParams(
        sequence_count=rng.randint(1, 12),
        item_universe_size=rng.randint(1, 6),
        mean_elements=rng.uniform(1.0, 3.0),
        mean_items=rng.uniform(1.0, 2.5),
        max_elements=4,
        max_items=3,
        max_quantity=5,
        profit_min=1,
        profit_max=10,
        seed=rng.randrange(2**32),
    )
    return generate(params)


@dataclass
class Mismatch:
    seed: int
    threshold: str
    config: str
    missing: list[Pattern]
    extra: list[Pattern]
    misvalued: list[Pattern]


def oracle_equivalence(seeds, thresholds=SWEEP_THRESHOLDS, configs=PRUNING_CONFIGS) -> tuple[int, list[Mismatch]]:
    """Run every config on every seed/threshold; return (runs, mismatches)."""
    runs = 0
    mismatches = []
    for seed in seeds:
        db = sweep_database(seed)
        utilities = oracle.all_utilities(db)
        total = database_utility(db)
        for text in thresholds:
            threshold = Threshold.parse(text)
            truth = {t: u for t, u in utilities.items() if threshold.is_met(u, total)}
            for name, flags in configs.items():
                got = mine(db, MinerConfig(threshold, **flags)).husps
                runs += 1
                if got != truth:
                    mismatches.append(Mismatch(
                        seed, text, name,
                        missing=[t for t in truth if t not in got],
                        extra=[t for t in got if t not in truth],
                        misvalued=[t for t in got if t in truth and got[t] != truth[t]],
                    ))
    return runs, mismatches


def lqs_parent(t: Pattern) -> Pattern:
    """Parent of ``t`` in the lexicographic tree (drop the last item)."""
    last = t.elements[-1][:-1]
    return Pattern(t.elements[:-1] + ((last,) if last else ()))


@dataclass
class BoundAudit:
    patterns: int = 0
    pairs: int = 0
    violations: Counter = field(default_factory=Counter)
    examples: dict[str, tuple] = field(default_factory=dict)

    def record(self, kind: str, example: tuple) -> None:
        self.violations[kind] += 1
        self.examples.setdefault(kind, example)

    def merge(self, other: BoundAudit) -> None:
        self.patterns += other.patterns
        self.pairs += other.pairs
        self.violations.update(other.violations)
        for k, v in other.examples.items():
            self.examples.setdefault(k, v)


BOUND_KINDS = (
    "u<=SEU",
    "SEU<=SWU",
    "SEU(child)<=SEU(parent)",
    "SWU(child)<=SWU(parent)",
    "u(descendant)<=SEU(prefix)",
)


def audit_bounds(db: QSequenceDatabase, tag=None) -> BoundAudit:
    """Check the utility bounds on every contained pattern of ``db``.

    Besides the pairwise relations this also checks the property SEU pruning
    needs: no pattern's utility exceeds the SEU of any of its prefixes.
    """
    audit = BoundAudit()
    values = {}
    for t in oracle.enumerate_all_patterns(db):
        values[t] = (matcher.pattern_utility(t, db), matcher.seu(t, db), matcher.swu(t, db))
    for t, (u, seu, swu) in values.items():
        audit.patterns += 1
        if u > seu:
            audit.record("u<=SEU", (tag, str(t), u, seu))
        if seu > swu:
            audit.record("SEU<=SWU", (tag, str(t), seu, swu))
        if t.length > 1:
            parent = lqs_parent(t)
            pu, pseu, pswu = values[parent]
            audit.pairs += 1
            if seu > pseu:
                audit.record("SEU(child)<=SEU(parent)", (tag, str(parent), pseu, str(t), seu))
            if swu > pswu:
                audit.record("SWU(child)<=SWU(parent)", (tag, str(parent), pswu, str(t), swu))
            p = parent
            while p.length:
                if u > values[p][1]:
                    audit.record("u(descendant)<=SEU(prefix)", (tag, str(p), values[p][1], str(t), u))
                p = lqs_parent(p)
    return audit


BENCH_PARAMS = GenParams(
    sequence_count=2000,
    item_universe_size=200,
    mean_elements=3.0,
    mean_items=1.5,
    max_quantity=5,
    profit_min=1,
    profit_max=10,
    seed=7,
    item_skew=1.0,
)
BENCH_THRESHOLDS = ("5%", "4%", "3%")


@dataclass
class BenchRow:
    threshold: str
    config: str
    nodes: int
    projections: int
    husps: int
    seconds: float
    patterns: dict = field(repr=False, default_factory=dict)


def pruning_benchmark(db: QSequenceDatabase, thresholds, configs=("full", "no-puk"), repeat: int = 1) -> list[BenchRow]:
    rows = []
    for text in thresholds:
        threshold = Threshold.parse(text)
        for name in configs:
            config = MinerConfig(threshold, **PRUNING_CONFIGS[name])
            times = []
            for _ in range(repeat):
                start = time.perf_counter()
                result = mine(db, config)
                times.append(time.perf_counter() - start)
            s = result.stats
            rows.append(BenchRow(text, name, s.nodes_visited, s.projections_built, len(result),
                                 sum(times) / len(times), result.husps))
    return rows
