"""Brute-force ground truth: enumerate every contained pattern, no bounds.

Two enumerators that share no code path:

* :func:`enumerate_all_patterns` grows patterns by unpruned I-/S-concatenation,
  keeping a child whenever some sequence contains it (checked with
  :func:`proum.matcher.contains`).
* :func:`enumerate_by_subsequences` lists, per sequence, every choice of
  increasing elements with a non-empty item subset of each, then dedups.

Utilities always come from :func:`proum.matcher.pattern_utility`.
"""
from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass
from itertools import combinations

from . import matcher
from .model import Pattern, QSequenceDatabase, Threshold, Utility, database_utility


class OracleLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleLimits:
    max_pattern_length: int = 16
    max_patterns: int = 100_000


def enumerate_all_patterns(db: QSequenceDatabase, limits: OracleLimits = OracleLimits()) -> Iterator[Pattern]:
    items = db.items()
    count = 0
    # (pattern, indices of sequences containing it)
    stack = [(Pattern(), list(range(len(db.sequences))))]
    while stack:
        t, where = stack.pop()
        children = []
        if not t.is_empty():
            for i in items:
                if i > t.last_item:
                    children.append(Pattern(t.elements[:-1] + (t.elements[-1] + (i,),)))
        for i in items:
            children.append(Pattern(t.elements + ((i,),)))
        grown = []
        for child in children:
            hits = [k for k in where if matcher.contains(child, db.sequences[k])]
            if not hits:
                continue
            if child.length > limits.max_pattern_length:
                raise OracleLimitExceeded(f"contained pattern {child} longer than {limits.max_pattern_length}")
            count += 1
            if count > limits.max_patterns:
                raise OracleLimitExceeded(f"more than {limits.max_patterns} contained patterns")
            yield child
            grown.append((child, hits))
        stack.extend(reversed(grown))


def enumerate_by_subsequences(db: QSequenceDatabase, limits: OracleLimits = OracleLimits()) -> set[Pattern]:
    found: set[Pattern] = set()
    for s in db.sequences:
        if len(s) > limits.max_pattern_length:
            raise OracleLimitExceeded(f"sequence {s.sid} longer than {limits.max_pattern_length}")
        options = []
        for v in s.elements:
            items = v.items
            options.append([c for r in range(1, len(items) + 1) for c in combinations(items, r)])
        for r in range(1, len(options) + 1):
            for chosen in combinations(range(len(options)), r):
                partial = [()]
                for e in chosen:
                    partial = [p + (c,) for p in partial for c in options[e]]
                for elements in partial:
                    found.add(Pattern(elements))
                if len(found) > limits.max_patterns:
                    raise OracleLimitExceeded(f"more than {limits.max_patterns} contained patterns")
    return found


def all_utilities(db: QSequenceDatabase, limits: OracleLimits = OracleLimits()) -> dict[Pattern, Utility]:
    return {t: matcher.pattern_utility(t, db) for t in enumerate_all_patterns(db, limits)}


def oracle_mine(
    db: QSequenceDatabase,
    threshold: Threshold | None,
    limits: OracleLimits = OracleLimits(),
) -> dict[Pattern, Utility]:
    """Every contained pattern with u(t) >= threshold * u(D); ``None`` keeps all."""
    utilities = all_utilities(db, limits)
    if threshold is None:
        return utilities
    total = database_utility(db)
    return {t: u for t, u in utilities.items() if threshold.is_met(u, total)}
