"""The differential and invariant checks run over the corpus."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .bigon import minimal_position
from .corpus import CorpusEntry
from .criteria import check_inter_bounds
from .regions import Complex
from .segments import labels_from_pushoff, side_labels
from .twist import construct_twisted_overlay, fast_path, formula_intersection, oracle_intersection

EXPONENTS = (1, -1, 2, -2, 3, -3)


def sidedness_mismatches(inst) -> list[str]:
    """Segments where the E/F labels and the sign-product sidedness disagree.

    A segment is one-sided exactly when both of its ends carry the same label.
    The labels are also recomputed from the pushoff side and must match.
    """
    table = side_labels(inst)
    pushed = labels_from_pushoff(table)
    out = []
    for s in table.segments:
        if (s.labels[0] == s.labels[1]) != s.one_sided:
            out.append(f"segment {s.edge}: labels {''.join(s.labels)} but {s.sidedness}")
        if pushed[s.edge] != s.labels:
            out.append(f"segment {s.edge}: pushoff gives {''.join(pushed[s.edge])}, walk gives {''.join(s.labels)}")
    return out


@dataclass
class EntryResult:
    name: str
    checks: int = 0
    violations: list[str] = field(default_factory=list)

    def fail(self, message: str) -> None:
        self.violations.append(message)


def check_entry(entry: CorpusEntry, exponents=EXPONENTS) -> EntryResult:
    inst = entry.instance
    res = EntryResult(entry.name)
    if inst.m == 0:
        return res
    gamma = entry.gamma
    for v in gamma.violations():
        res.fail(v)
    if sum(gamma.ks) % 2:
        res.fail(f"odd number of one-sided segments: {gamma.ks}")
    for v in sidedness_mismatches(inst):
        res.fail(v)
    res.checks += 2
    for n in exponents:
        value = oracle_intersection(inst, n)
        expected = formula_intersection(inst.m, n, gamma.ks)
        if value != expected:
            res.fail(f"n={n}: oracle {value} != formula {expected}")
        report = check_inter_bounds(inst, n, entry.name, value=value)
        if not report.ok:
            res.fail(report.summary())
        fp = fast_path(inst, n)
        if not fp.ok:
            res.fail(f"n={n}: fast path {fp}")
        res.checks += 3
    return res


def check_corpus(entries, exponents=EXPONENTS, workers: int = 1) -> list[EntryResult]:
    """Run :func:`check_entry` on every entry; results come back in input order."""
    entries = list(entries)
    if workers <= 1:
        return [check_entry(e, exponents) for e in entries]
    with ProcessPoolExecutor(workers) as pool:
        return list(pool.map(check_entry, entries, [exponents] * len(entries), chunksize=8))


def confluence_trial(inst, n: int, seed: int) -> tuple[int, int]:
    """Crossing counts after canonical and after seeded random bigon removal on the twisted pair."""
    twisted: Complex = construct_twisted_overlay(inst, n).complex
    canonical = minimal_position(twisted)[1]
    shuffled = minimal_position(twisted, random.Random(seed))[1]
    return canonical, shuffled
