"""Level-wise mining of frequent positive and negative gap patterns.

Level 1 counts items, level 2 enumerates item pairs and, for each frequent
pair, every single-negative variant, and every later level joins frequent
patterns whose suffix and prefix agree.  Each frequent entry keeps one
key-value array per sequence so the next level never touches raw data.
"""
from __future__ import annotations

import logging
import multiprocessing
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from .matcher import ItemIndex, KeyValueArray, build_item_index, extend
from .model import (
    GapConstraint, Pattern, SequenceDatabase, SupportRecord, Threshold,
    is_frequent, join, ofs_total, pattern_sort_key,
)

__all__ = [
    "FrequentEntry", "FrequentLevel", "LevelStats", "MiningStats", "MiningConfig",
    "MiningResult", "mine_frequent_items", "nspg2", "nspgm", "mine",
    "baseline_candidate_counts", "DEFAULT_MAX_LEN",
]

log = logging.getLogger(__name__)

DEFAULT_MAX_LEN = 20
# bytes per retained key-value entry (two machine words)
_ENTRY_BYTES = 16

Observer = Callable[[Pattern, tuple[int, ...]], None]


@dataclass(frozen=True)
class FrequentEntry:
    pattern: Pattern
    arrays: tuple[KeyValueArray, ...]
    record: SupportRecord


@dataclass
class FrequentLevel:
    length: int
    entries: list[FrequentEntry] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def patterns(self) -> list[Pattern]:
        return [e.pattern for e in self.entries]

    @property
    def kv_entries(self) -> int:
        return sum(len(a) for e in self.entries for a in e.arrays)


@dataclass
class LevelStats:
    length: int
    candidates: int
    frequent: int
    seconds: float = 0.0
    kv_entries: int = 0


@dataclass
class MiningStats:
    levels: list[LevelStats] = field(default_factory=list)

    @property
    def total_candidates(self) -> int:
        return sum(s.candidates for s in self.levels)

    @property
    def peak_kv_bytes(self) -> int:
        # arrays of two adjacent levels are alive at once
        kv = [s.kv_entries for s in self.levels]
        pairs = [a + b for a, b in zip(kv, kv[1:])] or kv or [0]
        return max(pairs) * _ENTRY_BYTES


@dataclass(frozen=True)
class MiningConfig:
    rho: Threshold
    gap: GapConstraint
    max_len: Optional[int] = DEFAULT_MAX_LEN
    positives_only: bool = False


@dataclass
class MiningResult:
    config: MiningConfig
    db: SequenceDatabase
    levels: list[FrequentLevel]
    stats: MiningStats

    def entries(self):
        for level in self.levels:
            yield from level.entries

    def patterns(self) -> list[Pattern]:
        return [e.pattern for e in self.entries()]

    def __len__(self) -> int:
        return sum(len(level) for level in self.levels)


# --- candidate evaluation ---------------------------------------------------
#
# A task is (a1_slot, a2_slot, negative): slots index into the array tuples of
# the previous level (or the item arrays for level 2).  Workers see the level
# context through a module global inherited over fork.

_CTX: dict = {}


def _evaluate(task) -> tuple[KeyValueArray, ...]:
    sources, indexes, gap = _CTX["sources"], _CTX["indexes"], _CTX["gap"]
    i, j, neg = task
    a1s, a2s = sources[i], sources[j]
    return tuple(extend(a1s[k], a2s[k].keys, indexes[k], gap, neg) for k in range(len(indexes)))


def _evaluate_chunk(tasks):
    return [_evaluate(t) for t in tasks]


def _run_tasks(tasks: list, sources, indexes, gap: GapConstraint, workers: int) -> list:
    _CTX.update(sources=sources, indexes=indexes, gap=gap)
    try:
        if workers <= 1 or len(tasks) < 2 * workers:
            return [_evaluate(t) for t in tasks]
        size = -(-len(tasks) // (workers * 4))
        chunks = [tasks[i:i + size] for i in range(0, len(tasks), size)]
        ctx = multiprocessing.get_context("fork")
        with ProcessPoolExecutor(max_workers=workers, mp_context=ctx) as pool:
            out: list = []
            for part in pool.map(_evaluate_chunk, chunks):
                out.extend(part)
            return out
    finally:
        _CTX.clear()


def _entry(pattern: Pattern, arrays, ofs: int) -> FrequentEntry:
    sups = tuple(a.support for a in arrays)
    return FrequentEntry(pattern, tuple(arrays), SupportRecord(pattern, sups, ofs))


def _sorted_level(length: int, entries: list[FrequentEntry]) -> FrequentLevel:
    entries.sort(key=lambda e: pattern_sort_key(e.pattern))
    return FrequentLevel(length, entries)


# --- levels -----------------------------------------------------------------

def _indexes(db: SequenceDatabase) -> list[ItemIndex]:
    return [build_item_index(s) for s in db.sequences]


def mine_frequent_items(db: SequenceDatabase, rho: Threshold,
                        indexes: list[ItemIndex] | None = None,
                        observer: Observer | None = None) -> FrequentLevel:
    """Items whose total count reaches ``rho * L``."""
    L = db.total_length
    if L == 0:
        return FrequentLevel(1)
    indexes = _indexes(db) if indexes is None else indexes
    entries = []
    for item in range(len(db.alphabet)):
        arrays = tuple(ix.array(item) for ix in indexes)
        pattern = Pattern((item,))
        entry = _entry(pattern, arrays, L)
        if observer:
            observer(pattern, entry.record.per_sequence_sup)
        if is_frequent(entry.record.total_sup, L, rho):
            entries.append(entry)
    return _sorted_level(1, entries)


def nspg2(db: SequenceDatabase, rho: Threshold, gap: GapConstraint, f1: FrequentLevel, *,
          indexes: list[ItemIndex] | None = None, positives_only: bool = False,
          workers: int = 1, observer: Observer | None = None,
          stats: MiningStats | None = None) -> FrequentLevel:
    """Frequent length-2 patterns, positive and single-negative."""
    t0 = time.perf_counter()
    if not f1.entries:
        if stats is not None:
            stats.levels.append(LevelStats(2, 0, 0, time.perf_counter() - t0))
        return FrequentLevel(2)
    indexes = _indexes(db) if indexes is None else indexes
    ofs = ofs_total(db.total_length, gap.width, 2)
    sources = [e.arrays for e in f1.entries]
    items = [e.pattern.positives[0] for e in f1.entries]
    n = len(items)

    pos_tasks = [(i, j, None) for i in range(n) for j in range(n)]
    pos_arrays = _run_tasks(pos_tasks, sources, indexes, gap, workers)
    entries: list[FrequentEntry] = []
    neg_tasks = []
    for (i, j, _), arrays in zip(pos_tasks, pos_arrays):
        t = Pattern((items[i], items[j]), (None,))
        entry = _entry(t, arrays, ofs)
        if observer:
            observer(t, entry.record.per_sequence_sup)
        if is_frequent(entry.record.total_sup, ofs, rho):
            entries.append(entry)
            if not positives_only:
                neg_tasks.extend((i, j, e) for e in range(len(db.alphabet)))
    neg_arrays = _run_tasks(neg_tasks, sources, indexes, gap, workers)
    for (i, j, e), arrays in zip(neg_tasks, neg_arrays):
        t = Pattern((items[i], items[j]), (e,))
        entry = _entry(t, arrays, ofs)
        if observer:
            observer(t, entry.record.per_sequence_sup)
        if is_frequent(entry.record.total_sup, ofs, rho):
            entries.append(entry)
    level = _sorted_level(2, entries)
    if stats is not None:
        stats.levels.append(LevelStats(2, len(pos_tasks) + len(neg_tasks), len(level),
                                       time.perf_counter() - t0, level.kv_entries))
    return level


def nspgm(db: SequenceDatabase, rho: Threshold, gap: GapConstraint, fm: FrequentLevel, *,
          indexes: list[ItemIndex] | None = None, workers: int = 1,
          observer: Observer | None = None,
          stats: MiningStats | None = None) -> FrequentLevel:
    """Frequent patterns one item longer than those in ``fm``, via joins."""
    t0 = time.perf_counter()
    m = fm.length
    if m < 2:
        raise ValueError("join-based levels start from length 2")
    ofs = ofs_total(db.total_length, gap.width, m + 1)
    indexes = _indexes(db) if indexes is None else indexes

    # group q by its prefix so each p only meets compatible partners
    by_prefix: dict[tuple, list[int]] = {}
    for j, e in enumerate(fm.entries):
        q = e.pattern
        by_prefix.setdefault((q.positives[:-1], q.negatives[:-1]), []).append(j)
    tasks = []
    candidates = []
    for i, e in enumerate(fm.entries):
        p = e.pattern
        for j in by_prefix.get((p.positives[1:], p.negatives[1:]), ()):
            t = join(p, fm.entries[j].pattern)
            tasks.append((i, j, t.last_negative))
            candidates.append(t)

    results = _run_tasks(tasks, [e.arrays for e in fm.entries], indexes, gap, workers)
    entries = []
    for t, arrays in zip(candidates, results):
        entry = _entry(t, arrays, ofs)
        if observer:
            observer(t, entry.record.per_sequence_sup)
        if is_frequent(entry.record.total_sup, ofs, rho):
            entries.append(entry)
    level = _sorted_level(m + 1, entries)
    if stats is not None:
        stats.levels.append(LevelStats(m + 1, len(tasks), len(level),
                                       time.perf_counter() - t0, level.kv_entries))
    return level


def mine(db: SequenceDatabase, rho: Threshold, gap: GapConstraint,
         max_len: Optional[int] = DEFAULT_MAX_LEN, *, positives_only: bool = False,
         workers: int = 1, observer: Observer | None = None) -> MiningResult:
    """Mine every frequent pattern up to ``max_len`` items.

    ``observer`` is called with ``(pattern, per_sequence_supports)`` for every
    evaluated candidate, frequent or not, in deterministic order.
    """
    if max_len is not None and max_len < 1:
        raise ValueError("max_len must be >= 1")
    config = MiningConfig(rho, gap, max_len, positives_only)
    stats = MiningStats()
    indexes = _indexes(db)

    t0 = time.perf_counter()
    level = mine_frequent_items(db, rho, indexes, observer)
    stats.levels.append(LevelStats(1, len(db.alphabet) if db.total_length else 0, len(level),
                                   time.perf_counter() - t0, level.kv_entries))
    levels = []
    while level.entries:
        levels.append(level)
        log.info("level %d: %d frequent", level.length, len(level))
        if max_len is not None and level.length >= max_len:
            break
        if level.length == 1:
            level = nspg2(db, rho, gap, level, indexes=indexes, positives_only=positives_only,
                          workers=workers, observer=observer, stats=stats)
        else:
            level = nspgm(db, rho, gap, level, indexes=indexes, workers=workers,
                          observer=observer, stats=stats)
    return MiningResult(config, db, levels, stats)


def baseline_candidate_counts(f2_count: int, sigma: int, positive_f3: int, gaps_per_len3: int,
                              join_count: int | None = None) -> tuple[Optional[int], int, int]:
    """Length-3 candidate counts of the join strategy versus two baselines.

    Enumeration extends each of ``f2_count`` frequent patterns by every item,
    positive or with any negative.  The classic approach keeps each of the
    ``positive_f3`` positive candidates and adds one negative variant per
    assignment of an item to every gap, ``sigma ** gaps`` of them.
    """
    enumeration = f2_count * (sigma + sigma * sigma)
    classic = positive_f3 * (1 + sigma ** gaps_per_len3)
    return join_count, enumeration, classic
