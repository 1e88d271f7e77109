"""Occurrence counting over key-value arrays.

A key-value array lists, for one pattern in one sequence, every ending
position (1-based key) together with the number of occurrences ending
there.  Extending a pattern by one item only needs the prefix pattern's
array, the ending keys of the suffix pattern and the per-item position
lists of the sequence, so the raw sequence is never rescanned.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass
from itertools import accumulate
from typing import Mapping, Optional

from .model import GapConstraint, Pattern, PatternError, Sequence, join

__all__ = [
    "KeyValueArray", "ItemIndex", "Occurrence",
    "build_item_index", "negative_absent", "extend", "negpair", "support_of",
    "brute_force_support", "iter_occurrences",
]

Occurrence = tuple[int, ...]


@dataclass(frozen=True)
class KeyValueArray:
    keys: tuple[int, ...] = ()
    values: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.keys) != len(self.values):
            raise ValueError("keys and values differ in length")

    @classmethod
    def from_pairs(cls, pairs: Mapping[int, int] | list[tuple[int, int]]) -> "KeyValueArray":
        items = sorted(pairs.items() if isinstance(pairs, Mapping) else pairs)
        return cls(tuple(k for k, _ in items), tuple(v for _, v in items))

    @classmethod
    def unit(cls, positions) -> "KeyValueArray":
        positions = tuple(positions)
        return cls(positions, (1,) * len(positions))

    @property
    def support(self) -> int:
        return sum(self.values)

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.keys, self.values))

    def __len__(self) -> int:
        return len(self.keys)

    def __iter__(self):
        return zip(self.keys, self.values)


class ItemIndex:
    """Sorted 1-based position lists of every item in one sequence."""

    __slots__ = ("positions", "length")

    def __init__(self, positions: dict[int, tuple[int, ...]], length: int):
        self.positions = positions
        self.length = length

    def __getitem__(self, item: int) -> tuple[int, ...]:
        return self.positions.get(item, ())

    def array(self, item: int) -> KeyValueArray:
        """Key-value array of the length-1 pattern ``item``."""
        return KeyValueArray.unit(self[item])

    def __repr__(self) -> str:
        return f"ItemIndex({self.positions!r}, length={self.length})"


def build_item_index(s: Sequence) -> ItemIndex:
    lists: dict[int, list[int]] = {}
    for j, item in enumerate(s.items, start=1):
        lists.setdefault(item, []).append(j)
    return ItemIndex({k: tuple(v) for k, v in lists.items()}, len(s.items))


def negative_absent(index: ItemIndex, e: int, x: int, y: int) -> bool:
    """True iff item ``e`` occurs at no position strictly between ``x`` and ``y``."""
    pos = index[e]
    i = bisect_right(pos, x)
    return i == len(pos) or pos[i] >= y


def extend(a1: KeyValueArray, a2_keys, index: ItemIndex, gap: GapConstraint,
           negative: Optional[int] = None) -> KeyValueArray:
    """Key-value array of a one-item extension.

    For every key ``c`` of the suffix array, sums the values of prefix
    entries ``x`` with ``min_gap <= c - x - 1 <= max_gap`` and, when
    ``negative`` is set, no occurrence of that item strictly inside
    ``(x, c)``.

    Both window bounds move monotonically over ``a1`` as ``c`` grows, and
    window sums come from prefix sums of ``a1``'s values, so the sweep is
    linear in ``len(a1) + len(a2_keys)`` plus one bisection per key for the
    negative item.
    """
    keys1 = a1.keys
    n1 = len(keys1)
    if not n1 or not a2_keys:
        return KeyValueArray()
    csum = (0, *accumulate(a1.values))
    lo_off = gap.max_gap + 1
    hi_off = gap.min_gap + 1
    neg_pos = index[negative] if negative is not None else ()
    lo = hi = 0
    out_k: list[int] = []
    out_v: list[int] = []
    for c in a2_keys:
        # window over keys1 is [c - max_gap - 1, c - min_gap - 1]
        low_key = c - lo_off
        while lo < n1 and keys1[lo] < low_key:
            lo += 1
        high_key = c - hi_off
        while hi < n1 and keys1[hi] <= high_key:
            hi += 1
        if hi <= lo:
            continue
        start = lo
        if neg_pos:
            # x must not precede the last forbidden item before c
            t = bisect_left(neg_pos, c)
            if t:
                start = max(lo, bisect_left(keys1, neg_pos[t - 1], lo, hi))
        v = csum[hi] - csum[start]
        if v:
            out_k.append(c)
            out_v.append(v)
    return KeyValueArray(tuple(out_k), tuple(out_v))


def negpair(p: Pattern, q: Pattern, a1: KeyValueArray, a2: KeyValueArray,
            index: ItemIndex, gap: GapConstraint) -> tuple[Pattern, KeyValueArray]:
    """Join ``p`` and ``q`` and derive the joined pattern's key-value array.

    Only the keys of ``a2`` are consulted.
    """
    t = join(p, q)
    if t is None:
        raise PatternError("suffix of p differs from prefix of q")
    return t, extend(a1, a2.keys, index, gap, t.last_negative)


def support_of(a: KeyValueArray) -> int:
    return sum(a.values)


# --- oracle -----------------------------------------------------------------

def iter_occurrences(p: Pattern, items, gap: GapConstraint):
    """Yield every occurrence of ``p`` in ``items`` as a 1-based position tuple.

    Walks the gap windows directly over the raw item list; shares no code
    with the key-value machinery above.
    """
    l = len(items)
    m = len(p)
    pos = p.positives
    neg = p.negatives
    chosen = [0] * m

    def rec(j: int):
        if j == m:
            yield tuple(i + 1 for i in chosen)
            return
        prev = chosen[j - 1]
        for i in range(prev + gap.min_gap + 1, min(prev + gap.max_gap + 1, l - 1) + 1):
            if items[i] != pos[j]:
                continue
            e = neg[j - 1]
            if e is not None and e in items[prev + 1:i]:
                continue
            chosen[j] = i
            yield from rec(j + 1)

    for i0 in range(l):
        if items[i0] == pos[0]:
            chosen[0] = i0
            yield from rec(1)


def brute_force_support(p: Pattern, s: Sequence | tuple, gap: GapConstraint) -> tuple[int, list[Occurrence]]:
    items = s.items if isinstance(s, Sequence) else tuple(s)
    occ = list(iter_occurrences(p, items, gap))
    return len(occ), occ
