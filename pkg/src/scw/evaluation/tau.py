"""Kendall's tau as (C - D) / (C + D) over untied pairs.

A pair (i, j) is concordant when ``a`` and ``b`` move in the same strict
direction, discordant when they move in opposite strict directions. Pairs
tied in either vector are dropped from both counts. This is neither tau-a
(which divides by all pairs) nor tau-b (which uses a geometric tie
correction); it is the ratio that stays within [-1, 1] when ties are
simply excluded.
"""

from __future__ import annotations

from collections import Counter
from typing import Sequence


class TauUndefined(ValueError):
    """Every pair is tied in at least one vector, so C + D = 0."""


def _pairs(counts: Counter) -> int:
    return sum(t * (t - 1) // 2 for t in counts.values())


def _count_inversions(values: list) -> int:
    """Number of i < j with values[i] > values[j] (merge sort)."""
    n = len(values)
    if n < 2:
        return 0
    buf = list(values)
    tmp = [None] * n
    inversions = 0
    width = 1
    while width < n:
        for lo in range(0, n, 2 * width):
            mid = min(lo + width, n)
            hi = min(lo + 2 * width, n)
            i, j, k = lo, mid, lo
            while i < mid and j < hi:
                if buf[j] < buf[i]:
                    tmp[k] = buf[j]
                    inversions += mid - i
                    j += 1
                else:
                    tmp[k] = buf[i]
                    i += 1
                k += 1
            tmp[k:hi] = buf[i:mid] + buf[j:hi]
        buf, tmp = tmp, buf
        width *= 2
    return inversions


def concordance(a: Sequence[float], b: Sequence[float]) -> tuple[int, int]:
    """Return (C, D) for two equal-length score vectors."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    n = len(a)
    pairs = sorted(zip(a, b))
    total = n * (n - 1) // 2
    untied = total - _pairs(Counter(a)) - _pairs(Counter(b)) + _pairs(Counter(pairs))
    # Sorted by (a, b): an inversion in b can only occur where a strictly increases.
    discordant = _count_inversions([y for _, y in pairs])
    return untied - discordant, discordant


def kendalls_tau(a: Sequence[float], b: Sequence[float]) -> float:
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    if len(a) < 2:
        raise ValueError("need at least two paired scores")
    c, d = concordance(a, b)
    if c + d == 0:
        raise TauUndefined("all pairs are tied; tau is undefined")
    return (c - d) / (c + d)
