"""Exact small-argument evaluation: the square-index recurrence and the
infinite-product expansion.  These are the oracles the series engine is
measured against, and they serve all arguments below the engine's floor.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass


@dataclass(frozen=True)
class OverpartitionTable:
    """values[n] = number of overpartitions of n, for n = 0..n_max."""

    values: tuple[int, ...]


def recursion_table(n_max: int) -> OverpartitionTable:
    """Table of counts from the alternating sum over square offsets:
    value(n) = 2 * sum_{j >= 1} (-1)^{j+1} value(n - j^2), value(0) = 1.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    values = [0] * (n_max + 1)
    values[0] = 1
    for n in range(1, n_max + 1):
        acc = 0
        j = 1
        sq = 1
        while sq <= n:
            if j & 1:
                acc += values[n - sq]
            else:
                acc -= values[n - sq]
            j += 1
            sq = j * j
        values[n] = 2 * acc
    return OverpartitionTable(tuple(values))


def product_expansion_table(n_max: int) -> OverpartitionTable:
    """Same table from the generating product prod (1-q^{2j})/(1-q^j)^2,
    expanded with exact integer series arithmetic.  Structurally unrelated
    to recursion_table, so a bug in one cannot hide in the other.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    c = [0] * (n_max + 1)
    c[0] = 1
    for j in range(1, n_max + 1):
        # multiply by 1/(1-q^j) twice: running prefix sums with stride j
        for _ in range(2):
            for i in range(j, n_max + 1):
                c[i] += c[i - j]
        # multiply by (1 - q^{2j})
        if 2 * j <= n_max:
            for i in range(n_max, 2 * j - 1, -1):
                c[i] -= c[i - 2 * j]
    return OverpartitionTable(tuple(c))


def theta_coefficients(n_max: int) -> list[int]:
    """Coefficients of the reciprocal series: 1 at 0, 2*(-1)^j at j^2,
    zero elsewhere.  Convolving them with an overpartition table gives
    [1, 0, 0, ...]."""
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    b = [0] * (n_max + 1)
    b[0] = 1
    j = 1
    while j * j <= n_max:
        b[j * j] = 2 * (-1 if j & 1 else 1)
        j += 1
    return b


# process-wide cache used by the series engine's small-argument fallback
# and by the congruence hunter; grown monotonically under a lock
_cache_lock = threading.Lock()
_cached: OverpartitionTable = OverpartitionTable((1,))


def cached_value(n: int) -> int:
    """value(n) from a shared table that grows on demand."""
    global _cached
    table = _cached
    if n >= len(table.values):
        with _cache_lock:
            table = _cached
            if n >= len(table.values):
                table = recursion_table(max(n, 2 * len(table.values), 2048))
                _cached = table
    return table.values[n]
