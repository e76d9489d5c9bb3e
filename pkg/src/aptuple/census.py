"""Exhaustive tuple censuses over a sieved factor-count table.

Counts the n <= x (odd by default) for which every n + h_i carries exactly
(or at most) its demanded number of prime factors. The scan walks the
table in contiguous blocks, comparing one vectorized slice per tuple
position; block partials combine by integer addition, so any scan order or
worker count yields the same total.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .patterns import Pattern, Requirements
from .sieve import OmegaTable, TableBoundError

SCAN_BLOCK = 1 << 22


@dataclass(frozen=True)
class CensusQuery:
    """What to count: pattern, per-position demands, bound, and conventions."""

    pattern: Pattern
    requirements: Requirements
    x: int
    parity: str = "odd"
    mode: str = "exact"

    def __post_init__(self):
        if len(self.pattern) != len(self.requirements):
            raise ValueError(
                f"pattern length {len(self.pattern)} != requirements length {len(self.requirements)}"
            )
        if self.parity not in ("odd", "all"):
            raise ValueError(f"parity must be 'odd' or 'all', got {self.parity!r}")
        if self.mode not in ("exact", "atmost"):
            raise ValueError(f"mode must be 'exact' or 'atmost', got {self.mode!r}")
        if self.x < 1:
            raise ValueError(f"need x >= 1, got {self.x}")


@dataclass(frozen=True)
class CensusResult:
    query: CensusQuery
    count: int
    elapsed: float = field(compare=False, default=0.0)


def _count_block(values: np.ndarray, query: CensusQuery, lo: int, hi: int) -> int:
    """Qualifying n in [lo, hi), honoring parity via a stride-2 start."""
    if query.parity == "odd":
        start = lo if lo % 2 == 1 else lo + 1
        step = 2
    else:
        start = lo
        step = 1
    if start >= hi:
        return 0
    mask = None
    exact = query.mode == "exact"
    for h, k in zip(query.pattern.offsets, query.requirements.demands):
        window = values[start + h : hi + h : step]
        if exact:
            cond = window == k
        else:
            # zero factor counts (only n = 1) are not almost primes
            cond = (window <= k) & (window > 0)
        mask = cond if mask is None else (mask & cond)
    return int(np.count_nonzero(mask))


def count_tuples(table: OmegaTable, query: CensusQuery, workers: int = 1) -> CensusResult:
    """Count n in [1, x] whose whole tuple satisfies the query demands.

    The table must cover x + h_max so every tuple element is evaluated;
    anything less raises rather than silently truncating the range.
    """
    needed = query.x + query.pattern.max_offset
    if needed > table.limit:
        raise TableBoundError(
            f"census needs table limit >= {needed}, have {table.limit}"
        )
    started = time.perf_counter()
    spans = [
        (lo, min(lo + SCAN_BLOCK, query.x + 1))
        for lo in range(1, query.x + 1, SCAN_BLOCK)
    ]
    if workers > 1 and len(spans) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = pool.map(
                lambda span: _count_block(table.values, query, *span), spans
            )
            total = sum(partials)
    else:
        total = sum(_count_block(table.values, query, lo, hi) for lo, hi in spans)
    return CensusResult(query=query, count=total, elapsed=time.perf_counter() - started)


def count_single(table: OmegaTable, k: int, x: int, parity: str = "odd") -> int:
    """Degenerate single-position census; k=1 odd-only counts the odd primes."""
    query = CensusQuery(
        pattern=Pattern((0,)),
        requirements=Requirements((k,)),
        x=x,
        parity=parity,
        mode="exact",
    )
    return count_tuples(table, query).count
