"""Tables of Omega(n), the number of prime factors counted with multiplicity.

The table is built by a segmented sieve: every base prime power q = p^j
contributes +1 to each of its multiples inside the segment, which credits
each n with exactly the multiplicity of p. A parallel cofactor array tracks
the part of n not yet factored; whatever remains above 1 after all base
primes is a single prime larger than sqrt(limit) and contributes one more
factor. One byte per value keeps a 10^9-entry table around 1 GB.

Conventions: values[0] = values[1] = 0 (empty product).
"""

from __future__ import annotations

import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import isqrt
from pathlib import Path

import numpy as np

from ._primes import primes_up_to

MAGIC = b"OMGA"
FORMAT_VERSION = 1
DEFAULT_SEGMENT_SIZE = 1 << 22


class CacheFormatError(Exception):
    """Table file does not carry the expected magic/version header."""


class CacheCorruptionError(Exception):
    """Table file payload does not match its declared length."""


class TableBoundError(ValueError):
    """A query asked for values beyond the table limit."""


@dataclass(frozen=True)
class OmegaTable:
    """Immutable array of Omega(n) for 0 <= n <= limit, one uint8 per value."""

    limit: int
    values: np.ndarray

    def __post_init__(self):
        if self.values.dtype != np.uint8 or self.values.shape != (self.limit + 1,):
            raise ValueError("values must be a uint8 array of length limit + 1")


def _segment_omega(
    lo: int, hi: int, base_primes: np.ndarray, distinct: bool = False
) -> np.ndarray:
    """Factor counts for the half-open range [lo, hi).

    Each prime power credits its multiples with +1 (multiplicity counting);
    with distinct=True only the first power of each prime counts. Positions
    0 and 1 (present only in the first segment) come out as garbage/zero
    and are fixed up by the caller.
    """
    omega = np.zeros(hi - lo, dtype=np.uint8)
    cofactor = np.arange(lo, hi, dtype=np.int64)
    for p in base_primes:
        p = int(p)
        q = p
        while q < hi:
            start = ((lo + q - 1) // q) * q
            if start >= hi:
                break
            if q == p or not distinct:
                omega[start - lo :: q] += 1
            cofactor[start - lo :: q] //= p
            q *= p
    # survivors are a single prime factor > sqrt(limit)
    omega[cofactor > 1] += 1
    return omega


def build_omega_table(
    limit: int,
    segment_size: int = DEFAULT_SEGMENT_SIZE,
    workers: int = 1,
    distinct: bool = False,
) -> OmegaTable:
    """Build the Omega table for 0..limit by segmented sieving.

    Parameters
    ----------
    limit : int
        Inclusive upper bound, >= 2.
    segment_size : int
        Numbers processed per segment; affects memory and scheduling only,
        never the result.
    workers : int
        Segments are farmed out to this many processes when > 1. The
        assembled table is identical for any worker count.
    distinct : bool
        Count distinct prime factors instead of multiplicity. The result
        uses the same type and cache format; it exists for cross-checking
        the distinct-factor asymptotics and is not what the censuses use.

    Raises
    ------
    MemoryError
        If the table cannot be allocated; no partial table is returned.
    """
    if limit < 2:
        raise ValueError(f"need limit >= 2, got {limit}")
    if segment_size < 2:
        raise ValueError(f"need segment_size >= 2, got {segment_size}")
    if workers < 1:
        raise ValueError(f"need workers >= 1, got {workers}")

    base_primes = primes_up_to(isqrt(limit))
    values = np.zeros(limit + 1, dtype=np.uint8)
    bounds = list(range(0, limit + 1, segment_size))
    spans = [(lo, min(lo + segment_size, limit + 1)) for lo in bounds]

    if workers == 1 or len(spans) == 1:
        for lo, hi in spans:
            values[lo:hi] = _segment_omega(lo, hi, base_primes, distinct)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_segment_omega, lo, hi, base_primes, distinct)
                for lo, hi in spans
            ]
            for (lo, hi), fut in zip(spans, futures):
                values[lo:hi] = fut.result()

    values[0] = 0
    values[1] = 0
    values.flags.writeable = False
    return OmegaTable(limit=limit, values=values)


def count_k_almost(table: OmegaTable, x: int, k: int, parity: str = "all") -> int:
    """Count n in [2, x] with Omega(n) = k, optionally restricted to odd n."""
    if x < 2:
        raise ValueError(f"need x >= 2, got {x}")
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    if x > table.limit:
        raise TableBoundError(f"x = {x} exceeds table limit {table.limit}")
    if parity == "all":
        window = table.values[2 : x + 1]
    elif parity == "odd":
        window = table.values[3 : x + 1 : 2]
    else:
        raise ValueError(f"parity must be 'all' or 'odd', got {parity!r}")
    return int(np.count_nonzero(window == k))


def k_histogram(table: OmegaTable, x: int, parity: str = "all") -> np.ndarray:
    """Counts of n in [2, x] per factor-count class; index k holds the k-class."""
    if x < 2:
        raise ValueError(f"need x >= 2, got {x}")
    if x > table.limit:
        raise TableBoundError(f"x = {x} exceeds table limit {table.limit}")
    if parity == "all":
        window = table.values[2 : x + 1]
    elif parity == "odd":
        window = table.values[3 : x + 1 : 2]
    else:
        raise ValueError(f"parity must be 'all' or 'odd', got {parity!r}")
    return np.bincount(window)


def save_table(table: OmegaTable, path: str | Path) -> None:
    """Write the table in the binary cache format (magic, version, limit, bytes)."""
    path = Path(path)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(MAGIC)
        fh.write(bytes([FORMAT_VERSION]))
        fh.write(struct.pack("<Q", table.limit))
        fh.write(table.values.tobytes())
    tmp.replace(path)


def load_table(path: str | Path) -> OmegaTable:
    """Read a table written by save_table; round-trips byte-for-byte."""
    path = Path(path)
    with open(path, "rb") as fh:
        header = fh.read(13)
        if len(header) < 13 or header[:4] != MAGIC:
            raise CacheFormatError(f"{path}: not an omega table (bad magic)")
        if header[4] != FORMAT_VERSION:
            raise CacheFormatError(
                f"{path}: unsupported format version {header[4]}"
            )
        (limit,) = struct.unpack("<Q", header[5:13])
        payload = fh.read()
    if len(payload) != limit + 1:
        raise CacheCorruptionError(
            f"{path}: declared limit {limit} needs {limit + 1} bytes, found {len(payload)}"
        )
    values = np.frombuffer(payload, dtype=np.uint8)
    values.flags.writeable = False
    return OmegaTable(limit=int(limit), values=values)
