"""Singular-series evaluation for tuple patterns.

The constant attached to a pattern H of length m is the Euler product

    S(H) = prod_p (1 - nu_p / p) * (1 - 1/p)^(-m),

where nu_p counts the distinct residues of the offsets mod p. For primes
beyond the largest offset every factor has nu_p = m and deviates from 1 by
O(m^2 / p^2), so the product is truncated at a prime bound with an explicit
tail estimate. For pairs {0, N} with N even the product collapses to the
closed form 2 * C2 * prod_{p | N, p odd} (p - 1)/(p - 2) around the
twin-prime constant C2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._primes import primes_up_to, distinct_prime_factors
from .patterns import Pattern, primorial, residues_mod_p

# Twin-prime constant prod_{p>2} (1 - 1/(p-1)^2), 17 digits.
TWIN_PRIME_C2 = 0.66016181584686957


@dataclass(frozen=True)
class SelbergResult:
    """Truncated singular-series value with tail accounting.

    value is exactly 0 when some factor vanishes (inadmissible pattern);
    prime_limit is the largest prime actually included; tail_bound is a
    conservative absolute bound on the truncation error.
    """

    value: float
    prime_limit: int
    tail_bound: float
    admissible: bool


def _tail_bound(value: float, m: int, prime_bound: int) -> float:
    # omitted factors are 1 + O(m^2/p^2); sum_{p>P} 1/p^2 < 1/(P log P)
    if value == 0.0:
        return 0.0
    if prime_bound < 2:
        return math.inf
    rel = math.expm1(m * m / (prime_bound * math.log(prime_bound)))
    return abs(value) * rel


def selberg_constant(pattern: Pattern, prime_limit: int = 10**6) -> SelbergResult:
    """Evaluate S(H) over all primes p <= prime_limit.

    Primes up to max(m, h_max) get their residue count computed directly;
    beyond that all offsets are distinct mod p and nu_p = m, which lets the
    remaining factors be evaluated in one vectorized sweep. Accumulation
    switches to log space for m >= 4, where factors drift far from 1.
    """
    m = len(pattern)
    if prime_limit < m:
        raise ValueError(f"prime_limit {prime_limit} must be >= pattern length {m}")

    primes = primes_up_to(prime_limit)
    included = int(primes[-1]) if len(primes) else 0
    if m == 1:
        # every factor is (1 - 1/p)(1 - 1/p)^(-1) = 1, no truncation error
        return SelbergResult(1.0, included, 0.0, admissible=True)
    direct_cutoff = max(m, pattern.max_offset)

    small_factors: list[float] = []
    split = int(np.searchsorted(primes, direct_cutoff, side="right"))
    for p in primes[:split]:
        p = int(p)
        _, nu = residues_mod_p(pattern, p)
        if nu == p:
            return SelbergResult(0.0, included, 0.0, admissible=False)
        small_factors.append((1.0 - nu / p) * (1.0 - 1.0 / p) ** (-m))

    generic = primes[split:].astype(np.float64)
    if m < 4:
        value = 1.0
        for f in small_factors:
            value *= f
        if len(generic):
            value *= float(np.prod((1.0 - m / generic) * (1.0 - 1.0 / generic) ** (-m)))
    else:
        log_total = math.fsum(math.log(f) for f in small_factors)
        if len(generic):
            log_total += float(np.sum(np.log1p(-m / generic) - m * np.log1p(-1.0 / generic)))
        value = math.exp(log_total)

    return SelbergResult(
        value=value,
        prime_limit=included,
        tail_bound=_tail_bound(value, m, prime_limit),
        admissible=True,
    )


def pair_constant_closed_form(n: int) -> float:
    """Closed-form S({0, N}) = 2 * C2 * prod_{p | N, p > 2} (p-1)/(p-2) for even N."""
    if n <= 0 or n % 2 != 0:
        raise ValueError(f"need a positive even separation, got {n}")
    value = 2.0 * TWIN_PRIME_C2
    for p in distinct_prime_factors(n):
        if p > 2:
            value *= (p - 1) / (p - 2)
    return value


def triple_constant_closed_form(prime_limit: int = 10**6) -> float:
    """S({0,2,6}) = 9/2 * prod_{p >= 5} (1 - (3p-1)/(p-1)^3), truncated."""
    primes = primes_up_to(prime_limit).astype(np.float64)
    primes = primes[primes >= 5]
    log_total = float(np.sum(np.log1p(-(3.0 * primes - 1.0) / (primes - 1.0) ** 3)))
    return 4.5 * math.exp(log_total)


def twin_prime_constant_truncated(prime_limit: int) -> float:
    """prod_{2 < p <= P} (1 - 1/(p-1)^2); converges to C2 from above like 1/(P log P)."""
    primes = primes_up_to(prime_limit).astype(np.float64)
    primes = primes[primes > 2]
    return float(np.exp(np.sum(np.log1p(-1.0 / (primes - 1.0) ** 2))))


def primorial_pattern_table(
    max_index: int, prime_limit: int = 10**6
) -> list[tuple[int, float]]:
    """Rows (N, S({0, N})) for primorial separations N = 2, 6, 30, ...

    The values grow without bound in the index: each new primorial turns
    one more factor into (1 - 1/p)^(-1) > 1 permanently.
    """
    rows = []
    for i in range(1, max_index + 1):
        n = primorial(i)
        rows.append((n, selberg_constant(Pattern((0, n)), prime_limit).value))
    return rows
