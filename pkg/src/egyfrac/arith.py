"""Sieve-based factorization and elementary multiplicative functions.

Everything here is exact integer arithmetic.  The smallest-prime-factor
table is the backbone of all per-n factorizations; range scans use the
segmented engine instead (see ``engine``), which never materializes a
full table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

# Scans cap n at 2**31 so n**2 fits in a signed 64-bit word.
MAX_N = 2**31
# Default memory budget for a dense spf table (int32 entries).
DEFAULT_SPF_BUDGET_BYTES = 2 * 10**9
# Default cap on d(n**2) when divisor lists are materialized.
DEFAULT_DIVISOR_CAP = 10**6


class SpfTable:
    """Smallest-prime-factor table for 2 <= i <= limit.

    Immutable after construction and safe to share across threads.
    ``spf[i]`` is the smallest prime factor of i (``spf[p] == p`` for
    primes).  Entries 0 and 1 are unused sentinels.
    """

    __slots__ = ("limit", "spf")

    def __init__(self, limit: int, spf: np.ndarray):
        self.limit = limit
        self.spf = spf

    def __getitem__(self, i: int) -> int:
        if not 2 <= i <= self.limit:
            raise ValueError(f"index {i} outside spf table range [2, {self.limit}]")
        return int(self.spf[i])

    def __repr__(self) -> str:
        return f"SpfTable(limit={self.limit})"


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer together with its full prime factorization.

    ``factors`` is a tuple of (prime, multiplicity) pairs with strictly
    increasing primes and multiplicities >= 1; the empty tuple encodes 1.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        prev = 1
        for p, k in self.factors:
            if p <= prev:
                raise ValueError(f"primes not strictly increasing in {self.factors}")
            if k < 1:
                raise ValueError(f"multiplicity {k} < 1 for prime {p}")
            prod *= p**k
            prev = p
        if prod != self.value:
            raise ValueError(f"factors {self.factors} do not multiply to {self.value}")


def build_spf_table(limit: int, *, max_bytes: int = DEFAULT_SPF_BUDGET_BYTES) -> SpfTable:
    """Build the smallest-prime-factor table up to ``limit`` (inclusive).

    Runs in O(limit log log limit) via a vectorized Eratosthenes pass.
    Raises ValueError for limit < 2 or when the table would exceed the
    byte budget (the message states the required size).
    """
    if limit < 2:
        raise ValueError(f"spf table needs limit >= 2, got {limit}")
    need = 4 * (limit + 1)
    if need > max_bytes:
        raise ValueError(
            f"spf table for limit={limit} needs {need} bytes "
            f"(budget {max_bytes}); raise max_bytes or use a smaller limit"
        )
    spf = np.zeros(limit + 1, dtype=np.int32)
    for p in range(2, int(limit**0.5) + 1):
        if spf[p] == 0:
            sl = spf[p * p :: p]
            sl[sl == 0] = p
    # remaining zeros at i >= 2 are primes
    rest = np.nonzero(spf[2:] == 0)[0] + 2
    spf[rest] = rest
    return SpfTable(limit, spf)


def factorize(n: int, table: SpfTable) -> FactoredInteger:
    """Factor ``n`` by repeated division by its smallest prime factor."""
    if not 1 <= n <= table.limit:
        raise ValueError(f"n={n} outside table range [1, {table.limit}]")
    if n == 1:
        return FactoredInteger(1, ())
    spf = table.spf
    factors = []
    m = n
    while m > 1:
        p = int(spf[m])
        k = 0
        while m % p == 0:
            m //= p
            k += 1
        factors.append((p, k))
    return FactoredInteger(n, tuple(factors))


def trial_factorize(n: int) -> FactoredInteger:
    """Factor ``n`` by trial division; no table needed.

    Intended for isolated values (CLI inputs, fallbacks), not scans.
    """
    if n < 1:
        raise ValueError(f"cannot factor n={n}")
    factors = []
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            k = 0
            while m % p == 0:
                m //= p
                k += 1
            factors.append((p, k))
        p += 1 if p == 2 else 2
    if m > 1:
        factors.append((m, 1))
    return FactoredInteger(n, tuple(factors))


def d_of_square(fi: FactoredInteger) -> int:
    """Number of divisors of value**2: product of (2k + 1) over p^k || n."""
    out = 1
    for _, k in fi.factors:
        out *= 2 * k + 1
    return out


def divisors_of_square(fi: FactoredInteger, *, cap: int = DEFAULT_DIVISOR_CAP) -> list[int]:
    """All divisors of value**2, unsorted, each exactly once.

    Raises ValueError when d(value**2) exceeds ``cap`` (the cap is named
    in the message); use d_of_square first when only the count matters.
    """
    count = d_of_square(fi)
    if count > cap:
        raise ValueError(
            f"d({fi.value}^2) = {count} exceeds divisor enumeration cap {cap}"
        )
    divs = [1]
    for p, k in fi.factors:
        powers = [p**j for j in range(1, 2 * k + 1)]
        divs += [d * q for d in divs for q in powers]
    return divs


def omega_small(fi: FactoredInteger) -> int:
    """omega(n): number of distinct prime factors."""
    return len(fi.factors)


def omega_big(fi: FactoredInteger) -> int:
    """Omega(n): number of prime factors counted with multiplicity."""
    return sum(k for _, k in fi.factors)


@lru_cache(maxsize=8)
def _prime_array(x: int) -> np.ndarray:
    if x < 2:
        return np.empty(0, dtype=np.int64)
    isp = np.ones(x + 1, dtype=bool)
    isp[:2] = False
    for p in range(2, int(x**0.5) + 1):
        if isp[p]:
            isp[p * p :: p] = False
    return np.nonzero(isp)[0].astype(np.int64)


def primes_up_to(x: int) -> np.ndarray:
    """Sorted array of all primes <= x."""
    return _prime_array(int(x))
