"""Shared fixtures and independent test oracles.

The oracle functions below deliberately avoid every production code
path: factorization is plain trial division, solution counts come from
the uv-substitution applied literally to an explicit divisor list.
Expected values frozen in the tests were computed with these oracles.
"""

from __future__ import annotations

import pytest

from egyfrac.arith import build_spf_table


@pytest.fixture(scope="session")
def table_5k():
    return build_spf_table(5000)


@pytest.fixture(scope="session")
def table_100k():
    return build_spf_table(100_000)


def oracle_factor(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization, independent of the package."""
    out = []
    p = 2
    while p * p <= n:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        if k:
            out.append((p, k))
        p += 1
    if n > 1:
        out.append((n, 1))
    return out


def oracle_divisors(m: int) -> list[int]:
    """All divisors of m by direct remainder scan (m modest)."""
    return [d for d in range(1, m + 1) if m % d == 0]


def oracle_divisors_of_square(n: int) -> list[int]:
    """Divisors of n^2 from the oracle factorization of n."""
    divs = [1]
    for p, k in oracle_factor(n):
        divs = [d * p**j for d in divs for j in range(2 * k + 1)]
    return divs


def uv_oracle_count(n: int, a: int) -> int:
    """Ordered solution count straight from the substitution
    u = ax - n, v = ay - n: pairs uv = n^2 with u = v = -n (mod a)."""
    target = (-n) % a
    count = 0
    for u in oracle_divisors_of_square(n):
        v = n * n // u
        if u % a == target and v % a == target:
            count += 1
    return count
