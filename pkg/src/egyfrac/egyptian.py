"""Counting solutions of a/n = 1/x + 1/y by three independent routes.

The number of ordered positive solution pairs is computed by

* direct enumeration over the exact integer window n/a < x <= 2n/a,
* counting divisors u of n^2 with u = -n (mod a) (valid for gcd(n,a)=1;
  the substitution u = ax - n, v = ay - n turns the equation into
  uv = n^2 with u = v = -n mod a),
* the orthogonality average over all Dirichlet characters mod a, kept
  in exact root-of-unity arithmetic and checked to collapse to a
  nonnegative integer.

The general count reduces gcd(n,a) > 1 to the coprime case via
count(n; a) = count(n/g; a/g) with g = gcd(n, a).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .arith import FactoredInteger, SpfTable, factorize, trial_factorize
from .characters import (
    HIGHER_ORDER,
    DirichletCharacter,
    RootSum,
    character_group,
)
from .errors import ConsistencyError

DEFAULT_BRUTEFORCE_BUDGET = 10**7
# switch the enumeration window to numpy above this many candidates
_VECTOR_THRESHOLD = 64


@dataclass(frozen=True)
class SolutionPair:
    """One ordered solution (x, y): a*x*y == n*(x+y) exactly."""

    x: int
    y: int


def _factored(n: int, table: SpfTable | None) -> FactoredInteger:
    if table is not None and n <= table.limit:
        return factorize(n, table)
    return trial_factorize(n)


def _check_inputs(n: int, a: int) -> None:
    if n < 1 or a < 1:
        raise ValueError(f"need n >= 1 and a >= 1, got n={n}, a={a}")


def r_bruteforce(n: int, a: int, *, budget: int = DEFAULT_BRUTEFORCE_BUDGET) -> int:
    """Count ordered solutions by scanning x over n/a < x <= 2n/a.

    For each x in the window, y = n*x/(a*x - n) is a solution iff
    (a*x - n) divides n*x; the window forces y >= x, so each hit counts
    twice unless y == x.  Integer arithmetic only.
    """
    _check_inputs(n, a)
    if n > budget:
        raise ValueError(
            f"n={n} exceeds enumeration budget {budget}; "
            "use the divisor or character method"
        )
    lo = n // a + 1
    hi = 2 * n // a
    # the vector path needs n*x in int64; n*hi < 2^63 holds for the
    # default budget, but a raised budget can demand python integers
    if hi - lo + 1 >= _VECTOR_THRESHOLD and n * hi < 2**63:
        x = np.arange(lo, hi + 1, dtype=np.int64)
        u = a * x - n
        hit = (n * x) % u == 0
        y = np.zeros_like(x)
        y[hit] = (n * x[hit]) // u[hit]
        return int(2 * np.count_nonzero(hit) - np.count_nonzero(y[hit] == x[hit]))
    count = 0
    for x in range(lo, hi + 1):
        u = a * x - n
        if (n * x) % u == 0:
            count += 2 if n * x // u > x else 1
    return count


def solution_pairs(n: int, a: int, *, budget: int = DEFAULT_BRUTEFORCE_BUDGET) -> list[SolutionPair]:
    """All ordered solutions, sorted by x (mirrored pairs included)."""
    _check_inputs(n, a)
    if n > budget:
        raise ValueError(f"n={n} exceeds enumeration budget {budget}")
    half = []
    for x in range(n // a + 1, 2 * n // a + 1):
        u = a * x - n
        if (n * x) % u == 0:
            half.append(SolutionPair(x, n * x // u))
    mirrored = [SolutionPair(s.y, s.x) for s in reversed(half) if s.y != s.x]
    return half + mirrored


def _divisor_residue_counts(factors: tuple[tuple[int, int], ...], a: int) -> dict[int, int]:
    """How many divisors of n^2 fall in each residue class mod a.

    Never materializes the divisors: one multiplicative pass over the
    factorization, tracking counts per class.
    """
    counts = {1 % a: 1}
    for p, k in factors:
        rho = p % a
        new: dict[int, int] = {}
        t = 1 % a
        for _ in range(2 * k + 1):
            for r, c in counts.items():
                key = r * t % a
                new[key] = new.get(key, 0) + c
            t = t * rho % a
        counts = new
    return counts


def r_divisor_method(n: int, a: int, *, table: SpfTable | None = None) -> int:
    """Count divisors u of n^2 with u = -n (mod a); needs gcd(n, a) = 1."""
    _check_inputs(n, a)
    if gcd(n, a) != 1:
        raise ValueError(
            f"divisor method needs gcd(n, a) = 1, got gcd({n}, {a}) = {gcd(n, a)}; "
            "use r_general"
        )
    fi = _factored(n, table)
    return _divisor_residue_counts(fi.factors, a).get((-n) % a, 0)


def r_character_formula(n: int, a: int, *, table: SpfTable | None = None) -> int:
    """Recover the count from the full character sum mod a.

    Averages conj(chi)(-n) * sum_{u | n^2} chi(u) over all phi(a)
    characters in exact root-of-unity arithmetic.  The total must be a
    nonnegative integer divisible by phi(a); anything else raises
    ConsistencyError rather than being rounded.
    """
    _check_inputs(n, a)
    if gcd(n, a) != 1:
        raise ValueError(f"character formula needs gcd(n, a) = 1, got n={n}, a={a}")
    fi = _factored(n, table)
    counts = _divisor_residue_counts(fi.factors, a)
    group = character_group(a)
    total = RootSum.zero()
    for chi in group.characters():
        inner = RootSum.zero()
        for r, c in counts.items():
            inner.add_root(chi(r), c)
        total = total + inner * RootSum.from_root(chi(-n).conjugate())
    value = total.as_integer()
    if value < 0 or value % group.phi:
        raise ConsistencyError(
            f"character sum for (n={n}, a={a}) is {value}, "
            f"not a nonnegative multiple of phi({a}) = {group.phi}"
        )
    return value // group.phi


def r_general(n: int, a: int, *, table: SpfTable | None = None) -> int:
    """The count for arbitrary n, a >= 1: reduce by gcd and count divisors."""
    _check_inputs(n, a)
    g = gcd(n, a)
    return r_divisor_method(n // g, a // g, table=table)


def omega_chi(chi: DirichletCharacter, fi: FactoredInteger) -> int:
    """Number of prime-power divisors p^k of n (k >= 1) with chi(p^k) = 1.

    Defined for real-valued (principal or quadratic) characters: a prime
    with chi(p) = 1 contributes its full multiplicity, chi(p) = -1
    contributes the even exponents only, chi(p) = 0 contributes nothing.
    """
    if chi.kind == HIGHER_ORDER:
        raise ValueError(f"{chi.label} is not principal or quadratic")
    signs = chi.sign_table()
    total = 0
    for p, k in fi.factors:
        s = signs[p % chi.modulus]
        if s == 1:
            total += k
        elif s == -1:
            total += k // 2
    return total


def g_chi(chi: DirichletCharacter, fi: FactoredInteger) -> int:
    """sum of chi(u) over divisors u of n^2, for real-valued chi.

    Multiplicative: the factor at p^k || n is the geometric sum
    1 + chi(p) + ... + chi(p)^(2k), i.e. 2k+1 when chi(p) = 1 and 1 when
    chi(p) is -1 or 0.  Always a positive integer.
    """
    if chi.kind == HIGHER_ORDER:
        raise ValueError(f"{chi.label} is not principal or quadratic")
    signs = chi.sign_table()
    out = 1
    for p, k in fi.factors:
        if signs[p % chi.modulus] == 1:
            out *= 2 * k + 1
    return out


def quadratic_main_numerator(n: int, a: int, *, table: SpfTable | None = None) -> tuple[int, int]:
    """(numerator, phi) of the real-character average at the reduced pair.

    The average runs over all chi mod a/(n,a) with chi^2 principal,
    evaluated at n/(n,a); the numerator is the exact integer
    sum_chi chi(-n') * g_chi(n').
    """
    _check_inputs(n, a)
    g = gcd(n, a)
    n1, a1 = n // g, a // g
    group = character_group(a1)
    fi = _factored(n1, table)
    num = 0
    for chi in group.real_characters():
        sign = chi((-n1) % a1).as_int()  # real values: conjugation is identity
        num += sign * g_chi(chi, fi)
    return num, group.phi


def r_quadratic_main(n: int, a: int, *, table: SpfTable | None = None) -> Fraction:
    """The real-character main term r(n; a), as an exact rational.

    Equals the full count exactly whenever every character mod
    a/(n,a) satisfies chi^2 = chi0 (e.g. any a dividing 24).
    """
    num, phi = quadratic_main_numerator(n, a, table=table)
    return Fraction(num, phi)
