"""Euler-factor machinery behind the second-moment generating series.

The square of the solution count has a generating Dirichlet series whose
coefficients factor through a four-variable character sum F.  This
module computes F at prime powers by exact enumeration, checks the
coefficient identity between the direct and convolution forms, and
evaluates the truncated Euler product giving the leading coefficient of
the degree-8 mean-square polynomial.

Sign note: the closed form of the leading coefficient is implemented
with local factors (1 + 6/p + 1/p^2)(1 - 1/p)^6.  The superficially
plausible variant (1 - 6/p + 1/p^2) makes the p = 2 factor negative and
the whole product non-positive, which is impossible for the leading
coefficient of a sum of squares; ``minus_sign_p2_factor`` exhibits the
defect and every Euler-product report carries the note.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from .arith import FactoredInteger, primes_up_to
from .characters import DirichletCharacter, RootSum, character_group

SIGN_NOTE = (
    "local factors use (1 + 6/p + 1/p^2)(1 - 1/p)^6; the minus-sign variant "
    "(1 - 6/p + 1/p^2) gives a negative factor at p = 2 and a non-positive "
    "product, impossible for a mean of squares"
)


def _require_same_modulus(chi1: DirichletCharacter, chi2: DirichletCharacter) -> None:
    if chi1.modulus != chi2.modulus:
        raise ValueError(
            f"characters have different moduli: {chi1.modulus} and {chi2.modulus}"
        )


@lru_cache(maxsize=None)
def _F_prime_power_cached(modulus: int, exps1: tuple[int, ...], exps2: tuple[int, ...],
                          rho: int, k: int) -> tuple[tuple[tuple[int, int], int], ...]:
    group = character_group(modulus)
    chi1 = DirichletCharacter(group, exps1)
    chi2 = DirichletCharacter(group, exps2)
    v1 = chi1(rho)
    v2bar = chi2(rho).conjugate()
    cross_k = (chi1(rho).conjugate() * chi2(rho)) ** k
    out = RootSum.zero()
    # u = p^i decomposes uniquely as u1*u2^2 with u1 squarefree, and
    # u1*u2 = p^ceil(i/2); the lcm constraint becomes max of the ceilings.
    for i in range(2 * k + 1):
        for j in range(2 * k + 1):
            if max((i + 1) // 2, (j + 1) // 2) != k:
                continue
            val = cross_k
            if i:
                val = val * v1**i
            if j:
                val = val * v2bar**j
            out.add_root(val)
    return tuple(out.coeffs.items())


def F_prime_power(chi1: DirichletCharacter, chi2: DirichletCharacter,
                  p: int, k: int) -> RootSum:
    """F(p^k): exact enumeration of the lcm-constrained character sum.

    Sums chi1(p)^i * conj(chi2)(p)^j * (conj(chi1)chi2)(p)^k over the
    8k pairs (i, j) in [0, 2k]^2 with max(ceil(i/2), ceil(j/2)) = k.
    Satisfies |F(p^k)| <= 8k; equals 8k for the principal pair, 0 when
    p divides the modulus.
    """
    _require_same_modulus(chi1, chi2)
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    coeffs = _F_prime_power_cached(chi1.modulus, chi1.exponents, chi2.exponents,
                                   p % chi1.modulus, k)
    return RootSum(dict(coeffs))


def F_general(chi1: DirichletCharacter, chi2: DirichletCharacter,
              d: FactoredInteger) -> RootSum:
    """F(d), multiplicative over the prime powers of d; F(1) = 1."""
    _require_same_modulus(chi1, chi2)
    out = RootSum.integer(1)
    for p, k in d.factors:
        out = out * F_prime_power(chi1, chi2, p, k)
    return out


def F_prime_identity_check(chi1: DirichletCharacter, chi2: DirichletCharacter,
                           p: int) -> bool:
    """Check F(p) against its closed form as a sum of eight formal characters.

    The closed form is chi0(p) plus the values at p of the formal list
    [chi1, chi2, chi1*chi2, chi1*conj(chi2), conj(chi1), conj(chi2),
    conj(chi1)*conj(chi2)] (the eighth entry conj(chi1)*chi2 of the full
    list is the one removed; coinciding entries still count separately).
    """
    _require_same_modulus(chi1, chi2)
    enumerated = F_prime_power(chi1, chi2, p, 1)
    c1b, c2b = chi1.conjugate(), chi2.conjugate()
    formal = [chi1, chi2, chi1 * chi2, chi1 * c2b, c1b, c2b, c1b * c2b]
    closed = RootSum.zero()
    closed.add_root(chi1.group.principal()(p))
    for chi in formal:
        closed.add_root(chi(p))
    return enumerated == closed


def _divisor_residue_rootsum(chi: DirichletCharacter,
                             factors: tuple[tuple[int, int], ...]) -> RootSum:
    """sum of chi(u) over divisors u of n^2, as an exact RootSum."""
    a = chi.modulus
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
    out = RootSum.zero()
    for r, c in counts.items():
        out.add_root(chi(r), c)
    return out


def coefficient_lhs(chi1: DirichletCharacter, chi2: DirichletCharacter,
                    n: FactoredInteger) -> RootSum:
    """Direct n-th coefficient: (conj(chi1)chi2)(n) * S1(n) * S2(n).

    S1 sums chi1 over the divisors of n^2, S2 sums conj(chi2); all three
    factors stay in exact root-of-unity arithmetic.
    """
    _require_same_modulus(chi1, chi2)
    cross = RootSum.from_root((chi1.conjugate() * chi2)(n.value))
    s1 = _divisor_residue_rootsum(chi1, n.factors)
    s2 = _divisor_residue_rootsum(chi2.conjugate(), n.factors)
    return cross * s1 * s2


def _divisor_factorizations(factors: tuple[tuple[int, int], ...]):
    """Yield (divisor, its factorization) over all divisors of n."""
    if not factors:
        yield 1, ()
        return
    (p, k), rest = factors[0], factors[1:]
    for d, df in _divisor_factorizations(rest):
        pe = 1
        for e in range(k + 1):
            yield d * pe, ((p, e),) + df if e else df
            pe *= p


def coefficient_rhs(chi1: DirichletCharacter, chi2: DirichletCharacter,
                    n: FactoredInteger) -> RootSum:
    """Convolution form of the n-th coefficient: sum over m*d = n of
    (conj(chi1)chi2)(m) * F(d)."""
    _require_same_modulus(chi1, chi2)
    cross = chi1.conjugate() * chi2
    out = RootSum.zero()
    for d, df in _divisor_factorizations(n.factors):
        m = n.value // d
        cval = cross(m)
        if cval.is_zero:
            continue
        fd = F_general(chi1, chi2, FactoredInteger(d, tuple(sorted(df))))
        out = out + fd * RootSum.from_root(cval)
    return out


# ---------------------------------------------------------------------------
# Leading coefficient of the degree-8 mean-square polynomial

@dataclass(frozen=True)
class EulerProductResult:
    """Truncated Euler product for the mean-square leading coefficient."""

    a: int
    p_max: int
    value: float
    last_factor_delta: float
    sign_note: str = SIGN_NOTE


def local_factor(p: int) -> float:
    """The per-prime factor (1 + 6/p + 1/p^2)(1 - 1/p)^6 for p not dividing a."""
    return (1 + 6 / p + 1 / p**2) * (1 - 1 / p) ** 6


def minus_sign_p2_factor() -> float:
    """The p = 2 local factor under the minus-sign variant; negative,
    which rules that variant out."""
    return (1 - 6 / 2 + 1 / 4) * (1 - 1 / 2) ** 6


def leading_coefficient(a: int, p_max: int) -> EulerProductResult:
    """Evaluate (1/(8! a^2)) prod_{p|a}(1-1/p)^7 prod_{p∤a, p<=p_max} local_factor(p).

    The tail is not bounded analytically; the result reports the
    absolute change contributed by the largest prime so callers can
    judge convergence (the factors are all < 1, so the value decreases
    monotonically in p_max).
    """
    if a < 1:
        raise ValueError(f"need a >= 1, got {a}")
    if p_max < 100:
        raise ValueError(f"need p_max >= 100, got {p_max}")
    primes = primes_up_to(p_max)
    dividing = [int(p) for p in primes if a % int(p) == 0]
    pref = 1.0 / (factorial(8) * a * a)
    for p in dividing:
        pref *= (1 - 1 / p) ** 7
    ps = primes[(a % primes) != 0].astype(np.float64)
    factors = (1 + 6 / ps + 1 / ps**2) * (1 - 1 / ps) ** 6
    body = float(np.prod(factors))
    value = pref * body
    if len(factors):
        before_last = pref * float(np.prod(factors[:-1]))
        delta = abs(value - before_last)
    else:
        delta = 0.0
    return EulerProductResult(a=a, p_max=p_max, value=value, last_factor_delta=delta)


def leading_coefficient_partials(a: int, p_max: int,
                                 points: int = 40) -> list[tuple[int, float]]:
    """Running truncated product sampled at ~log-spaced prime cutoffs.

    Returns (prime, value truncated at that prime) rows; the last row
    matches leading_coefficient(a, p_max).value.
    """
    if a < 1 or p_max < 100:
        raise ValueError("need a >= 1 and p_max >= 100")
    primes = primes_up_to(p_max)
    pref = 1.0 / (factorial(8) * a * a)
    for p in primes[(a % primes) == 0]:
        pref *= (1 - 1 / int(p)) ** 7
    keep = primes[(a % primes) != 0]
    ps = keep.astype(np.float64)
    running = pref * np.cumprod((1 + 6 / ps + 1 / ps**2) * (1 - 1 / ps) ** 6)
    idx = np.unique(np.geomspace(1, len(keep), num=min(points, len(keep))).astype(int) - 1)
    return [(int(keep[i]), float(running[i])) for i in idx]


def principal_local_factor_check(p: int, k_max: int) -> bool:
    """Two exact checks of the principal-pair local factor at p.

    (1) the power-series coefficients of (1 + 6x + x^2)/(1 - x)^3 equal
    (2k+1)^2 for k <= k_max, via integer series expansion; (2) the
    enumerated F(p^k) equals 8k for the principal pair with a = 1.
    """
    if k_max < 1:
        raise ValueError(f"need k_max >= 1, got {k_max}")
    # b_k = [x^k] (1-x)^{-3} by the recurrence from (1-x)^3 * B = 1
    b = [1]
    for k in range(1, k_max + 1):
        b.append(3 * b[k - 1]
                 - (3 * b[k - 2] if k >= 2 else 0)
                 + (b[k - 3] if k >= 3 else 0))
    for k in range(k_max + 1):
        c = b[k] + (6 * b[k - 1] if k >= 1 else 0) + (b[k - 2] if k >= 2 else 0)
        if c != (2 * k + 1) ** 2:
            return False
    chi0 = character_group(1).principal()
    for k in range(1, k_max + 1):
        if F_prime_power(chi0, chi0, p, k) != 8 * k:
            return False
    return True
