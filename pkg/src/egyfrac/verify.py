"""Self-check suites behind the ``verify`` subcommand.

Each check recomputes a cross-cutting identity from scratch and returns
(name, ok, detail).  These are sanity gates for installed copies; the
full statistical experiments live in the test suite.
"""

from __future__ import annotations

from math import gcd

from .arith import build_spf_table, d_of_square, factorize
from .characters import RootSum, character_group
from .dirichlet_series import (
    F_prime_identity_check,
    coefficient_lhs,
    coefficient_rhs,
    principal_local_factor_check,
)
from .egyptian import r_bruteforce, r_character_formula, r_divisor_method, r_general

Check = tuple[str, bool, str]


def _check_cross_method(n_max: int, a_max: int) -> Check:
    table = build_spf_table(max(n_max, 2))
    bad = 0
    first = ""
    for a in range(1, a_max + 1):
        for n in range(1, n_max + 1):
            rb = r_bruteforce(n, a)
            rg = r_general(n, a, table=table)
            agree = rb == rg
            if agree and gcd(n, a) == 1:
                rd = r_divisor_method(n, a, table=table)
                rc = r_character_formula(n, a, table=table)
                agree = rb == rd == rc
            if not agree:
                bad += 1
                first = first or f"first mismatch at n={n}, a={a}"
    detail = f"n <= {n_max}, a <= {a_max}; {first or 'all methods agree'}"
    return (f"cross-method solution counts", bad == 0, detail)


def _check_orthogonality(a_max: int) -> Check:
    bad = 0
    for a in range(1, a_max + 1):
        group = character_group(a)
        units = [r for r in range(1, a + 1) if gcd(r, a) == 1]
        for r in units:
            for s in units:
                total = RootSum.zero()
                for chi in group.characters():
                    total = total + RootSum.from_root(chi(r).conjugate() * chi(s))
                want = group.phi if (r - s) % a == 0 else 0
                if total.as_integer() != want:
                    bad += 1
    return ("character orthogonality",
            bad == 0, f"exhaustive moduli a <= {a_max}; {bad} failures")


def _check_multiplicativity(a_max: int, n_max: int) -> Check:
    bad = 0
    for a in range(1, a_max + 1):
        for chi in character_group(a).characters():
            for m in range(1, n_max + 1):
                for n in range(1, n_max + 1):
                    if chi(m * n) != chi(m) * chi(n):
                        bad += 1
    return ("complete multiplicativity",
            bad == 0, f"a <= {a_max}, arguments <= {n_max}; {bad} failures")


def _check_coefficient_identity(n_max: int, moduli: tuple[int, ...]) -> Check:
    table = build_spf_table(max(n_max, 2))
    bad = 0
    for a in moduli:
        chars = character_group(a).characters()
        for chi1 in chars:
            for chi2 in chars:
                for n in range(1, n_max + 1):
                    fi = factorize(n, table)
                    if not (coefficient_lhs(chi1, chi2, fi)
                            == coefficient_rhs(chi1, chi2, fi)):
                        bad += 1
    return ("series coefficient identity",
            bad == 0, f"n <= {n_max}, moduli {list(moduli)}; {bad} failures")


def _check_prime_identity(p_max: int, a_max: int) -> Check:
    from .arith import primes_up_to

    bad = 0
    for a in range(1, a_max + 1):
        chars = character_group(a).characters()
        for chi1 in chars:
            for chi2 in chars:
                for p in primes_up_to(p_max):
                    p = int(p)
                    if a % p == 0:
                        continue
                    if not F_prime_identity_check(chi1, chi2, p):
                        bad += 1
    return ("prime Euler-coefficient closed form",
            bad == 0, f"p <= {p_max}, a <= {a_max}; {bad} failures")


def _check_principal_local_factor() -> Check:
    ok = principal_local_factor_check(2, 10) and principal_local_factor_check(7, 6)
    return ("principal local factor coefficients", ok, "k <= 10 at p = 2, 7")


def _check_count_vs_divisors(n_max: int) -> Check:
    table = build_spf_table(max(n_max, 2))
    bad = sum(
        1 for n in range(1, n_max + 1)
        if r_general(n, 1, table=table) != d_of_square(factorize(n, table))
    )
    return ("a = 1 count equals d(n^2)", bad == 0, f"n <= {n_max}; {bad} failures")


SUITES: dict[str, list] = {
    "quick": [
        lambda: _check_cross_method(300, 8),
        lambda: _check_orthogonality(12),
        lambda: _check_coefficient_identity(60, (3, 4, 5)),
        lambda: _check_prime_identity(30, 5),
        lambda: _check_principal_local_factor(),
        lambda: _check_count_vs_divisors(3000),
    ],
    "identities": [
        lambda: _check_cross_method(2000, 10),
        lambda: _check_coefficient_identity(300, (3, 4, 5, 8)),
        lambda: _check_prime_identity(100, 8),
        lambda: _check_principal_local_factor(),
        lambda: _check_count_vs_divisors(20000),
    ],
    "characters": [
        lambda: _check_orthogonality(30),
        lambda: _check_multiplicativity(24, 100),
    ],
}
SUITES["all"] = SUITES["identities"] + SUITES["characters"]


def run_suite(name: str) -> list[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [check() for check in SUITES[name]]
