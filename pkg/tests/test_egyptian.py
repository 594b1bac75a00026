from fractions import Fraction
from math import gcd

import pytest
from conftest import uv_oracle_count
from hypothesis import given, settings
from hypothesis import strategies as st

from egyfrac.arith import d_of_square, factorize, omega_big, omega_small, trial_factorize
from egyfrac.characters import ONE, character_group
from egyfrac.egyptian import (
    SolutionPair,
    g_chi,
    omega_chi,
    quadratic_main_numerator,
    r_bruteforce,
    r_character_formula,
    r_divisor_method,
    r_general,
    r_quadratic_main,
    solution_pairs,
)


class TestBruteForce:
    def test_frozen_small_cases(self):
        assert r_bruteforce(1, 1) == 1
        assert solution_pairs(1, 1) == [SolutionPair(2, 2)]
        assert r_bruteforce(2, 1) == 3
        assert [(s.x, s.y) for s in solution_pairs(2, 1)] == [(3, 6), (4, 4), (6, 3)]
        assert r_bruteforce(2, 5) == 0

    def test_budget(self):
        with pytest.raises(ValueError, match="budget"):
            r_bruteforce(10**7 + 1, 1)
        with pytest.raises(ValueError):
            solution_pairs(100, 1, budget=50)

    def test_pair_identity_and_symmetry(self):
        for n, a in [(12, 1), (30, 7), (100, 3), (36, 5), (2, 5)]:
            pairs = solution_pairs(n, a)
            assert len(pairs) == r_bruteforce(n, a)
            for s in pairs:
                assert a * s.x * s.y == n * (s.x + s.y)
            assert {(s.x, s.y) for s in pairs} == {(s.y, s.x) for s in pairs}
            has_diagonal = any(s.x == s.y for s in pairs)
            assert has_diagonal == ((2 * n) % a == 0)

    def test_vectorized_matches_scalar_window(self):
        # n large enough to trigger the numpy path
        for n in (5000, 9973):
            for a in (1, 2, 7):
                assert r_bruteforce(n, a) == uv_oracle_count(n, a)


class TestDivisorMethod:
    def test_frozen_cases(self, table_5k):
        assert r_divisor_method(4, 3, table=table_5k) == 2  # divisors {2, 8} of 16
        assert r_divisor_method(5, 2, table=table_5k) == 3  # all odd divisors of 25
        for n in (1, 6, 28, 100):
            assert r_divisor_method(n, 1, table=table_5k) == \
                d_of_square(factorize(n, table_5k))

    def test_rejects_shared_factor(self):
        with pytest.raises(ValueError, match="r_general"):
            r_divisor_method(6, 3)


class TestCharacterFormula:
    def test_matches_divisor_method(self, table_5k):
        assert r_character_formula(4, 3, table=table_5k) == 2
        assert r_character_formula(7, 5, table=table_5k) == r_bruteforce(7, 5)
        for n in (1, 9, 50):
            assert r_character_formula(n, 1, table=table_5k) == \
                d_of_square(factorize(n, table_5k))

    def test_rejects_shared_factor(self):
        with pytest.raises(ValueError):
            r_character_formula(10, 4)


class TestGeneral:
    def test_reduction_cases(self, table_5k):
        assert r_general(6, 3, table=table_5k) == 3   # reduces to (2, 1), d(4) = 3
        assert r_general(4, 2, table=table_5k) == 3
        assert r_general(5, 5, table=table_5k) == 1   # reduces to (1, 1)

    def test_cross_method_grid(self, table_5k):
        for a in range(1, 13):
            for n in range(1, 601):
                rb = r_bruteforce(n, a)
                assert rb == r_general(n, a, table=table_5k) == uv_oracle_count(n, a)
                if gcd(n, a) == 1:
                    assert rb == r_divisor_method(n, a, table=table_5k)
                    assert rb == r_character_formula(n, a, table=table_5k)

    @given(st.integers(1, 3000), st.integers(1, 24))
    @settings(max_examples=120, deadline=None)
    def test_cross_method_random(self, n, a):
        rb = r_bruteforce(n, a)
        assert rb == r_general(n, a)
        if gcd(n, a) == 1:
            assert rb == r_divisor_method(n, a) == r_character_formula(n, a)

    def test_count_equals_d_square_for_a1(self, table_100k):
        for n in range(1, 10_001):
            assert r_general(n, 1, table=table_100k) == \
                d_of_square(factorize(n, table_100k))


class TestOmegaChi:
    def test_frozen_cases(self, table_5k):
        chi = character_group(3).quadratic_characters()[0]
        # n = 4: pair (2, 2) has chi(4) = 1; pair (2, 1) has chi(2) = -1
        assert omega_chi(chi, factorize(4, table_5k)) == 1
        assert omega_chi(chi, factorize(1, table_5k)) == 0

    def test_principal_gives_omega_big(self, table_5k):
        chi0 = character_group(5).principal()
        for n in range(1, 500):
            if gcd(n, 5) == 1:
                fi = factorize(n, table_5k)
                assert omega_chi(chi0, fi) == omega_big(fi)
        chi0_triv = character_group(1).principal()
        for n in (1, 12, 360, 1024):
            fi = trial_factorize(n)
            assert omega_chi(chi0_triv, fi) == omega_big(fi)

    def test_matches_literal_definition(self, table_5k):
        for a in (3, 5, 8, 12):
            for chi in character_group(a).real_characters():
                for n in range(1, 300):
                    fi = factorize(n, table_5k)
                    literal = sum(
                        1
                        for p, k in fi.factors
                        for j in range(1, k + 1)
                        if chi(p**j) == ONE
                    )
                    assert omega_chi(chi, fi) == literal

    def test_rejects_higher_order(self, table_5k):
        chi = next(c for c in character_group(5).characters()
                   if c.kind == "higher-order")
        with pytest.raises(ValueError):
            omega_chi(chi, factorize(6, table_5k))
        with pytest.raises(ValueError):
            g_chi(chi, factorize(6, table_5k))


class TestGChi:
    def test_frozen_cases(self, table_5k):
        chi = character_group(3).quadratic_characters()[0]
        # direct sums over the divisors of 16 and 49
        assert g_chi(chi, factorize(4, table_5k)) == 1
        assert g_chi(chi, factorize(7, table_5k)) == 3
        chi0 = character_group(5).principal()
        for n in (3, 7, 36):
            assert g_chi(chi0, factorize(n, table_5k)) == \
                d_of_square(factorize(n, table_5k))

    def test_equals_divisor_sum_oracle(self, table_5k):
        from conftest import oracle_divisors_of_square

        for a in (3, 5, 8):
            for chi in character_group(a).real_characters():
                signs = chi.sign_table()
                for n in range(1, 200):
                    direct = sum(signs[u % a] for u in oracle_divisors_of_square(n))
                    assert g_chi(chi, factorize(n, table_5k)) == direct

    def test_bounds_against_omega_chi(self, table_5k):
        for a in (3, 4, 5, 7, 8, 11, 12, 13, 15, 16, 21, 24):
            for chi in character_group(a).quadratic_characters():
                for n in range(1, 10_001):
                    fi = factorize(n, table_5k) if n <= 5000 else trial_factorize(n)
                    g = g_chi(chi, fi)
                    assert 0 < g <= 3 ** omega_chi(chi, fi)


class TestQuadraticMain:
    def test_a1_is_d_square(self, table_5k):
        for n in range(1, 200):
            assert r_quadratic_main(n, 1, table=table_5k) == \
                d_of_square(factorize(n, table_5k))

    def test_a3_exact_for_coprime(self, table_5k):
        for n in range(1, 500):
            if gcd(n, 3) == 1:
                assert r_quadratic_main(n, 3, table=table_5k) == \
                    r_divisor_method(n, 3, table=table_5k)

    def test_a5_n2_hand_value(self):
        # (1/4) * (d(4) + chi(-2) g(2)) = (3 - 1)/4
        assert r_quadratic_main(2, 5) == Fraction(1, 2)
        assert quadratic_main_numerator(2, 5) == (2, 4)

    @pytest.mark.parametrize("a", [1, 2, 3, 4, 6, 8, 12, 24])
    def test_exact_for_exponent_two_groups(self, a, table_5k):
        for n in range(1, 1001):
            if gcd(n, a) == 1:
                assert r_quadratic_main(n, a, table=table_5k) == \
                    r_general(n, a, table=table_5k)


def test_divisor_square_bounds_2_9(table_100k):
    # 3^(omega(n) - omega(a)) <= d((n/(a,n))^2) <= 3^Omega(n)
    for a in range(1, 13):
        oa = omega_small(trial_factorize(a))
        for n in range(1, 10_001):
            fi = factorize(n, table_100k)
            reduced = d_of_square(factorize(n // gcd(n, a), table_100k))
            assert 3 ** max(omega_small(fi) - oa, 0) <= reduced
            assert reduced <= 3 ** omega_big(fi)
