import math

import numpy as np
import pytest
from conftest import uv_oracle_count

from egyfrac.distribution import (
    LOG3,
    CdfGrid,
    default_z_grid,
    erdos_kac_cdf,
    ks_distance,
    normal_order_report,
    normal_order_rows,
    omega_reference_cdfs,
    phi_cdf,
)


def simpson_gaussian_cdf(z: float) -> float:
    """Quadrature oracle: composite Simpson over [-12, z], step ~1e-4."""
    lo = -12.0
    m = max(2, int(round((z - lo) / 1e-4)))
    if m % 2:
        m += 1
    t = np.linspace(lo, z, m + 1)
    w = np.ones(m + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    h = (z - lo) / m
    dens = np.exp(-t * t / 2.0) / math.sqrt(2.0 * math.pi)
    return float(h / 3.0 * np.dot(w, dens))


class TestPhiCdf:
    def test_half_at_zero(self):
        assert phi_cdf(0.0) == 0.5

    @pytest.mark.parametrize("z", [0.5, 1.0, 2.0, 3.0])
    def test_symmetry(self, z):
        assert abs(phi_cdf(z) + phi_cdf(-z) - 1.0) < 1e-12

    @pytest.mark.parametrize("z", [-2.0, -0.5, 0.3, 1.0, 2.5])
    def test_against_quadrature(self, z):
        assert abs(phi_cdf(z) - simpson_gaussian_cdf(z)) < 1e-10

    def test_frozen_value_at_one(self):
        # computed with the Simpson oracle above
        assert abs(phi_cdf(1.0) - 0.8413447460685429) < 1e-12

    def test_tails(self):
        assert phi_cdf(-8.0) < 1e-14
        assert phi_cdf(8.0) > 1 - 1e-14
        grid = default_z_grid()
        vals = [phi_cdf(z) for z in grid]
        assert vals == sorted(vals)


class TestErdosKacCdf:
    def test_bookkeeping_and_monotone(self):
        g = erdos_kac_cdf(5, 5000)
        assert g.eligible + g.excluded_zero_R + g.excluded_small_n == 5000
        assert g.excluded_small_n == 2
        assert g.excluded_zero_R > 0
        assert list(g.empirical) == sorted(g.empirical)
        assert list(g.gaussian) == sorted(g.gaussian)
        assert len(g.z_values) == 25

    def test_reaches_one_at_large_z(self):
        g = erdos_kac_cdf(1, 1000, tuple(float(z) for z in range(-3, 11)))
        assert g.empirical[-1] == 1.0
        assert g.empirical_all_n[-1] == g.eligible / g.N

    def test_small_n_oracle(self):
        # recompute the whole grid directly from the uv-oracle counts
        a, N = 5, 600
        z = default_z_grid()
        stats = []
        zero_r = 0
        for n in range(3, N + 1):
            r = uv_oracle_count(n, a)
            if r == 0:
                zero_r += 1
                continue
            lln = math.log(math.log(n))
            stats.append((math.log(r) - LOG3 * lln) / (LOG3 * math.sqrt(lln)))
        g = erdos_kac_cdf(a, N)
        assert g.excluded_zero_R == zero_r
        assert g.eligible == len(stats)
        for zi, e in zip(z, g.empirical):
            assert e == sum(1 for s in stats if s <= zi) / len(stats)

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            erdos_kac_cdf(1, 1000, (0.0, 0.0))
        with pytest.raises(ValueError):
            erdos_kac_cdf(1, 5)

    def test_thread_invariance(self):
        g1 = erdos_kac_cdf(5, 20_000, threads=1)
        g4 = erdos_kac_cdf(5, 20_000, threads=4)
        assert g1.empirical == g4.empirical
        assert g1.excluded_zero_R == g4.excluded_zero_R


class TestKsDistance:
    def test_zero_when_equal(self):
        g = CdfGrid((0.0,), (0.5,), (0.5,), (0.5,), 10, 8, 0, 2)
        assert ks_distance(g) == 0.0

    def test_stable_under_near_duplicate_refinement(self):
        base = default_z_grid()
        refined = tuple(sorted(set(base) | {z + 1e-11 for z in base[:-1]}))
        g1 = erdos_kac_cdf(1, 3000, base)
        g2 = erdos_kac_cdf(1, 3000, refined)
        assert abs(ks_distance(g1) - ks_distance(g2)) < 1e-9


class TestOmegaReference:
    def test_domination_and_tail(self):
        big, small = omega_reference_cdfs(30_000)
        assert all(b <= s for b, s in zip(big.empirical, small.empirical))
        wide = tuple(float(z) for z in range(-3, 11))
        big2, small2 = omega_reference_cdfs(30_000, wide)
        assert big2.empirical[-1] == 1.0
        assert small2.empirical[-1] == 1.0

    def test_oracle_small(self, table_5k):
        from egyfrac.arith import factorize, omega_big, omega_small

        N = 500
        big, small = omega_reference_cdfs(N)
        t_big, t_small = [], []
        for n in range(3, N + 1):
            fi = factorize(n, table_5k)
            lln = math.log(math.log(n))
            t_big.append((omega_big(fi) - lln) / math.sqrt(lln))
            t_small.append((omega_small(fi) - lln) / math.sqrt(lln))
        for zi, eb, es in zip(big.z_values, big.empirical, small.empirical):
            assert eb == sum(1 for t in t_big if t <= zi) / len(t_big)
            assert es == sum(1 for t in t_small if t <= zi) / len(t_small)


class TestNormalOrder:
    def test_generous_band_gives_zero(self):
        assert normal_order_report(1, 5000, 10.0) == 0.0

    def test_rows_monotone_in_n(self):
        rows = normal_order_rows(1, 100_000, 0.5, (10_000, 100_000))
        assert rows[0].fraction >= rows[1].fraction

    def test_oracle_small(self):
        a, N, eps = 1, 400, 0.5
        dev = elig = 0
        for n in range(3, N + 1):
            r = uv_oracle_count(n, a)
            if r == 0:
                continue
            elig += 1
            lln = math.log(math.log(n))
            if abs(math.log(r) / (LOG3 * lln) - 1.0) > eps:
                dev += 1
        rows = normal_order_rows(a, N, eps)
        assert rows[-1].eligible == elig
        assert rows[-1].deviating == dev

    def test_validation(self):
        with pytest.raises(ValueError):
            normal_order_report(1, 1000, 0.0)
        with pytest.raises(ValueError):
            normal_order_report(1, 5, 0.5)


def test_excluded_zero_fraction_decreases_for_a5():
    g4 = erdos_kac_cdf(5, 10**4)
    g6 = erdos_kac_cdf(5, 10**6, threads=4)
    assert g6.excluded_zero_R / g6.N < g4.excluded_zero_R / g4.N
