import numpy as np
import pytest

from egyfrac.arith import build_spf_table, d_of_square, factorize, omega_big, omega_small
from egyfrac.egyptian import quadratic_main_numerator, r_general
from egyfrac.engine import block_bounds, compute_block, iter_blocks


@pytest.mark.parametrize("a", [1, 4, 5, 12])
def test_block_matches_per_n_functions(a, table_5k):
    blk = compute_block(a, 0, 1200)
    for i, n in enumerate(range(1, 1201)):
        fi = factorize(n, table_5k)
        assert int(blk.R[i]) == r_general(n, a, table=table_5k)
        assert int(blk.d2[i]) == d_of_square(fi)
        assert int(blk.omega[i]) == omega_small(fi)
        assert int(blk.Omega[i]) == omega_big(fi)
        num, den = quadratic_main_numerator(n, a, table=table_5k)
        assert (int(blk.quad_num[i]), int(blk.quad_den[i])) == (num, den)


def test_partition_independence():
    whole = compute_block(5, 0, 4000)
    parts = [compute_block(5, lo, hi) for lo, hi in
             [(0, 1000), (1000, 2500), (2500, 4000)]]
    for name in ("R", "d2", "omega", "Omega", "quad_num", "quad_den"):
        merged = np.concatenate([getattr(p, name) for p in parts])
        assert np.array_equal(merged, getattr(whole, name)), name


def test_block_bounds_absolute_grid():
    bounds = block_bounds(1000, block_size=256, checkpoints=(100, 512))
    assert bounds[0][0] == 0 and bounds[-1][1] == 1000
    flat = [b for pair in bounds for b in pair]
    assert 100 in flat and 512 in flat and 768 in flat
    # grid cuts below the final bound are absolute: independent of n_max
    again = block_bounds(2000, block_size=256, checkpoints=(100, 512))
    assert bounds[:-1] == [b for b in again if b[1] <= 768]


def test_iter_blocks_thread_count_invariance():
    seq = list(iter_blocks(7, 3000, threads=1, block_size=512))
    par = list(iter_blocks(7, 3000, threads=4, block_size=512))
    assert [b.lo for b in seq] == [b.lo for b in par]
    for b1, b2 in zip(seq, par):
        assert np.array_equal(b1.R, b2.R)
        assert np.array_equal(b1.quad_num, b2.quad_num)
        for lab in b1.omega_chi:
            assert np.array_equal(b1.omega_chi[lab], b2.omega_chi[lab])


def test_omega_chi_arrays_match_definition(table_5k):
    from egyfrac.characters import character_group
    from egyfrac.egyptian import omega_chi

    blk = compute_block(5, 0, 800)
    for chi in character_group(5).real_characters():
        arr = blk.omega_chi[chi.label]
        for i, n in enumerate(range(1, 801)):
            assert int(arr[i]) == omega_chi(chi, factorize(n, table_5k))


def test_bad_bounds_rejected():
    with pytest.raises(ValueError):
        compute_block(5, 10, 10)
    with pytest.raises(ValueError):
        block_bounds(0)


def test_large_spf_free_consistency():
    # blocks spanning ranges beyond any spf table still agree with
    # a freshly built table over that window
    lo, hi = 1_000_000, 1_000_600
    blk = compute_block(3, lo, hi)
    t = build_spf_table(hi)
    for i, n in enumerate(range(lo + 1, hi + 1)):
        assert int(blk.R[i]) == r_general(n, 3, table=t)
