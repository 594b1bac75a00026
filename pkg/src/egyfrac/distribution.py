"""Empirical distribution of log R(n;a) against the Gaussian law.

The normalized statistic is (log R(n;a) - log(3) loglog n) divided by
log(3) sqrt(loglog n); its empirical CDF over n <= N is compared with
the standard normal CDF, and sandwiched between the analogous CDFs
built from Omega(n) and omega(n) (with the plain loglog normalization).

n = 1, 2 are always excluded (loglog is undefined or nonpositive) and
n with R(n;a) = 0 are excluded from log-based statistics; both counts
are carried in the output, and the empirical CDF is reported against
the eligible-count denominator as well as the raw all-n denominator.
Natural logarithms throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .engine import DEFAULT_BLOCK_SIZE, iter_blocks
from .moments import DEFAULT_SCAN_LIMIT, _check_scan_args

LOG3 = math.log(3.0)


def default_z_grid() -> tuple[float, ...]:
    """-3.0 to 3.0 in steps of 0.25 (25 points)."""
    return tuple(-3.0 + 0.25 * i for i in range(25))


def phi_cdf(z: float) -> float:
    """Standard normal CDF, accurate to well below 1e-10."""
    return 0.5 * math.erfc(-z / math.sqrt(2.0))


@dataclass
class CdfGrid:
    """Empirical CDF on a fixed z grid versus the Gaussian CDF.

    ``empirical`` divides by the eligible count (statistic defined);
    ``empirical_all_n`` divides by N, the raw count convention.
    """

    z_values: tuple[float, ...]
    empirical: tuple[float, ...]
    empirical_all_n: tuple[float, ...]
    gaussian: tuple[float, ...]
    N: int
    eligible: int
    excluded_zero_R: int
    excluded_small_n: int
    label: str = "log_R"
    runtime: dict = field(default_factory=dict)


def _validate_grid(z_grid) -> tuple[float, ...]:
    z = tuple(float(v) for v in z_grid)
    if len(z) == 0 or any(b <= a for a, b in zip(z, z[1:])):
        raise ValueError("z_grid must be nonempty and strictly increasing")
    return z


def _grid_from_counts(z, counts, N, eligible, excl_zero, excl_small, label) -> CdfGrid:
    denom = max(eligible, 1)
    return CdfGrid(
        z_values=z,
        empirical=tuple(int(c) / denom for c in counts),
        empirical_all_n=tuple(int(c) / N for c in counts),
        gaussian=tuple(phi_cdf(v) for v in z),
        N=N, eligible=eligible,
        excluded_zero_R=excl_zero, excluded_small_n=excl_small,
        label=label,
    )


def erdos_kac_cdf(a: int, n_max: int, z_grid=None, *, threads: int = 1,
                  block_size: int = DEFAULT_BLOCK_SIZE) -> CdfGrid:
    """Empirical CDF of the normalized log solution count over n <= n_max.

    Eligible n are those >= 3 with R(n;a) > 0; per grid point z the
    count of eligible n with statistic <= z is tallied exactly per
    block, so the result does not depend on threading or block bounds.
    """
    _check_scan_args(a, n_max, DEFAULT_SCAN_LIMIT)
    if n_max < 10:
        raise ValueError(f"need n_max >= 10, got {n_max}")
    z = _validate_grid(z_grid if z_grid is not None else default_z_grid())
    zv = np.array(z)
    counts = np.zeros(len(z), dtype=np.int64)
    eligible = excl_zero = 0
    for block in iter_blocks(a, n_max, threads=threads, block_size=block_size):
        ok = (block.n >= 3) & (block.R > 0)
        excl_zero += int(np.count_nonzero((block.n >= 3) & (block.R == 0)))
        eligible += int(np.count_nonzero(ok))
        lln = np.log(np.log(block.n[ok]))
        t = (np.log(block.R[ok]) - LOG3 * lln) / (LOG3 * np.sqrt(lln))
        counts += (t[None, :] <= zv[:, None]).sum(axis=1)
    return _grid_from_counts(z, counts, n_max, eligible, excl_zero,
                             min(n_max, 2), "log_R")


def omega_reference_cdfs(n_max: int, z_grid=None, *, threads: int = 1,
                         block_size: int = DEFAULT_BLOCK_SIZE) -> tuple[CdfGrid, CdfGrid]:
    """Empirical CDFs of (Omega - loglog n)/sqrt(loglog n) and the omega
    analog, over 3 <= n <= n_max.

    Returned as (Omega grid, omega grid); since Omega >= omega pointwise
    the first CDF lies below the second at every z.
    """
    if n_max < 10:
        raise ValueError(f"need n_max >= 10, got {n_max}")
    z = _validate_grid(z_grid if z_grid is not None else default_z_grid())
    zv = np.array(z)
    counts_big = np.zeros(len(z), dtype=np.int64)
    counts_small = np.zeros(len(z), dtype=np.int64)
    eligible = 0
    for block in iter_blocks(1, n_max, threads=threads, block_size=block_size):
        ok = block.n >= 3
        eligible += int(np.count_nonzero(ok))
        lln = np.log(np.log(block.n[ok]))
        rt = np.sqrt(lln)
        t_big = (block.Omega[ok] - lln) / rt
        t_small = (block.omega[ok] - lln) / rt
        counts_big += (t_big[None, :] <= zv[:, None]).sum(axis=1)
        counts_small += (t_small[None, :] <= zv[:, None]).sum(axis=1)
    small_n = min(n_max, 2)
    return (
        _grid_from_counts(z, counts_big, n_max, eligible, 0, small_n, "Omega"),
        _grid_from_counts(z, counts_small, n_max, eligible, 0, small_n, "omega"),
    )


def ks_distance(grid: CdfGrid) -> float:
    """Max absolute gap between the empirical (eligible-denominator)
    and Gaussian CDFs over the grid."""
    return max(abs(e - g) for e, g in zip(grid.empirical, grid.gaussian))


@dataclass(frozen=True)
class NormalOrderRow:
    n_max: int
    eligible: int
    deviating: int

    @property
    def fraction(self) -> float:
        return self.deviating / self.eligible if self.eligible else math.nan


def normal_order_rows(a: int, n_max: int, epsilon: float,
                      checkpoints: tuple[int, ...] | None = None, *,
                      threads: int = 1,
                      block_size: int = DEFAULT_BLOCK_SIZE) -> list[NormalOrderRow]:
    """Deviating fractions |log R / (log 3 loglog n) - 1| > epsilon.

    One row per checkpoint; eligibility as in erdos_kac_cdf.
    """
    _check_scan_args(a, n_max, DEFAULT_SCAN_LIMIT)
    if n_max < 10:
        raise ValueError(f"need n_max >= 10, got {n_max}")
    if epsilon <= 0:
        raise ValueError(f"need epsilon > 0, got {epsilon}")
    if checkpoints is None:
        checkpoints = (n_max,)
    checkpoints = tuple(sorted(set(int(c) for c in checkpoints)))
    eligible = deviating = 0
    rows = []
    pending = list(checkpoints)
    for block in iter_blocks(a, n_max, threads=threads, block_size=block_size,
                             checkpoints=checkpoints):
        ok = (block.n >= 3) & (block.R > 0)
        eligible += int(np.count_nonzero(ok))
        lln = np.log(np.log(block.n[ok]))
        ratio = np.log(block.R[ok]) / (LOG3 * lln)
        deviating += int(np.count_nonzero(np.abs(ratio - 1.0) > epsilon))
        while pending and pending[0] == block.hi:
            rows.append(NormalOrderRow(pending.pop(0), eligible, deviating))
    return rows


def normal_order_report(a: int, n_max: int, epsilon: float, *, threads: int = 1,
                        block_size: int = DEFAULT_BLOCK_SIZE) -> float:
    """Fraction of eligible n <= n_max whose log R strays from
    log(3) loglog n by more than a relative epsilon."""
    return normal_order_rows(a, n_max, epsilon, threads=threads,
                             block_size=block_size)[-1].fraction
