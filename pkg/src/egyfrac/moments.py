"""Range scans: mean values, second moments, and deviation statistics.

A scan walks n = 1..N through the segmented engine and accumulates, per
checkpoint, the coprime-restricted sums S1 = sum R(n;a) and
S2 = sum R(n;a)^2, the squared deviation D of R from its real-character
main term, and Turan-type second moments of the prime-power tallies.

D is held exactly: the per-n deviation is (phi*R - m)/phi with integer
m, so phi^2 * D is accumulated as an integer and divided only on
output.  Float quantities (normalized ratios, the pointwise-loglog
Turan variant) are produced per block and reduced in ascending block
order, which keeps output bytes independent of the thread count.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .characters import HIGHER_ORDER, DirichletCharacter, character_group
from .engine import DEFAULT_BLOCK_SIZE, iter_blocks
from .errors import ConsistencyError

DEFAULT_SCAN_LIMIT = 10**7
MAX_MODULUS = 10**4
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class ScanRecord:
    """Per-n row of a range scan."""

    n: int
    R: int
    d_sq: int
    omega: int
    Omega: int
    quad_main: Fraction
    gcd_na: int


@dataclass(frozen=True)
class TuranRow:
    """Both centered second moments for one real character.

    ``fixed`` centers at half loglog N, summed over n <= N; ``pointwise``
    centers at half loglog n, summed over 1 < n <= N.  Ratios divide by
    N loglog N.
    """

    label: str
    fixed_sum: float
    fixed_ratio: float
    pointwise_sum: float
    pointwise_ratio: float


@dataclass(frozen=True)
class CheckpointRow:
    n_max: int
    s1: int
    s2: int
    d_times_phi_sq: int
    d_value: float
    d_normalized: float
    turan: tuple[TuranRow, ...]


@dataclass
class MomentReport:
    a: int
    phi: int
    n_max: int
    checkpoints: tuple[int, ...]
    rows: list[CheckpointRow]
    runtime: dict = field(default_factory=dict)

    @property
    def final(self) -> CheckpointRow:
        return self.rows[-1]

    def deviation(self) -> Fraction:
        return Fraction(self.final.d_times_phi_sq, self.phi**2)


def default_checkpoints(n_max: int) -> tuple[int, ...]:
    """Powers of 10 up to n_max, always ending at n_max itself."""
    cps = [10**k for k in range(1, 11) if 10**k < n_max]
    cps.append(n_max)
    return tuple(cps)


def _check_scan_args(a: int, n_max: int, limit: int) -> None:
    if a < 1 or a > MAX_MODULUS:
        raise ValueError(f"modulus a={a} outside [1, {MAX_MODULUS}]")
    if n_max < 1 or n_max > limit:
        raise ValueError(f"n_max={n_max} outside [1, {limit}]")


def _sum_sq(x: np.ndarray) -> int:
    """Exact sum of squares; falls back to object dtype beyond int64."""
    if len(x) == 0:
        return 0
    m = int(np.abs(x).max())
    if m * m * len(x) < _INT64_SAFE:
        return int(np.dot(x, x))
    xs = x.astype(object)
    return int(np.dot(xs, xs))


def _sum_pow(x: np.ndarray, k: int) -> int:
    if len(x) == 0:
        return 0
    m = int(x.max())
    if m**k * len(x) < _INT64_SAFE:
        return int((x.astype(np.int64) ** k).sum())
    return int((x.astype(object) ** k).sum())


def _loglog(x) -> np.ndarray:
    return np.log(np.log(x))


class _TuranAccumulator:
    """Exact tallies for the fixed-center variant, floats for pointwise."""

    def __init__(self, label: str):
        self.label = label
        self.sum_o = 0       # sum of the per-n tally
        self.sum_o2 = 0      # sum of its square
        self.count = 0
        self.pointwise = 0.0  # sum over 1 < n of (tally - loglog(n)/2)^2

    def add(self, n: np.ndarray, o: np.ndarray) -> None:
        self.sum_o += int(o.sum())
        self.sum_o2 += int(np.dot(o, o))
        self.count += len(o)
        tail = n >= 2
        lln = _loglog(n[tail])
        diff = o[tail] - 0.5 * lln
        self.pointwise += float(np.dot(diff, diff))

    def row(self, n_max: int) -> TuranRow:
        if n_max >= 3:
            lln = math.log(math.log(n_max))
            fixed = self.sum_o2 - lln * self.sum_o + self.count * lln * lln / 4.0
            norm = n_max * lln
            return TuranRow(self.label, fixed, fixed / norm,
                            self.pointwise, self.pointwise / norm)
        return TuranRow(self.label, math.nan, math.nan, self.pointwise, math.nan)


def scan(a: int, n_max: int, checkpoints: tuple[int, ...] | None = None, *,
         threads: int = 1, block_size: int = DEFAULT_BLOCK_SIZE,
         limit: int = DEFAULT_SCAN_LIMIT) -> MomentReport:
    """Cumulative moment scan of n = 1..n_max with per-checkpoint rows.

    Sums are restricted to gcd(n, a) = 1 (the mean-value convention);
    the Turan tallies cover all n.  Results are bit-identical for any
    thread count.
    """
    _check_scan_args(a, n_max, limit)
    if checkpoints is None:
        checkpoints = default_checkpoints(n_max)
    checkpoints = tuple(sorted(set(int(c) for c in checkpoints)))
    if any(c < 1 or c > n_max for c in checkpoints):
        raise ValueError(f"checkpoints {checkpoints} outside [1, {n_max}]")
    group = character_group(a)
    phi = group.phi
    t0 = time.monotonic()
    s1 = s2 = d_acc = 0
    turan = [_TuranAccumulator(chi.label) for chi in group.quadratic_characters()]
    rows: list[CheckpointRow] = []
    pending = list(checkpoints)
    for block in iter_blocks(a, n_max, threads=threads, block_size=block_size,
                             checkpoints=checkpoints):
        cp = block.coprime
        R = block.R[cp]
        s1 += int(R.sum())
        s2 += _sum_sq(R)
        dev = phi * R - block.quad_num[cp]
        d_acc += _sum_sq(dev)
        for acc in turan:
            if acc.label not in block.omega_chi:
                raise ConsistencyError(f"missing tally for {acc.label}")
            acc.add(block.n, block.omega_chi[acc.label])
        while pending and pending[0] == block.hi:
            n_at = pending.pop(0)
            d_val = d_acc / phi**2
            norm = (n_at * math.log(n_at) ** 2) if n_at >= 2 else math.nan
            rows.append(CheckpointRow(
                n_max=n_at, s1=s1, s2=s2, d_times_phi_sq=d_acc,
                d_value=d_val,
                d_normalized=d_val / norm if n_at >= 2 else math.nan,
                turan=tuple(acc.row(n_at) for acc in turan),
            ))
    if pending:
        raise ConsistencyError(f"checkpoints {pending} never reached")
    report = MomentReport(a=a, phi=phi, n_max=n_max, checkpoints=checkpoints,
                          rows=rows)
    report.runtime = {"seconds": round(time.monotonic() - t0, 3),
                      "threads": threads, "block_size": block_size}
    return report


def scan_records(a: int, n_max: int, *,
                 block_size: int = DEFAULT_BLOCK_SIZE) -> list[ScanRecord]:
    """Materialized per-n rows; meant for small ranges and cross-checks."""
    _check_scan_args(a, n_max, DEFAULT_SCAN_LIMIT)
    out = []
    for block in iter_blocks(a, n_max, block_size=block_size):
        for i in range(len(block.n)):
            out.append(ScanRecord(
                n=int(block.n[i]), R=int(block.R[i]), d_sq=int(block.d2[i]),
                omega=int(block.omega[i]), Omega=int(block.Omega[i]),
                quad_main=Fraction(int(block.quad_num[i]), int(block.quad_den[i])),
                gcd_na=int(block.gcd_na[i]),
            ))
    return out


def deviation_statistic(a: int, n_max: int, *, threads: int = 1,
                        block_size: int = DEFAULT_BLOCK_SIZE) -> tuple[Fraction, float]:
    """(D, D / (N log^2 N)) where D sums (R - main term)^2 over coprime n.

    D is exact (a Fraction with denominator dividing phi(a)^2); the
    normalized ratio is the float reported against the N log^2 N scale.
    """
    report = scan(a, n_max, (n_max,), threads=threads, block_size=block_size)
    return report.deviation(), report.final.d_normalized


def turan_statistic(chi: DirichletCharacter, n_max: int,
                    variant: str = "loglogN", *, threads: int = 1,
                    block_size: int = DEFAULT_BLOCK_SIZE) -> tuple[float, float]:
    """Second moment of the chi-restricted prime-power tally.

    variant "loglogN" centers at half loglog N and sums over n <= N;
    variant "loglogn" centers at half loglog n and sums over 1 < n <= N.
    Returns (sum, sum / (N loglog N)).
    """
    if chi.kind == HIGHER_ORDER:
        raise ValueError(f"{chi.label} is not principal or quadratic")
    if variant not in ("loglogN", "loglogn"):
        raise ValueError(f"unknown variant {variant!r}")
    if n_max < 3:
        raise ValueError(f"need n_max >= 3, got {n_max}")
    _check_scan_args(chi.modulus, n_max, DEFAULT_SCAN_LIMIT)
    acc = _TuranAccumulator(chi.label)
    for block in iter_blocks(chi.modulus, n_max, threads=threads,
                             block_size=block_size):
        acc.add(block.n, block.omega_chi[chi.label])
    row = acc.row(n_max)
    if variant == "loglogN":
        return row.fixed_sum, row.fixed_ratio
    return row.pointwise_sum, row.pointwise_ratio


def kth_moment_scan(a: int, n_max: int, k: int,
                    checkpoints: tuple[int, ...] | None = None, *,
                    threads: int = 1,
                    block_size: int = DEFAULT_BLOCK_SIZE) -> list[tuple[int, int]]:
    """Cumulative sum of R(n;a)^k over coprime n at each checkpoint.

    k is capped at 6 (the sums grow like N log^(3^k - 1) N); blocks
    switch to arbitrary precision automatically when int64 would
    overflow, so the totals are always exact.
    """
    if not 1 <= k <= 6:
        raise ValueError(f"k={k} outside [1, 6]")
    _check_scan_args(a, n_max, DEFAULT_SCAN_LIMIT)
    if checkpoints is None:
        checkpoints = default_checkpoints(n_max)
    checkpoints = tuple(sorted(set(int(c) for c in checkpoints)))
    total = 0
    rows = []
    pending = list(checkpoints)
    for block in iter_blocks(a, n_max, threads=threads, block_size=block_size,
                             checkpoints=checkpoints):
        total += _sum_pow(block.R[block.coprime], k)
        while pending and pending[0] == block.hi:
            rows.append((pending.pop(0), total))
    return rows
