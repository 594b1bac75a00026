"""Segmented sieve engine producing per-n arithmetic arrays for scans.

A block (lo, hi] is processed with vectorized numpy passes: one pass per
(prime, exact exponent) pair updates divisor counts, omega/Omega tallies
and the divisor-class count matrix used to read off the solution count.
Values of n sharing a factor with the modulus are rerouted through the
reduced modulus a/gcd(n, a) (one extra pass per divisor of a), so every
row of a block carries the exact solution count.

All block outputs are integers, so results are independent of block
boundaries; block bounds are always taken from an absolute grid (plus
checkpoint splits), which makes multi-threaded runs byte-reproducible:
blocks may be computed in any order but are reduced in ascending order.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt

import numpy as np

from .arith import MAX_N, primes_up_to
from .characters import character_group

DEFAULT_BLOCK_SIZE = 1 << 18
# cap on block_size * phi(a): bounds the divisor-class count matrix
_MATRIX_ELEMENT_BUDGET = 1 << 24


class _ModulusContext:
    """Precomputed unit-group tables for one modulus."""

    def __init__(self, a: int):
        self.a = a
        group = character_group(a)
        self.phi = group.phi
        self.units = [r for r in range(a) if gcd(r, a) == 1]
        self.uidx = {r: i for i, r in enumerate(self.units)}
        self.one = 1 % a
        self._perms: dict[int, np.ndarray] = {}
        self.gcd_table = np.array([gcd(r, a) for r in range(a)], dtype=np.int64)
        # unit index of (-r) mod a, or 0 where not a unit (rows masked later)
        self.minus_idx = np.array([self.uidx.get((a - r) % a, 0) for r in range(a)])
        # phi(a / gcd(r, a)) per residue, the reduced-average denominator
        self.quad_den_table = np.array(
            [character_group(a // gcd(r, a)).phi for r in range(a)], dtype=np.int64
        )
        self.real_chis = group.real_characters()
        self.sign_tables = [
            np.array(chi.sign_table(), dtype=np.int64) for chi in self.real_chis
        ]

    def perm(self, t: int) -> np.ndarray:
        """perm(t)[s] = unit index of units[s] * t; built on first use."""
        p = self._perms.get(t)
        if p is None:
            a = self.a
            p = np.array([self.uidx[self.units[s] * t % a] for s in range(self.phi)])
            self._perms[t] = p
        return p

    def inverse_power_weights(self, rho: int, e: int) -> list[tuple[int, int]]:
        """Multiset {rho^-j : 0 <= j <= 2e} as (unit, multiplicity) pairs."""
        a = self.a
        rinv = pow(rho, -1, a) if a > 1 else 0
        w: dict[int, int] = {}
        t = self.one
        for _ in range(2 * e + 1):
            w[t] = w.get(t, 0) + 1
            t = t * rinv % a
        return list(w.items())


@lru_cache(maxsize=64)
def _modulus_context(a: int) -> _ModulusContext:
    return _ModulusContext(a)


@dataclass
class BlockArrays:
    """Per-n arrays for n in (lo, hi]; index i holds n = lo + 1 + i."""

    a: int
    lo: int
    hi: int
    n: np.ndarray        # int64
    gcd_na: np.ndarray   # int64
    coprime: np.ndarray  # bool, gcd(n, a) == 1
    R: np.ndarray        # int64 solution count, every n
    d2: np.ndarray       # int64 d(n^2)
    omega: np.ndarray    # int64
    Omega: np.ndarray    # int64
    quad_num: np.ndarray  # int64, phi(a/g) * real-character main term
    quad_den: np.ndarray  # int64, phi(a/g)
    omega_chi: dict[str, np.ndarray]  # per real character mod a, every n


def _sieve_pass(a1: int, lo: int, hi: int, *, universal: bool):
    """One segmented pass over (lo, hi] at modulus a1.

    Returns (R, qnum, coprime) plus, when ``universal``, the modulus-free
    arrays (d2, omega, Omega) and omega_chi tallies for the real
    characters mod a1.  R and qnum are valid on coprime rows only.
    """
    ctx = _modulus_context(a1)
    size = hi - lo
    nv = np.arange(lo + 1, hi + 1, dtype=np.int64)
    rem = nv.copy()
    C = np.zeros((size, ctx.phi), dtype=np.int32)
    C[:, ctx.uidx[ctx.one]] = 1
    gchi = [np.ones(size, dtype=np.int64) for _ in ctx.real_chis]
    if universal:
        d2 = np.ones(size, dtype=np.int64)
        om = np.zeros(size, dtype=np.int16)
        Om = np.zeros(size, dtype=np.int16)
        ochi = [np.zeros(size, dtype=np.int16) for _ in ctx.real_chis]

    def convolve(sub: np.ndarray, rho: int, e: int) -> None:
        # new[s] = sum_{j=0..2e} old[s * rho^-j]
        block = C[sub]
        acc = None
        for t, c in ctx.inverse_power_weights(rho, e):
            term = block if t == ctx.one else block[:, ctx.perm(t)]
            if c != 1:
                term = term * c
            acc = term.copy() if acc is None else acc + term
        C[sub] = acc

    def apply(sub: np.ndarray, p: int, e: int, rho: int) -> None:
        if universal:
            d2[sub] *= 2 * e + 1
            om[sub] += 1
            Om[sub] += e
        if gcd(rho, a1) == 1:
            convolve(sub, rho, e)
        for i, signs in enumerate(ctx.sign_tables):
            s = signs[rho]
            if s == 1:
                gchi[i][sub] *= 2 * e + 1
                if universal:
                    ochi[i][sub] += e
            elif s == -1 and universal and e >= 2:
                ochi[i][sub] += e // 2

    for p in primes_up_to(isqrt(hi)):
        p = int(p)
        rho = p % a1
        pe, e = p, 1
        while pe <= hi:
            start = (lo // pe + 1) * pe
            if start > hi:
                break
            idx = np.arange(start - lo - 1, size, pe)
            rem[idx] //= p
            if pe * p <= hi:
                sub = idx[nv[idx] % (pe * p) != 0]
            else:
                sub = idx
            if len(sub):
                apply(sub, p, e, rho)
            pe *= p
            e += 1

    # each leftover rem is a single prime > sqrt(hi), exponent 1
    tailmask = rem > 1
    if universal:
        d2[tailmask] *= 3
        om[tailmask] += 1
        Om[tailmask] += 1
    tail_rho = np.where(tailmask, rem % a1, -1)
    for rho in np.unique(tail_rho):
        rho = int(rho)
        if rho < 0:
            continue
        sub = np.nonzero(tail_rho == rho)[0]
        if gcd(rho, a1) == 1:
            convolve(sub, rho, 1)
        for i, signs in enumerate(ctx.sign_tables):
            if signs[rho] == 1:
                gchi[i][sub] *= 3
                if universal:
                    ochi[i][sub] += 1

    res = nv % a1 if a1 > 1 else np.zeros(size, dtype=np.int64)
    coprime = ctx.gcd_table[res] == 1
    R = C[np.arange(size), ctx.minus_idx[res]].astype(np.int64)
    minus_res = (a1 - res) % a1 if a1 > 1 else res
    qnum = np.zeros(size, dtype=np.int64)
    for signs, g in zip(ctx.sign_tables, gchi):
        qnum += signs[minus_res] * g
    if universal:
        labels = [chi.label for chi in ctx.real_chis]
        return R, qnum, coprime, d2, om, Om, dict(zip(labels, [o.astype(np.int64) for o in ochi]))
    return R, qnum, coprime


def compute_block(a: int, lo: int, hi: int) -> BlockArrays:
    """All per-n arrays for n in (lo, hi], including reduced-gcd rows."""
    if not 0 <= lo < hi <= MAX_N:
        raise ValueError(f"bad block bounds ({lo}, {hi}]")
    ctx = _modulus_context(a)
    size = hi - lo
    nv = np.arange(lo + 1, hi + 1, dtype=np.int64)
    R, qnum, coprime, d2, om, Om, ochi = _sieve_pass(a, lo, hi, universal=True)
    res = nv % a if a > 1 else np.zeros(size, dtype=np.int64)
    gcd_na = ctx.gcd_table[res]
    quad_den = ctx.quad_den_table[res]
    for g in range(2, a + 1):
        if a % g:
            continue
        mlo, mhi = lo // g, hi // g
        if mlo >= mhi:
            continue
        Rr, qr, cpr = _sieve_pass(a // g, mlo, mhi, universal=False)
        ms = np.arange(mlo + 1, mhi + 1, dtype=np.int64)
        pos = (g * ms - lo - 1)[cpr]
        R[pos] = Rr[cpr]
        qnum[pos] = qr[cpr]
    return BlockArrays(
        a=a, lo=lo, hi=hi, n=nv, gcd_na=gcd_na, coprime=coprime, R=R,
        d2=d2, omega=om.astype(np.int64), Omega=Om.astype(np.int64),
        quad_num=qnum, quad_den=quad_den, omega_chi=ochi,
    )


def block_bounds(n_max: int, block_size: int = DEFAULT_BLOCK_SIZE,
                 checkpoints: tuple[int, ...] = ()) -> list[tuple[int, int]]:
    """Split [1, n_max] at an absolute block grid plus checkpoint cuts.

    The grid does not depend on where a scan starts or how many threads
    run it, so any partition of the range reproduces identical blocks.
    """
    if n_max < 1:
        raise ValueError(f"need n_max >= 1, got {n_max}")
    cuts = {0, n_max}
    cuts.update(b for b in range(0, n_max + 1, block_size))
    cuts.update(c for c in checkpoints if 0 < c <= n_max)
    edges = sorted(cuts)
    return [(edges[i], edges[i + 1]) for i in range(len(edges) - 1)]


def effective_block_size(a: int, block_size: int = DEFAULT_BLOCK_SIZE) -> int:
    """Shrink the block size when block * phi(a) would exceed the matrix
    budget; a pure function of the configuration, so the grid stays
    reproducible."""
    phi = _modulus_context(a).phi
    return min(block_size, max(1024, _MATRIX_ELEMENT_BUDGET // phi))


def iter_blocks(a: int, n_max: int, *, threads: int = 1,
                block_size: int = DEFAULT_BLOCK_SIZE,
                checkpoints: tuple[int, ...] = ()):
    """Yield BlockArrays for [1, n_max] in ascending order.

    With threads > 1, blocks are computed concurrently but always
    delivered in order; at most 2*threads blocks are in flight so memory
    stays bounded.
    """
    bounds = block_bounds(n_max, effective_block_size(a, block_size), checkpoints)
    if threads <= 1:
        for lo, hi in bounds:
            yield compute_block(a, lo, hi)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        pending = []
        it = iter(bounds)
        for _ in range(2 * threads):
            nxt = next(it, None)
            if nxt is None:
                break
            pending.append(pool.submit(compute_block, a, *nxt))
        while pending:
            block = pending.pop(0).result()
            nxt = next(it, None)
            if nxt is not None:
                pending.append(pool.submit(compute_block, a, *nxt))
            yield block
