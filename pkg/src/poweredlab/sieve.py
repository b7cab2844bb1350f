"""Segmented factoring and classification of short intervals (x, x+y]."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import isqrt

import numpy as np

from .arith import (
    TRIAL_BOUND,
    Factorization,
    as_threshold,
    factor,
    factor_cofactor,
    iroot,
    is_k_powered,
)

__all__ = [
    "Interval", "SieveConfig", "primes_up_to", "factor_interval",
    "enumerate_powerful", "enumerate_k_powered", "count_rough",
]

FALLBACK_PRIME_BOUND = 10**6


@dataclass(frozen=True)
class Interval:
    """The half-open interval (x, x+y]."""

    x: int
    y: int

    def __post_init__(self):
        if self.x < 0:
            raise ValueError(f"interval start x must be >= 0, got {self.x}")
        if self.y < 1:
            raise ValueError(f"interval length y must be >= 1, got {self.y}")

    @property
    def lo(self) -> int:
        return self.x + 1

    @property
    def hi(self) -> int:
        return self.x + self.y

    def __contains__(self, n) -> bool:
        return self.x < n <= self.x + self.y

    def __iter__(self):
        return iter(range(self.x + 1, self.x + self.y + 1))

    def __len__(self):
        return self.y

    def split(self, size: int) -> list["Interval"]:
        return [Interval(s, min(size, self.hi - s)) for s in range(self.x, self.hi, size)]


@dataclass(frozen=True)
class SieveConfig:
    spf_limit: int = 1 << 26
    segment_size: int = 1 << 16
    rng_seed: int = 0

    def __post_init__(self):
        if self.spf_limit < 2:
            raise ValueError("spf_limit must be >= 2")
        if self.segment_size < 1:
            raise ValueError("segment_size must be >= 1")


DEFAULT_CONFIG = SieveConfig()

_prime_cache = np.array([], dtype=np.int64)
_prime_cache_bound = 1


def _prime_array(bound: int) -> np.ndarray:
    global _prime_cache, _prime_cache_bound
    if bound > _prime_cache_bound:
        top = max(bound, 2 * _prime_cache_bound, 1 << 16)
        flags = np.ones(top + 1, dtype=bool)
        flags[:2] = False
        for p in range(2, isqrt(top) + 1):
            if flags[p]:
                flags[p * p::p] = False
        _prime_cache = np.flatnonzero(flags).astype(np.int64)
        _prime_cache_bound = top
    return _prime_cache[: np.searchsorted(_prime_cache, bound, side="right")]


def primes_up_to(bound: int) -> list[int]:
    """All primes <= bound in ascending order."""
    if bound < 2:
        return []
    return _prime_array(bound).tolist()


def _offsets(lo: int, primes: np.ndarray) -> np.ndarray:
    """(-lo) mod p for every p, without overflowing int64 for huge lo."""
    if lo < 1 << 62:
        return (-np.int64(lo)) % primes
    if primes.size and primes[-1] >= 1 << 32:
        return np.array([-lo % p for p in primes.tolist()], dtype=np.int64)
    r = np.zeros_like(primes)
    for shift in range((lo.bit_length() // 30) * 30, -1, -30):
        r = (r * (1 << 30) + ((lo >> shift) & ((1 << 30) - 1))) % primes
    return (-r) % primes


def _factor_segment(lo: int, length: int, spf_limit: int, seed: int) -> list[tuple[int, Factorization]]:
    hi = lo + length - 1
    root = isqrt(hi)
    full = root <= spf_limit
    bound = root if full else min(spf_limit, FALLBACK_PRIME_BOUND)
    primes = _prime_array(bound)
    offs = _offsets(lo, primes)
    hit = offs < length

    rem = list(range(lo, lo + length))
    facs: list[list[tuple[int, int]]] = [[] for _ in range(length)]
    for p, off in zip(primes[hit].tolist(), offs[hit].tolist()):
        for i in range(off, length, p):
            r, e = rem[i] // p, 1
            while r % p == 0:
                r //= p
                e += 1
            rem[i] = r
            facs[i].append((p, e))

    out = []
    bound_sq = bound * bound
    for i, r in enumerate(rem):
        f = facs[i]
        if r > 1:
            if full or r <= bound_sq:
                f.append((r, 1))
            elif bound >= TRIAL_BOUND:
                f.extend(sorted(factor_cofactor(r, seed).items()))
            else:
                f.extend(factor(r, seed).entries)
        out.append((lo + i, Factorization(tuple(f))))
    return out


def _factor_chunk(args):
    iv, cfg = args
    out = []
    for seg in iv.split(cfg.segment_size):
        out.extend(_factor_segment(seg.lo, seg.y, cfg.spf_limit, cfg.rng_seed))
    return out


def factor_interval(I: Interval, cfg: SieveConfig = DEFAULT_CONFIG, workers: int = 1) -> list[tuple[int, Factorization]]:
    """Factor every n in (x, x+y], ascending.

    When sqrt(x+y) <= ``cfg.spf_limit`` every n is fully factored by sieving.
    Otherwise primes up to min(spf_limit, 10**6) are sieved and the remaining
    cofactors are finished with Miller-Rabin / rho. Output is independent of
    ``segment_size`` and ``workers``.
    """
    if workers <= 1 or I.y < 2 * workers:
        return _factor_chunk((I, cfg))
    chunk = -(-I.y // workers)
    parts = [(iv, cfg) for iv in I.split(chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_factor_chunk, parts))
    return [item for part in results for item in part]


def _squarefree_flags(m: int) -> np.ndarray:
    flags = np.ones(m + 1, dtype=bool)
    flags[0] = False
    for p in range(2, isqrt(m) + 1):
        flags[p * p::p * p] = False
    return flags


def enumerate_powerful(I: Interval) -> list[int]:
    """Powerful numbers in (x, x+y] via the unique form a^2 b^3, b squarefree."""
    x, top = I.x, I.hi
    bmax = iroot(top, 3)
    sqf = _squarefree_flags(bmax)
    out = []
    for b in range(1, bmax + 1):
        if not sqf[b]:
            continue
        b3 = b**3
        a_lo = isqrt(x // b3) + 1
        a_hi = isqrt(top // b3)
        out.extend(a * a * b3 for a in range(a_lo, a_hi + 1))
    out.sort()
    return out


def enumerate_k_powered(I: Interval, k, cfg: SieveConfig = DEFAULT_CONFIG, workers: int = 1) -> list[int]:
    k = as_threshold(k)
    return [n for n, F in factor_interval(I, cfg, workers) if is_k_powered(F, k)]


def count_rough(I: Interval) -> int:
    """How many n in (x, x+y] have no prime factor p with p*p <= y."""
    if I.y < 2:
        raise ValueError("count_rough needs y >= 2")
    alive = np.ones(I.y, dtype=bool)
    primes = _prime_array(isqrt(I.y))
    for p, off in zip(primes.tolist(), _offsets(I.lo, primes).tolist()):
        alive[off::p] = False
    return int(alive.sum())


def default_workers() -> int:
    return max(1, int(os.environ.get("POWEREDLAB_THREADS", "1")))
