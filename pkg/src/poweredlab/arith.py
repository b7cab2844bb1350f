"""Exact integer predicates: factorization, kernel, squarefree/powerful split,
smooth parts and the k-powered test.

Every decision here is made with integer arithmetic; the only floating point
output is :func:`powered_exponent`, which is informational.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, total_ordering
from math import gcd, isqrt
from typing import Iterable, Union

__all__ = [
    "Factorization", "UNIT", "factor", "is_prime", "iroot", "floor_power",
    "as_threshold", "kernel", "squarefree_part", "powerful_part",
    "largest_prime_factor", "smallest_prime_factor", "is_powerful",
    "is_k_full", "is_squarefree", "is_k_powered", "powered_exponent",
    "smooth_part", "is_w_smooth",
]

TRIAL_BOUND = 1 << 12
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# First-13-prime bases are proven deterministic below this bound.
_MR_DETERMINISTIC = 3317044064679887385961981
_MR_EXTRA_BASES = (43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


@total_ordering
class _Unit:
    """Smallest prime factor of 1: compares greater than every number."""

    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __eq__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __hash__(self):
        return hash("poweredlab.UNIT")

    def __repr__(self):
        return "UNIT"


UNIT = _Unit()


@dataclass(frozen=True)
class Factorization:
    """Prime-power decomposition, primes strictly increasing.

    ``entries`` is a tuple of ``(prime, exponent)`` pairs; the empty tuple is 1.
    Construction does not re-run primality checks (the factoring routines
    produce certified primes); call :meth:`check` to validate explicitly.
    """

    entries: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "Factorization":
        return cls(tuple(sorted((int(p), int(e)) for p, e in pairs)))

    @property
    def value(self) -> int:
        v = 1
        for p, e in self.entries:
            v *= p**e
        return v

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.entries]

    def check(self) -> None:
        last = 1
        for p, e in self.entries:
            if p <= last:
                raise ValueError(f"primes not strictly increasing at {p}")
            if e < 1:
                raise ValueError(f"exponent {e} of {p} is not positive")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            last = p

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __str__(self):
        if not self.entries:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.entries)


Number = Union[int, Factorization]


def _fac(n: Number) -> Factorization:
    if isinstance(n, Factorization):
        return n
    return factor(n)


# ---------------------------------------------------------------------------
# primality and factoring
# ---------------------------------------------------------------------------

@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = bytearray([1]) * (TRIAL_BOUND + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(TRIAL_BOUND) + 1):
        if sieve[p]:
            sieve[p * p::p] = bytearray(len(range(p * p, TRIAL_BOUND + 1, p)))
    return tuple(i for i, flag in enumerate(sieve) if flag)


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases.

    Deterministic for n < 3.3e24; above that 12 more bases are added.
    """
    if n < 2:
        return False
    for p in _small_primes()[:25]:
        if n % p == 0:
            return n == p
    if n < 101 * 101:
        return True
    bases = _MR_BASES if n < _MR_DETERMINISTIC else _MR_BASES + _MR_EXTRA_BASES
    return all(_strong_probable_prime(n, a) for a in bases)


def _brent(n: int, rng: random.Random) -> int:
    """Return a non-trivial factor of the odd composite n (Brent's rho)."""
    while True:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g


def _split(n: int, out: dict[int, int], rng: random.Random) -> None:
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        r = isqrt(m)
        if r * r == m:
            stack += [r, r]
            continue
        f = _brent(m, rng)
        stack += [f, m // f]


def factor_cofactor(m: int, seed: int = 0) -> dict[int, int]:
    """Factor m, assumed free of primes below :data:`TRIAL_BOUND`."""
    out: dict[int, int] = {}
    _split(m, out, random.Random(seed))
    return out


def factor(n: int, seed: int = 0) -> Factorization:
    """Exact prime factorization of n >= 1.

    Trial division by primes up to 4096, then Miller-Rabin / Brent-rho on the
    cofactor. ``seed`` only steers the rho walk; the result never depends on it.
    """
    n = int(n)
    if n < 1:
        raise ValueError("factor() needs n >= 1")
    out: dict[int, int] = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n > 1:
        if n < TRIAL_BOUND * TRIAL_BOUND:
            out[n] = out.get(n, 0) + 1
        else:
            for p, e in factor_cofactor(n, seed).items():
                out[p] = out.get(p, 0) + e
    return Factorization(tuple(sorted(out.items())))


# ---------------------------------------------------------------------------
# exact rational powers
# ---------------------------------------------------------------------------

def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, exactly."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    if k == 2:
        return isqrt(n)
    r = 1 << -(-n.bit_length() // k)  # r >= true root
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def floor_power(y: int, exponent: Fraction) -> int:
    """floor(y ** exponent) for rational exponent >= 0, exactly."""
    exponent = Fraction(exponent)
    if exponent < 0:
        raise ValueError("negative exponent")
    return iroot(y**exponent.numerator, exponent.denominator)


def as_threshold(k) -> Fraction:
    """Coerce k to a rational powered threshold (k >= 1).

    Accepts int, Fraction or a ``"p/q"`` string. Floats are rejected so that
    the predicate stays exact.
    """
    if isinstance(k, float):
        raise TypeError("k must be rational (int, Fraction or 'p/q'), not float")
    k = Fraction(k)
    if k < 1:
        raise ValueError(f"powered threshold must be >= 1, got {k}")
    return k


# ---------------------------------------------------------------------------
# predicates
# ---------------------------------------------------------------------------

def kernel(n: Number) -> int:
    """Squarefree kernel: product of the distinct primes dividing n."""
    return math.prod(p for p, _ in _fac(n))


def squarefree_part(n: Number) -> int:
    """Product of the primes dividing n exactly once."""
    return math.prod(p for p, e in _fac(n) if e == 1)


def powerful_part(n: Number) -> int:
    return math.prod(p**e for p, e in _fac(n) if e >= 2)


def largest_prime_factor(n: Number) -> int:
    """Largest prime factor; 1 for n = 1."""
    F = _fac(n)
    return F.entries[-1][0] if F.entries else 1


def smallest_prime_factor(n: Number):
    """Smallest prime factor, or :data:`UNIT` for n = 1."""
    F = _fac(n)
    return F.entries[0][0] if F.entries else UNIT


def is_powerful(n: Number) -> bool:
    return all(e >= 2 for _, e in _fac(n))


def is_k_full(n: Number, k: int) -> bool:
    return all(e >= k for _, e in _fac(n))


def is_squarefree(n: Number) -> bool:
    return all(e == 1 for _, e in _fac(n))


def is_k_powered(n: Number, k) -> bool:
    """kernel(n) <= n**(1/k), tested as kernel**num <= n**den."""
    F = _fac(n)
    k = as_threshold(k)
    return kernel(F) ** k.numerator <= F.value**k.denominator


def powered_exponent(n: Number) -> float:
    """log n / log kernel(n); the largest k for which n is k-powered."""
    F = _fac(n)
    if not F.entries:
        raise ValueError("powered_exponent is undefined at n = 1")
    # exponent-weighted log sum keeps precision for large n
    logs = [(math.log(p), e) for p, e in F]
    return math.fsum(lp * e for lp, e in logs) / math.fsum(lp for lp, _ in logs)


def smooth_part(n: Number, w: int) -> int:
    """Largest divisor of n whose prime factors are all <= w."""
    return math.prod(p**e for p, e in _fac(n) if p <= w)


def is_w_smooth(n: Number, w: int) -> bool:
    return all(p <= w for p, _ in _fac(n))
