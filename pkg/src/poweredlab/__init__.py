"""Powered numbers in short intervals: exact predicates, interval counting
experiments, and abc / arithmetic-progression tooling."""

from .arith import (
    UNIT,
    Factorization,
    as_threshold,
    factor,
    floor_power,
    iroot,
    is_k_full,
    is_k_powered,
    is_powerful,
    is_prime,
    is_squarefree,
    is_w_smooth,
    kernel,
    largest_prime_factor,
    powered_exponent,
    powerful_part,
    smallest_prime_factor,
    smooth_part,
    squarefree_part,
)
from .sieve import (
    Interval,
    SieveConfig,
    count_rough,
    enumerate_k_powered,
    enumerate_powerful,
    factor_interval,
    primes_up_to,
)

__version__ = "0.1.0"
