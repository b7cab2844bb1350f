import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poweredlab import (
    UNIT,
    Factorization,
    Interval,
    factor,
    factor_interval,
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
from poweredlab.arith import as_threshold

import oracles


@pytest.fixture(scope="module")
def upto_1e6():
    return factor_interval(Interval(0, 10**6))


def test_factor_examples():
    assert factor(360).entries == ((2, 3), (3, 2), (5, 1))
    assert factor(1).entries == ()
    assert factor(10**9 + 7).entries == ((10**9 + 7, 1),)
    assert oracles.naive_is_prime(10**9 + 7)
    with pytest.raises(ValueError):
        factor(0)


@pytest.mark.parametrize("n", [2**61 - 1, (2**31 - 1) * (2**61 - 1), 600851475143,
                               999999000001 * 999999999989, 3**40, 2**89 - 1,
                               1000000007**2 * 998244353])
def test_factor_large(n):
    F = factor(n)
    F.check()
    assert F.value == n


def test_factor_seed_does_not_matter():
    n = 1000000007 * 998244353 * 1000003
    assert {factor(n, seed=s) for s in range(5)} == {factor(n)}


def test_is_prime_small_agrees_with_trial_division():
    assert [n for n in range(20000) if is_prime(n)] == [n for n in range(20000) if oracles.naive_is_prime(n)]


def test_is_prime_strong_pseudoprimes():
    # strong pseudoprimes to several small bases
    for n in (2047, 1373653, 25326001, 3215031751, 2152302898747, 3474749660383, 341550071728321,
              3825123056546413051, 318665857834031151167461):
        assert not is_prime(n)


def test_check_rejects_bad_factorizations():
    with pytest.raises(ValueError):
        Factorization(((4, 1),)).check()
    with pytest.raises(ValueError):
        Factorization(((3, 1), (2, 1))).check()
    with pytest.raises(ValueError):
        Factorization(((2, 0),)).check()


def test_kernel_and_parts():
    assert kernel(648) == 6
    assert kernel(1) == 1
    assert kernel(360) == 30
    assert squarefree_part(72) == 1
    assert squarefree_part(360) == 5
    assert squarefree_part(30) == 30
    assert powerful_part(360) == 72
    assert powerful_part(30) == 1
    assert powerful_part(648) == 648


def test_prime_factor_extremes():
    assert largest_prime_factor(360) == 5
    assert smallest_prime_factor(360) == 2
    assert largest_prime_factor(1) == 1
    assert smallest_prime_factor(1) is UNIT
    assert largest_prime_factor(649) == 59
    assert UNIT > 10**100 and not UNIT < 3 and UNIT == UNIT


def test_predicates():
    assert is_powerful(72)
    assert is_k_full(648, 3)
    assert not is_k_full(648, 4)
    assert is_squarefree(30)
    assert is_powerful(1) and is_k_full(1, 5) and is_squarefree(1)


def test_k_powered_examples():
    assert is_k_powered(648, Fraction(7, 2))
    assert not is_k_powered(648, 4)
    for k in (1, Fraction(3, 2), 7, "100/3"):
        assert is_k_powered(1, k)


def test_threshold_parsing():
    assert as_threshold("7/2") == Fraction(7, 2)
    assert as_threshold(2) == 2
    with pytest.raises(TypeError):
        as_threshold(2.5)
    with pytest.raises(ValueError):
        as_threshold(Fraction(1, 2))


def test_powered_exponent():
    assert powered_exponent(648) == pytest.approx(3.613147, abs=5e-7)
    assert powered_exponent(2) == 1.0
    assert powered_exponent(8) == pytest.approx(3.0, rel=1e-15)
    with pytest.raises(ValueError):
        powered_exponent(1)


def test_smooth_part():
    assert smooth_part(720, 3) == 144
    assert smooth_part(720, 5) == 720
    assert smooth_part(7, 2) == 1
    assert is_w_smooth(720, 5) and not is_w_smooth(720, 3)


def test_iroot_and_floor_power():
    assert iroot(10**36, 16) == 177
    assert 177**16 <= 10**36 < 178**16
    assert floor_power(10**8, Fraction(1, 4)) == 100
    assert floor_power(1000, Fraction(1, 2)) == 31
    assert floor_power(10**4, Fraction(2, 3)) == 464


@given(st.integers(0, 10**40), st.integers(1, 12))
def test_iroot_property(n, k):
    r = iroot(n, k)
    assert r**k <= n < (r + 1) ** k


@settings(max_examples=300)
@given(st.integers(1, 10**15))
def test_recomposition_and_primes(n):
    F = factor(n)
    assert F.value == n
    F.check()


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_kernel_facts(a, b):
    assert kernel(a**3) == kernel(a)
    assert kernel(a) <= a
    assert kernel(a) <= kernel(a * b) <= kernel(a) * kernel(b)
    if math.gcd(a, b) == 1:
        assert kernel(a * b) == kernel(a) * kernel(b)


@given(st.integers(1, 10**9), st.fractions(1, 8, max_denominator=24), st.fractions(1, 8, max_denominator=24))
def test_k_powered_monotone(n, k1, k2):
    lo, hi = sorted((k1, k2))
    if is_k_powered(n, hi):
        assert is_k_powered(n, lo)


@given(st.integers(2, 10**12), st.fractions(1, 10, max_denominator=24))
def test_k_powered_matches_exponent(n, k):
    e = powered_exponent(n)
    if abs(e - k) > 1e-9:
        assert is_k_powered(n, k) == (e >= k)


def test_decomposition_upto_1e6(upto_1e6):
    for n, F in upto_1e6:
        q, b = squarefree_part(F), powerful_part(F)
        assert q * b == n
        assert math.gcd(q, b) == 1
        assert is_squarefree(q) and is_powerful(b)


def test_k_full_implies_k_powered_upto_1e6(upto_1e6):
    for _, F in upto_1e6:
        for k in (2, 3, 4):
            if is_k_full(F, k):
                assert is_k_powered(F, k)


def test_smooth_part_is_largest_smooth_divisor():
    N = 10**5
    lp = oracles.largest_prime_table(N)
    divs = oracles.divisor_lists(N)
    for F_pair in factor_interval(Interval(0, N)):
        n, F = F_pair
        for w in (10, 100):
            assert smooth_part(F, w) == max(d for d in divs[n] if lp[d] <= w)
