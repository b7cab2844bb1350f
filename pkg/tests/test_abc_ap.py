import math
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from poweredlab import Interval
from poweredlab.abc_ap import (
    APWitness,
    CapacityError,
    abc_quality,
    bound_eval,
    build_abc_triple,
    d_structure_scan,
    find_ap_powered,
    find_aps,
    identity_check,
    is_ap_free,
    reduced_triple,
    rk_exact,
    rk_greedy,
    threshold_y,
    top_quality,
)

import oracles


def test_identity_examples():
    assert identity_check(3, 1) == (125, 64, 189, True)
    assert identity_check(2, 1) == (0, 48, 48, True)
    assert identity_check(7, 0) == (7**4, 0, 7**4, True)


@given(st.integers(-10**12, 10**12), st.integers(-10**12, 10**12))
def test_identity_against_expansion(n, d):
    lhs1, lhs2, rhs, holds = identity_check(n, d)
    assert holds
    assert lhs1 == n**4 + 4 * n**3 * d - 16 * n * d**3 - 16 * d**4
    assert rhs == n**4 + 4 * n**3 * d


def test_triple_3_1():
    tr = build_abc_triple(3, 1)
    assert (tr.t, tr.D, tr.a, tr.b, tr.c) == (1, 1, 125, 64, 189)
    assert tr.quality == pytest.approx(math.log(189) / math.log(210), rel=1e-14)
    assert tr.quality == pytest.approx(0.98029, abs=1e-5)


def test_triple_4_1():
    tr = build_abc_triple(4, 1)
    assert (tr.D, tr.e2, tr.e3, tr.a, tr.b, tr.c) == (16, 4, 0, 27, 5, 32)
    assert tr.quality == pytest.approx(math.log(32) / math.log(30), rel=1e-14)
    assert tr.quality == pytest.approx(1.01898, abs=1e-5)


def test_triple_reduction():
    tr = build_abc_triple(6, 2)
    assert (tr.t, tr.n_red, tr.d_red) == (2, 3, 1)
    assert (tr.a, tr.b, tr.c) == (125, 64, 189)


def test_triple_errors():
    with pytest.raises(ValueError):
        build_abc_triple(2, 1)
    with pytest.raises(ValueError):
        build_abc_triple(5, 0)


@given(st.integers(3, 10**6), st.integers(1, 10**6), st.integers(1, 50))
def test_scale_invariance(n, d, m):
    if n <= 2 * d:
        n, d = 2 * d + n, d
    a = reduced_triple(n, d)
    b = reduced_triple(m * n, m * d)
    assert (a.a, a.b, a.c, a.D) == (b.a, b.b, b.c, b.D)


@given(st.integers(3, 10**9), st.integers(1, 10**9))
def test_triple_invariants(n, d):
    if n <= 2 * d:
        n = 2 * d + n
    tr = reduced_triple(n, d)
    assert tr.a + tr.b == tr.c
    assert math.gcd(tr.a, tr.b) == math.gcd(tr.b, tr.c) == math.gcd(tr.a, tr.c) == 1
    assert tr.D == 2**tr.e2 * 3**tr.e3 and 1 <= tr.D <= 48
    # D is the literal gcd of the two stated products
    nr, dr = tr.n_red, tr.d_red
    assert tr.D == math.gcd(nr**3 * (nr + 4 * dr), 16 * dr**3 * (nr + dr))


def test_d_structure_small_scan():
    checked, bad = d_structure_scan(200)
    assert bad == []
    assert checked == sum(1 for n in range(3, 201) for d in range(1, (n - 1) // 2 + 1) if math.gcd(n, d) == 1)


def test_d_structure_reports_violations():
    # feed a non-coprime pair list through the scan's checker: still fine after reduction
    checked, bad = d_structure_scan(0, pairs=[(4, 1), (8, 2), (9, 3)])
    assert checked == 3 and bad == []


def test_e3_attained():
    # D = 3 happens when 3 | n' + d' and 3 does not divide n'
    tr = reduced_triple(5, 1)
    assert tr.e3 == 1


def test_abc_quality():
    assert abc_quality(1, 8, 9) == pytest.approx(math.log(9) / math.log(6), rel=1e-14)
    assert abc_quality(1, 8, 9) == pytest.approx(1.22629, abs=1e-5)
    assert abc_quality(1, 1, 2) == 1.0
    assert abc_quality(27, 5, 32) == pytest.approx(math.log(32) / math.log(30), rel=1e-14)
    with pytest.raises(ValueError):
        abc_quality(2, 4, 6)
    with pytest.raises(ValueError):
        abc_quality(1, 2, 4)


def test_top_quality_ordering():
    top = top_quality(30, 5)
    qs = [t.quality for t in top]
    assert qs == sorted(qs, reverse=True)
    assert top[0].quality >= build_abc_triple(4, 1).quality


# --- progressions ----------------------------------------------------------------

def test_ap_examples():
    wits = find_ap_powered(Interval(0, 300), "powerful", 3)
    assert APWitness(1, 24, 3) in wits
    assert APWitness(1, 24, 3).terms == [1, 25, 49]
    assert find_ap_powered(Interval(0, 100), "powerful", 7) == []
    assert find_ap_powered(Interval(0, 3), "powerful", 3) == []
    assert wits == sorted(wits, key=lambda w: (w.start, w.d))


def _brute(I, member, L):
    return [APWitness(*t) for t in oracles.ap_bruteforce(I.lo, I.hi, member, L)]


@pytest.mark.parametrize("x,y,L", [(0, 300, 3), (0, 3000, 3), (0, 10**4, 4), (10**6, 2 * 10**4, 3)])
def test_ap_powerful_matches_bruteforce(x, y, L):
    I = Interval(x, y)
    assert find_ap_powered(I, "powerful", L) == _brute(I, oracles.naive_powerful, L)


def test_ap_k_powered_matches_bruteforce():
    I = Interval(0, 1500)
    k = Fraction(3, 2)
    members = {n for n in I if oracles.naive_k_powered(n, k)}
    got = find_ap_powered(I, "k-powered", 3, k=k)
    assert got == _brute(I, members.__contains__, 3)
    assert any(w.length >= 4 for w in got)


def test_find_aps_maximal():
    wits = find_aps([1, 2, 3, 4, 5, 7, 9], 3)
    assert APWitness(1, 1, 5) in wits
    assert APWitness(2, 1, 4) not in wits
    assert APWitness(1, 2, 5) in wits  # 1,3,5,7,9
    with pytest.raises(ValueError):
        find_aps([1, 2, 3], 2)


def test_threshold_y():
    assert threshold_y(10**8, Fraction(5, 2)) == 100
    assert threshold_y(2, Fraction(5, 2)) == 1
    assert threshold_y(10**12, 2) == 177
    with pytest.raises(ValueError):
        threshold_y(10**6, Fraction(5, 4))


# --- r_k(N) ----------------------------------------------------------------------

def test_rk_examples():
    r = rk_exact(4, 3)
    assert r.size == 3 and is_ap_free(r.witness, 3)
    assert rk_exact(7, 7).size == 6
    for k in (3, 5, 7):
        for N in range(1, k):
            assert rk_exact(N, k).size == N


def test_rk_cap():
    with pytest.raises(CapacityError):
        rk_exact(41, 3)
    with pytest.raises(ValueError):
        rk_exact(5, 2)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_rk_matches_bruteforce_upto_16(k):
    table = oracles.rk_table_bruteforce(16, k)
    for N in range(1, 17):
        res = rk_exact(N, k)
        assert res.size == table[N]
        assert not oracles.has_k_ap(res.witness, k)
        assert set(res.witness) <= set(range(1, N + 1))


def test_rk_monotone():
    for k in (3, 4, 5):
        sizes = [rk_exact(N, k).size for N in range(1, 30)]
        for a, b in zip(sizes, sizes[1:]):
            assert a <= b <= a + 1
    for N in range(1, 30):
        assert rk_exact(N, 3).size <= rk_exact(N, 4).size <= rk_exact(N, 5).size


def test_rk_greedy():
    g = rk_greedy(13, 3)
    assert g.witness == (1, 2, 4, 5, 10, 11, 13)
    assert g.size <= rk_exact(13, 3).size
    assert not oracles.has_k_ap(g.witness, 3)
    assert rk_greedy(4, 7).witness == (1, 2, 3, 4)
    g7 = rk_greedy(20, 7)
    assert g7.size >= 18 and not oracles.has_k_ap(g7.witness, 7)


def test_rk_greedy_random_is_ap_free():
    rng = random.Random(1)
    for _ in range(20):
        N, k = rng.randint(1, 80), rng.randint(3, 8)
        g = rk_greedy(N, k)
        assert is_ap_free(g.witness, k) == (not oracles.has_k_ap(g.witness, k))
        assert is_ap_free(g.witness, k)


def test_is_ap_free():
    assert is_ap_free([1, 2, 4, 5], 3)
    assert not is_ap_free([1, 3, 5], 3)
    assert is_ap_free([1, 3, 5], 4)


# --- bound shapes ----------------------------------------------------------------

def test_bound_eval():
    N = math.e**math.e
    assert bound_eval(N, "lss", {"c_k": 1}) == pytest.approx(N * math.exp(-1), rel=1e-12)
    M = math.exp(512)
    assert bound_eval(M, "r3_exp", {"c": 1}) == pytest.approx(M * math.exp(-2), rel=1e-12)
    g = bound_eval(1e6, "gowers", {"k": 3})
    assert g <= 1e6 and g == pytest.approx(1e6, rel=1e-12)
    assert bound_eval(1e6, "gt4", {"c": 1}) == pytest.approx(1e6 / math.log(1e6))
    with pytest.raises(ValueError):
        bound_eval(2.0, "lss", {})
    with pytest.raises(ValueError):
        bound_eval(100, "behrend", {})
