"""The quartic identity behind the 7-term progression argument, the abc
triples it produces, progression search among powered numbers, and r_k(N).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional

from .arith import as_threshold, factor, iroot, is_k_powered
from .sieve import DEFAULT_CONFIG, Interval, SieveConfig, enumerate_powerful, factor_interval

__all__ = [
    "AbcTriple", "APWitness", "APFreeResult", "identity_check",
    "build_abc_triple", "reduced_triple", "abc_quality", "d_structure_scan",
    "find_ap_powered", "find_aps", "threshold_y", "rk_exact", "rk_greedy",
    "is_ap_free", "bound_eval", "DStructureError", "CapacityError",
    "RK_CAPS",
]


class DStructureError(ArithmeticError):
    """The gcd D of the identity's two sides is not of the form 2^e2 3^e3, e2<=4, e3<=1."""


class CapacityError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# identity and abc triples
# ---------------------------------------------------------------------------

def identity_check(n: int, d: int) -> tuple[int, int, int, bool]:
    """Evaluate (n+2d)^3 (n-2d) + 16 d^3 (n+d) = n^3 (n+4d) exactly."""
    lhs1 = (n + 2 * d) ** 3 * (n - 2 * d)
    lhs2 = 16 * d**3 * (n + d)
    rhs = n**3 * (n + 4 * d)
    return lhs1, lhs2, rhs, lhs1 + lhs2 == rhs


@dataclass(frozen=True)
class AbcTriple:
    n: int
    d: int
    t: int
    n_red: int
    d_red: int
    D: int
    e2: int
    e3: int
    a: int
    b: int
    c: int
    quality: Optional[float]

    def to_dict(self) -> dict:
        out = {k: str(v) for k, v in self.__dict__.items() if k != "quality"}
        out["e2"], out["e3"] = self.e2, self.e3
        out["quality"] = self.quality
        return out


def _valuation(m: int, p: int) -> tuple[int, int]:
    e = 0
    while m % p == 0:
        m //= p
        e += 1
    return e, m


def reduced_triple(n: int, d: int) -> AbcTriple:
    """Reduce (n, d) by t = gcd(n, d) and divide the identity through by D.

    Raises :class:`DStructureError` if D has a prime other than 2, 3 or
    exceeds 2^4 * 3.
    """
    if d < 1:
        raise ValueError("d must be >= 1 (d = 0 is a trivial progression)")
    if n <= 2 * d:
        raise ValueError(f"need n > 2d so that a >= 1, got n={n}, d={d}")
    t = gcd(n, d)
    nr, dr = n // t, d // t
    lhs1, lhs2, rhs, _ = identity_check(nr, dr)
    D = gcd(rhs, lhs2)
    e2, rest = _valuation(D, 2)
    e3, rest = _valuation(rest, 3)
    if rest != 1 or e2 > 4 or e3 > 1:
        raise DStructureError(f"D={D} for reduced pair ({nr}, {dr})")
    return AbcTriple(n, d, t, nr, dr, D, e2, e3, lhs1 // D, lhs2 // D, rhs // D, None)


def build_abc_triple(n: int, d: int) -> AbcTriple:
    """Reduced abc triple from the identity, with its quality."""
    tr = reduced_triple(n, d)
    return AbcTriple(**{**tr.__dict__, "quality": abc_quality(tr.a, tr.b, tr.c)})


def _radical(*nums: int) -> int:
    primes: set[int] = set()
    for m in nums:
        primes.update(factor(m).primes)
    return math.prod(primes)


def abc_quality(a: int, b: int, c: int) -> float:
    """log c / log rad(abc) for coprime a + b = c."""
    if a < 1 or b < 1 or a + b != c or gcd(a, b) != 1:
        raise ValueError(f"({a}, {b}, {c}) is not a coprime triple a + b = c")
    return math.log(c) / math.log(_radical(a, b, c))


def d_structure_scan(max_n: int, pairs: Optional[Iterable[tuple[int, int]]] = None) -> tuple[int, list[dict]]:
    """Check every coprime pair 2d' < n' <= max_n.

    Returns (pairs checked, violations). A violation is any pair whose D is not
    2^e2 3^e3 with e2 <= 4, e3 <= 1, or whose reduced triple fails a + b = c or
    pairwise coprimality.
    """
    if pairs is None:
        pairs = ((n, d) for n in range(3, max_n + 1) for d in range(1, (n - 1) // 2 + 1) if gcd(n, d) == 1)
    checked, bad = 0, []
    for n, d in pairs:
        checked += 1
        try:
            tr = reduced_triple(n, d)
        except DStructureError as exc:
            bad.append({"n": n, "d": d, "reason": str(exc)})
            continue
        a, b, c = tr.a, tr.b, tr.c
        if a + b != c or gcd(a, b) != 1 or gcd(a, c) != 1 or gcd(b, c) != 1:
            bad.append({"n": n, "d": d, "reason": f"triple ({a}, {b}, {c}) not coprime or a+b != c"})
    return checked, bad


def top_quality(max_n: int, count: int) -> list[AbcTriple]:
    """Highest-quality reduced triples over coprime 2d' < n' <= max_n.

    Ties break by (c, a) ascending.
    """
    triples = [build_abc_triple(n, d) for n in range(3, max_n + 1)
               for d in range(1, (n - 1) // 2 + 1) if gcd(n, d) == 1]
    triples.sort(key=lambda tr: (-tr.quality, tr.c, tr.a))
    return triples[:count]


# ---------------------------------------------------------------------------
# progressions among powered numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class APWitness:
    start: int
    d: int
    length: int

    @property
    def terms(self) -> list[int]:
        return [self.start + i * self.d for i in range(self.length)]

    def to_dict(self) -> dict:
        return {"start": str(self.start), "d": str(self.d), "length": self.length,
                "terms": [str(t) for t in self.terms]}


def find_aps(values: Iterable[int], L: int) -> list[APWitness]:
    """All maximal progressions of length >= L inside a finite set.

    Maximal means not extendable by one more term at either end with the same
    difference. Ordered by (start, d).
    """
    if L < 3:
        raise ValueError("progression length L must be >= 3")
    vals = sorted(set(values))
    members = set(vals)
    out = []
    for i, s in enumerate(vals):
        for t in vals[i + 1:]:
            d = t - s
            if s - d in members:
                continue
            # cheap reject: the L-th term must exist
            if s + (L - 1) * d not in members:
                continue
            length = 2
            nxt = t + d
            while nxt in members:
                length += 1
                nxt += d
            if length >= L:
                out.append(APWitness(s, d, length))
    return out


def _solutions(I: Interval, pred: str, k, cfg: SieveConfig, workers: int) -> list[int]:
    if pred == "powerful":
        return enumerate_powerful(I)
    if pred == "k-powered":
        k = as_threshold(k)
        return [n for n, F in factor_interval(I, cfg, workers) if is_k_powered(F, k)]
    raise ValueError(f"unknown predicate {pred!r} (use 'powerful' or 'k-powered')")


def find_ap_powered(I: Interval, pred: str = "powerful", L: int = 7, k=None,
                    cfg: SieveConfig = DEFAULT_CONFIG, workers: int = 1) -> list[APWitness]:
    """Maximal L-term (or longer) progressions of powerful / k-powered numbers in I."""
    return find_aps(_solutions(I, pred, k, cfg, workers), L)


def threshold_y(x: int, k) -> int:
    """floor(x^((4k-5)/(8k))) computed exactly.

    Short intervals (x, x+y] with y below this are the ones in which 7-term
    progressions of k-powered numbers are ruled out, conditionally on abc.
    """
    k = as_threshold(k)
    if k <= Fraction(5, 4):
        raise ValueError(f"threshold_y needs k > 5/4, got {k}")
    e = (4 * k - 5) / (8 * k)
    return iroot(x**e.numerator, e.denominator)


# ---------------------------------------------------------------------------
# r_k(N)
# ---------------------------------------------------------------------------

RK_CAPS = {3: 40, 4: 48}
RK_CAP_DEFAULT = 64


@dataclass(frozen=True)
class APFreeResult:
    N: int
    k: int
    size: int
    witness: tuple[int, ...]
    method: str

    def to_dict(self) -> dict:
        return {"N": self.N, "k": self.k, "size": self.size,
                "witness": list(self.witness), "method": self.method}

    def csv_row(self) -> list[str]:
        return [str(self.N), str(self.k), str(self.size), self.method,
                ";".join(map(str, self.witness))]


RK_CSV_COLUMNS = ("N", "k", "size", "method", "witness")


def is_ap_free(values: Iterable[int], k: int) -> bool:
    """No k distinct terms in arithmetic progression (d >= 1)."""
    vals = sorted(set(values))
    members = set(vals)
    for i, s in enumerate(vals):
        for t in vals[i + 1:]:
            d = t - s
            if all(s + j * d in members for j in range(2, k)):
                return False
    return True


def _completes(mask: int, c: int, k: int) -> bool:
    """Would adding c (larger than every bit in mask) close a k-term progression?"""
    for d in range(1, (c - 1) // (k - 1) + 1):
        for j in range(1, k):
            if not mask >> (c - j * d) & 1:
                break
        else:
            return True
    return False


def _rk_cap(k: int) -> int:
    return RK_CAPS.get(k, RK_CAP_DEFAULT)


def rk_exact(N: int, k: int, cap: Optional[int] = None) -> APFreeResult:
    """Largest subset of {1..N} with no k-term progression, by branch and bound.

    r_k(m) is computed for m = 1..N in turn. Since r_k(m) <= r_k(m-1) + 1, each
    step only asks whether a set of size r_k(m-1) + 1 exists; such a set must
    contain 1 and m. The depth-first search over 1..m prunes with
    size + r_k(remaining length) < target, using the values already found.
    """
    if k < 3:
        raise ValueError("k must be >= 3")
    if N < 1:
        raise ValueError("N must be >= 1")
    cap = _rk_cap(k) if cap is None else cap
    if N > cap:
        raise CapacityError(f"rk_exact: N={N} exceeds cap {cap} for k={k}; use rk_greedy")
    r = [0] * (N + 1)
    best: tuple[int, ...] = ()
    for m in range(1, N + 1):
        if m < k:
            r[m], best = m, tuple(range(1, m + 1))
            continue
        found = _search(m, k, r[m - 1] + 1, r)
        if found is None:
            r[m] = r[m - 1]
        else:
            r[m], best = len(found), found
    return APFreeResult(N, k, r[N], best, "exact")


def _search(m: int, k: int, target: int, r: list[int]) -> Optional[tuple[int, ...]]:
    chosen: list[int] = []

    def dfs(c: int, mask: int) -> bool:
        # elements c..m remain; c == m must be taken
        if len(chosen) == target:
            return True
        if c > m:
            return False
        if len(chosen) + r[m - c + 1] < target:
            return False
        if not _completes(mask, c, k):
            chosen.append(c)
            if dfs(c + 1, mask | (1 << c)):
                return True
            chosen.pop()
        if c == m:
            return False
        return dfs(c + 1, mask)

    # 1 is always in the set
    chosen.append(1)
    if dfs(2, 1 << 1) and chosen[-1] == m:
        return tuple(chosen)
    return None


def rk_greedy(N: int, k: int) -> APFreeResult:
    """Lexicographic greedy: take each of 1..N unless it closes a k-term progression."""
    if k < 3:
        raise ValueError("k must be >= 3")
    mask, chosen = 0, []
    for c in range(1, N + 1):
        if not _completes(mask, c, k):
            mask |= 1 << c
            chosen.append(c)
    return APFreeResult(N, k, len(chosen), tuple(chosen), "greedy")


# ---------------------------------------------------------------------------
# bound shapes for r_k(N)
# ---------------------------------------------------------------------------

BOUND_FORMS = ("gowers", "r3_exp", "gt4", "lss")


def gowers_exponent(k: int) -> float:
    """2^(-2^(k+9)); underflows to 0.0 for k >= 1 in double precision."""
    return 2.0 ** -(2 ** (k + 9))


def bound_eval(N: float, form: str, constants: Optional[dict] = None) -> float:
    """Evaluate an r_k(N) upper-bound shape.

    gowers: N (log log N)^(-c_k), c_k = 2^(-2^(k+9)), needs constant k.
    r3_exp: N exp(-c (log N)^(1/9)).
    gt4:    N (log N)^(-c).
    lss:    N exp(-(log log N)^c_k), needs constant c_k.
    """
    constants = dict(constants or {})
    if form not in BOUND_FORMS:
        raise ValueError(f"unknown bound form {form!r}; choose from {BOUND_FORMS}")
    if form in ("gowers", "lss") and not N > math.e:
        raise ValueError(f"{form} needs N > e so that log log N > 0")
    if not N > 1:
        raise ValueError("N must exceed 1")
    if form == "gowers":
        ck = gowers_exponent(int(constants.get("k", 3)))
        return N * math.log(math.log(N)) ** (-ck)
    if form == "r3_exp":
        return N * math.exp(-constants.get("c", 1) * math.log(N) ** (1 / 9))
    if form == "gt4":
        return N * math.log(N) ** (-constants.get("c", 1))
    return N * math.exp(-math.log(math.log(N)) ** constants.get("c_k", 1))
