"""Counting experiments over short intervals and the proof-case diagnostics.

Every count is exact; ``bound_value`` is the bound shape with all implicit
constants set to 1 (or to user-supplied constants), so ``ratio`` is a
diagnostic only.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .arith import (
    Factorization,
    as_threshold,
    factor,
    floor_power,
    is_k_powered,
    largest_prime_factor,
)
from .sieve import DEFAULT_CONFIG, Interval, SieveConfig, count_rough, enumerate_powerful, factor_interval

__all__ = [
    "CountReport", "CaseDecomposition", "count_theorem1", "count_theorem2",
    "count_powered", "count_smooth_powerful", "count_verysmooth",
    "count_smooth_divisor", "count_rough_report", "decompose_case",
    "case_census", "verify_b2_claim", "default_z", "reports_to_csv",
    "CSV_COLUMNS",
]

CSV_COLUMNS = ("bound_form", "x", "y", "params", "count", "bound_value", "ratio")

BOUND_T1 = "y^((3k+1)/(4k)) + y^(1-delta)/log(y+1)"
BOUND_T2 = "y*log(w)/log(y) + y*exp(-log(y)/(3*log(w))) + y^(11/12)"
BOUND_T3 = "y/exp(C*(log(log(y)))^c)"
BOUND_EQ1 = "y^(11/12)"
BOUND_EQ3 = "y*log(log(y+2))/log(y+2)"
BOUND_SDIV = "y*(exp(-alpha*log(y)/log(w)) + y^(-alpha/3))"
BOUND_ROUGH = "2y/log(y)"
NO_BOUND = "none"


def _fmt_param(v) -> str:
    if isinstance(v, bool):
        raise TypeError("boolean parameters are not supported")
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    raise TypeError(f"unsupported parameter type {type(v).__name__}")


def _parse_param(s: str):
    if "/" in s:
        return Fraction(s)
    try:
        return int(s)
    except ValueError:
        return float(s)


@dataclass
class CountReport:
    interval: Interval
    params: dict
    count: int
    bound_form: str
    bound_value: Optional[float]
    ratio: Optional[float]
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self, timing: bool = False) -> dict:
        d = {
            "interval": {"x": str(self.interval.x), "y": str(self.interval.y)},
            "params": {k: _fmt_param(v) for k, v in self.params.items()},
            "count": str(self.count),
            "bound_form": self.bound_form,
            "bound_value": self.bound_value,
            "ratio": self.ratio,
        }
        if timing:
            d["elapsed"] = self.elapsed
        return d

    def to_json(self, timing: bool = False) -> str:
        return json.dumps(self.to_dict(timing))

    @classmethod
    def from_dict(cls, d: dict) -> "CountReport":
        return cls(
            interval=Interval(int(d["interval"]["x"]), int(d["interval"]["y"])),
            params={k: _parse_param(v) for k, v in d["params"].items()},
            count=int(d["count"]),
            bound_form=d["bound_form"],
            bound_value=d["bound_value"],
            ratio=d["ratio"],
            elapsed=d.get("elapsed", 0.0),
        )

    @classmethod
    def from_json(cls, s: str) -> "CountReport":
        return cls.from_dict(json.loads(s))

    def csv_row(self) -> list[str]:
        params = ";".join(f"{k}={_fmt_param(v)}" for k, v in self.params.items())
        return [
            self.bound_form, str(self.interval.x), str(self.interval.y), params,
            str(self.count), _fmt_float(self.bound_value), _fmt_float(self.ratio),
        ]


def _fmt_float(v: Optional[float]) -> str:
    return "" if v is None else repr(v)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()


def _report(I, params, count, form, bound, t0) -> CountReport:
    ratio = None if bound is None else count / bound
    return CountReport(I, params, count, form, bound, ratio, time.perf_counter() - t0)


def _check_theorem_range(I: Interval) -> None:
    if not 1 <= I.y <= I.x:
        raise ValueError(f"theorem range needs 1 <= y <= x, got x={I.x}, y={I.y}")


def _check_k(k) -> Fraction:
    k = as_threshold(k)
    if k <= 1:
        raise ValueError(f"k must exceed 1, got {k}")
    return k


def _scan(I, cfg, workers, keep: Callable[[Factorization], bool]) -> int:
    return sum(1 for _, F in factor_interval(I, cfg, workers) if keep(F))


def _powerful_prime_max(F: Factorization) -> int:
    """Largest prime of n/kernel(n), i.e. largest prime with exponent >= 2."""
    return max((p for p, e in F if e >= 2), default=1)


def _sqf_smooth(F: Factorization, bound: int) -> bool:
    """All primes of the squarefree part are <= bound (vacuous when q(n) = 1)."""
    return all(p <= bound for p, e in F if e == 1)


def count_theorem1(I: Interval, k, delta, cfg: SieveConfig = DEFAULT_CONFIG, workers: int = 1) -> CountReport:
    """k-powered n in I whose powerful content n/kernel(n) is y^(1-delta)-smooth."""
    t0 = time.perf_counter()
    _check_theorem_range(I)
    k = _check_k(k)
    delta = Fraction(delta)
    if not 0 <= delta < 1:
        raise ValueError(f"delta must lie in [0, 1), got {delta}")
    cut = floor_power(I.y, 1 - delta)
    count = _scan(I, cfg, workers, lambda F: _powerful_prime_max(F) <= cut and is_k_powered(F, k))
    y, kf = I.y, float(k)
    bound = y ** ((3 * kf + 1) / (4 * kf)) + y ** float(1 - delta) / math.log(y + 1)
    return _report(I, {"k": k, "delta": delta, "cut": cut}, count, BOUND_T1, bound, t0)


def count_theorem2(I: Interval, k, w: int, cfg: SieveConfig = DEFAULT_CONFIG, workers: int = 1) -> CountReport:
    """k-powered n in I whose squarefree part is w-smooth."""
    t0 = time.perf_counter()
    _check_theorem_range(I)
    k = _check_k(k)
    if not 2 <= w <= I.y:
        raise ValueError(f"need 2 <= w <= y, got w={w}")
    count = _scan(I, cfg, workers, lambda F: _sqf_smooth(F, w) and is_k_powered(F, k))
    y = I.y
    lw, ly = math.log(w), math.log(y)
    bound = y * lw / ly + y * math.exp(-ly / (3 * lw)) + y ** (11 / 12)
    return _report(I, {"k": k, "w": w}, count, BOUND_T2, bound, t0)


def count_powered(I: Interval, k, C: float = 1, c: float = 1,
                  cfg: SieveConfig = DEFAULT_CONFIG, workers: int = 1) -> CountReport:
    """All k-powered n in I. The bound needs y >= 3; below that only the count is reported."""
    t0 = time.perf_counter()
    k = _check_k(k)
    count = _scan(I, cfg, workers, lambda F: is_k_powered(F, k))
    bound, form = None, NO_BOUND
    if I.y >= 3:
        form = BOUND_T3
        bound = I.y / math.exp(C * math.log(math.log(I.y)) ** c)
    return _report(I, {"k": k, "C": C, "c": c}, count, form, bound, t0)


def count_smooth_powerful(I: Interval) -> CountReport:
    """Powerful n in I with largest prime p satisfying p*p <= y."""
    t0 = time.perf_counter()
    if I.y < 2:
        raise ValueError("need y >= 2")
    count = sum(1 for n in enumerate_powerful(I) if largest_prime_factor(n) ** 2 <= I.y)
    return _report(I, {}, count, BOUND_EQ1, I.y ** (11 / 12), t0)


def count_verysmooth(I: Interval, cfg: SieveConfig = DEFAULT_CONFIG, workers: int = 1) -> CountReport:
    """n in I whose squarefree part is T-smooth, T = log(y+1) log log(y+2)."""
    t0 = time.perf_counter()
    if I.y < 2:
        raise ValueError("need y >= 2")
    T = math.log(I.y + 1) * math.log(math.log(I.y + 2))
    thr = math.floor(T)
    count = _scan(I, cfg, workers, lambda F: _sqf_smooth(F, thr))
    bound = I.y * math.log(math.log(I.y + 2)) / math.log(I.y + 2)
    return _report(I, {"T": T, "threshold": thr}, count, BOUND_EQ3, bound, t0)


def count_smooth_divisor(I: Interval, alpha, w: int,
                         cfg: SieveConfig = DEFAULT_CONFIG, workers: int = 1) -> CountReport:
    """n in I having a w-smooth divisor d > y^alpha.

    Such a d exists exactly when the w-smooth part of n exceeds y^alpha.
    """
    t0 = time.perf_counter()
    alpha = Fraction(alpha)
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if I.y < 2 or w < 2:
        raise ValueError("need y >= 2 and w >= 2")
    cut = floor_power(I.y, alpha)

    def keep(F):
        return math.prod(p**e for p, e in F if p <= w) > cut

    count = _scan(I, cfg, workers, keep)
    a, ly, lw = float(alpha), math.log(I.y), math.log(w)
    bound = I.y * (math.exp(-a * ly / lw) + I.y ** (-a / 3))
    return _report(I, {"alpha": alpha, "w": w, "cut": cut}, count, BOUND_SDIV, bound, t0)


def count_rough_report(I: Interval) -> CountReport:
    t0 = time.perf_counter()
    count = count_rough(I)
    return _report(I, {}, count, BOUND_ROUGH, 2 * I.y / math.log(I.y), t0)


# ---------------------------------------------------------------------------
# proof-case decomposition
# ---------------------------------------------------------------------------

CASE_LABELS = ("case1", "case2", "case3a", "case3b", "none")


@dataclass(frozen=True)
class CaseDecomposition:
    n: int
    a: int
    b: int
    a1: int
    a2: int
    b1: int
    b2: int
    case_label: str

    def to_dict(self) -> dict:
        return {k: (v if k == "case_label" else str(v)) for k, v in self.__dict__.items()}


def default_z(y: int, k) -> int:
    """floor(y^((k-1)/k))."""
    k = as_threshold(k)
    return floor_power(y, (k - 1) / k)


def decompose_case(n: int, I: Interval, z: int, cut=Fraction(1, 2),
                   F: Optional[Factorization] = None) -> CaseDecomposition:
    """Split n = a1*a2*b1*b2 and assign the proof case.

    a is the squarefree part and b the powerful part; a1 is the longest
    ascending prefix product of a's primes with a1 <= y/z, b1 the longest
    ascending prefix product of b's prime powers with b1 <= z. Case 3 splits on
    whether the least prime of b2 is <= y^cut (case3a) or not (case3b).
    """
    if n not in I:
        raise ValueError(f"{n} is not in ({I.x}, {I.x + I.y}]")
    if z < 1:
        raise ValueError("z must be >= 1")
    F = F or factor(n)
    y = I.y
    a1 = a = b1 = b = 1
    a_open = b_open = True
    b2_min = None
    for p, e in F:
        if e == 1:
            a *= p
            if a_open and a1 * p * z <= y:
                a1 *= p
            else:
                a_open = False
        else:
            q = p**e
            b *= q
            if b_open and b1 * q <= z:
                b1 *= q
            else:
                if b_open:
                    b2_min = p
                b_open = False
    a2, b2 = a // a1, b // b1
    cut = Fraction(cut)
    if b1 * b1 > z:
        label = "case1"
    elif b2 == 1:
        label = "none"
    elif b2_min * b2_min <= z:
        label = "case2"
    elif b2_min ** cut.denominator <= y ** cut.numerator:
        label = "case3a"
    else:
        label = "case3b"
    return CaseDecomposition(n, a, b, a1, a2, b1, b2, label)


def case_census(I: Interval, k, z: Optional[int] = None, cut=Fraction(1, 2),
                cfg: SieveConfig = DEFAULT_CONFIG, workers: int = 1) -> dict[str, int]:
    """How many k-powered n in I fall into each proof case."""
    k = _check_k(k)
    z = default_z(I.y, k) if z is None else z
    counts = dict.fromkeys(CASE_LABELS, 0)
    for n, F in factor_interval(I, cfg, workers):
        if is_k_powered(F, k):
            counts[decompose_case(n, I, z, cut, F).case_label] += 1
    return counts


def verify_b2_claim(I: Interval, k, z: Optional[int] = None,
                    cfg: SieveConfig = DEFAULT_CONFIG, workers: int = 1) -> list[int]:
    """k-powered n in I with b1^2 <= z and b2 = 1 (none should exist).

    Requires y <= x and z^k <= y^(k-1), checked exactly.
    """
    k = _check_k(k)
    if I.y > I.x:
        raise ValueError("verify_b2_claim needs y <= x")
    z = default_z(I.y, k) if z is None else z
    if z < 1 or z**k.numerator > I.y ** (k.numerator - k.denominator):
        raise ValueError(f"z={z} violates z^k <= y^(k-1) for k={k}")
    bad = []
    for n, F in factor_interval(I, cfg, workers):
        if is_k_powered(F, k) and decompose_case(n, I, z, F=F).case_label == "none":
            bad.append(n)
    return bad

