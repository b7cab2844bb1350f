"""Command-line front end.

Exit status: 0 success, 2 parameter error, 3 capacity/resource error,
1 if the gcd structure check fails.
Big integers are read and written as decimal strings; rationals as "p/q".
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import sys
from fractions import Fraction

from . import abc_ap, lab
from .arith import factor
from .sieve import Interval, SieveConfig, default_workers, enumerate_powerful

EXIT_OK, EXIT_PARAM, EXIT_CAPACITY = 0, 2, 3


class ParamError(ValueError):
    pass


def natural(s: str) -> int:
    if not s.isdigit():
        raise argparse.ArgumentTypeError(f"expected a nonnegative decimal integer, got {s!r}")
    return int(s)


def rational(s: str) -> Fraction:
    num, _, den = s.partition("/")
    if not num.lstrip("-").isdigit() or (den and not den.isdigit()):
        raise argparse.ArgumentTypeError(f"expected a rational 'p/q' or integer, got {s!r}")
    if den and int(den) == 0:
        raise argparse.ArgumentTypeError("zero denominator")
    return Fraction(int(num), int(den or 1))


def real(s: str) -> float:
    try:
        return float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {s!r}") from None


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf)
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _dump(obj) -> str:
    return json.dumps(obj) + "\n"


def _interval(a) -> Interval:
    return Interval(a.x, a.y)


def _cfg(a) -> SieveConfig:
    return SieveConfig(spf_limit=a.spf_limit, segment_size=a.segment_size, rng_seed=a.seed)


def _emit_report(a, rep: lab.CountReport) -> str:
    if a.output == "csv":
        return lab.reports_to_csv([rep])
    return _dump(rep.to_dict(a.timing))


# --- command handlers -------------------------------------------------------

def cmd_factor(a):
    F = factor(a.n, a.seed)
    if a.output == "csv":
        return _csv(("prime", "exponent"), [(str(p), str(e)) for p, e in F])
    return _dump({"n": str(a.n), "factors": [[str(p), e] for p, e in F]})


def cmd_powerful(a):
    vals = enumerate_powerful(_interval(a))
    if a.output == "csv":
        return _csv(("n",), [(str(v),) for v in vals])
    return _dump({"interval": {"x": str(a.x), "y": str(a.y)}, "count": str(len(vals)),
                  "values": [str(v) for v in vals]})


def cmd_rough(a):
    return _emit_report(a, lab.count_rough_report(_interval(a)))


def cmd_count_t1(a):
    return _emit_report(a, lab.count_theorem1(_interval(a), a.k, a.delta, _cfg(a), a.threads))


def cmd_count_t2(a):
    return _emit_report(a, lab.count_theorem2(_interval(a), a.k, a.w, _cfg(a), a.threads))


def cmd_count_powered(a):
    return _emit_report(a, lab.count_powered(_interval(a), a.k, a.C, a.c, _cfg(a), a.threads))


def cmd_count_eq1(a):
    return _emit_report(a, lab.count_smooth_powerful(_interval(a)))


def cmd_count_eq3(a):
    return _emit_report(a, lab.count_verysmooth(_interval(a), _cfg(a), a.threads))


def cmd_sdivisor(a):
    return _emit_report(a, lab.count_smooth_divisor(_interval(a), a.alpha, a.w, _cfg(a), a.threads))


def cmd_cases(a):
    I = _interval(a)
    z = lab.default_z(I.y, a.k) if a.z is None else a.z
    counts = lab.case_census(I, a.k, z, a.cut, _cfg(a), a.threads)
    if a.output == "csv":
        return _csv(("case", "count"), [(c, str(v)) for c, v in counts.items()])
    return _dump({"interval": {"x": str(I.x), "y": str(I.y)},
                  "params": {"k": lab._fmt_param(a.k), "z": str(z), "cut": lab._fmt_param(a.cut)},
                  "counts": counts})


def cmd_verify_b2(a):
    I = _interval(a)
    z = lab.default_z(I.y, a.k) if a.z is None else a.z
    bad = lab.verify_b2_claim(I, a.k, z, _cfg(a), a.threads)
    if a.output == "csv":
        return _csv(("n",), [(str(n),) for n in bad])
    return _dump({"interval": {"x": str(I.x), "y": str(I.y)},
                  "params": {"k": lab._fmt_param(a.k), "z": str(z)},
                  "counterexamples": [str(n) for n in bad]})


def cmd_abc_triple(a):
    tr = abc_ap.build_abc_triple(a.n, a.d)
    d = tr.to_dict()
    if a.output == "csv":
        return _csv(tuple(d), [tuple("" if v is None else str(v) for v in d.values())])
    return _dump(d)


def cmd_abc_scan(a):
    checked, bad = abc_ap.d_structure_scan(a.max_n)
    top = abc_ap.top_quality(a.max_n, a.top) if a.top else []
    if a.output == "csv":
        return _csv(("n", "d", "reason"), [(str(v["n"]), str(v["d"]), v["reason"]) for v in bad])
    return _dump({"max_n": a.max_n, "pairs": checked,
                  "violations": [{"n": str(v["n"]), "d": str(v["d"]), "reason": v["reason"]} for v in bad],
                  "top": [t.to_dict() for t in top]})


def cmd_ap_search(a):
    if a.pred == "k-powered" and a.k is None:
        raise ParamError("--pred k-powered requires --k")
    wit = abc_ap.find_ap_powered(_interval(a), a.pred, a.L, a.k, _cfg(a), a.threads)
    if a.output == "csv":
        return _csv(("start", "d", "length"), [(str(w.start), str(w.d), str(w.length)) for w in wit])
    return _dump([w.to_dict() for w in wit])


def cmd_rk(a):
    if a.method == "exact":
        res = abc_ap.rk_exact(a.N, a.k, a.cap)
    else:
        res = abc_ap.rk_greedy(a.N, a.k)
    if a.output == "csv":
        return _csv(abc_ap.RK_CSV_COLUMNS, [res.csv_row()])
    return _dump(res.to_dict())


def cmd_bound(a):
    consts = {"k": a.k, "c": a.c, "c_k": a.c_k}
    value = abc_ap.bound_eval(a.N, a.form, consts)
    if a.output == "csv":
        return _csv(("N", "form", "k", "c", "c_k", "value"),
                    [(repr(a.N), a.form, str(a.k), repr(a.c), repr(a.c_k), repr(value))])
    return _dump({"N": a.N, "form": a.form, "constants": consts, "value": value})


def cmd_table(a):
    reports = []
    for y in a.ys:
        I = Interval(a.x, y)
        for k in a.ks:
            reports.append(lab.count_theorem1(I, k, a.delta, _cfg(a), a.threads))
            reports.append(lab.count_theorem2(I, k, min(a.w, y), _cfg(a), a.threads))
            reports.append(lab.count_powered(I, k, a.C, a.c, _cfg(a), a.threads))
    if a.output == "json":
        return _dump([r.to_dict(a.timing) for r in reports])
    return lab.reports_to_csv(reports)


# --- parser -----------------------------------------------------------------

def _common(output: str) -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "csv"), default=output)
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes (default $POWEREDLAB_THREADS or 1)")
    common.add_argument("--seed", type=int, default=0, help="seed for the rho factoring walk")
    common.add_argument("--spf-limit", type=natural, default=1 << 26)
    common.add_argument("--segment-size", type=natural, default=1 << 16)
    common.add_argument("--timing", action="store_true", help="include elapsed seconds in JSON reports")
    return common


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="poweredlab",
        description="Powered numbers in short intervals (x, x+y]. Conventions at n = 1: "
                    "kernel(1) = q(1) = 1, 1 is powerful, k-full, squarefree and k-powered for every k; "
                    "largest prime factor of 1 is 1, smallest is a sentinel above every bound.",
    )
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, fn, help, interval=False, output="json"):
        sp = sub.add_parser(name, parents=[_common(output)], help=help)
        sp.set_defaults(fn=fn)
        if interval:
            sp.add_argument("--x", type=natural, required=True)
            sp.add_argument("--y", type=natural, required=True)
        return sp

    sp = add("factor", cmd_factor, "prime factorization of n")
    sp.add_argument("--n", type=natural, required=True)

    add("powerful", cmd_powerful, "list powerful numbers in (x, x+y]", True)
    add("rough", cmd_rough, "count n free of primes p with p^2 <= y", True)

    sp = add("count-t1", cmd_count_t1, "k-powered n with y^(1-delta)-smooth powerful content", True)
    sp.add_argument("--k", type=rational, required=True)
    sp.add_argument("--delta", type=rational, required=True)

    sp = add("count-t2", cmd_count_t2, "k-powered n with w-smooth squarefree part", True)
    sp.add_argument("--k", type=rational, required=True)
    sp.add_argument("--w", type=natural, required=True)

    sp = add("count-powered", cmd_count_powered, "all k-powered n", True)
    sp.add_argument("--k", type=rational, required=True)
    sp.add_argument("--C", type=real, default=1.0)
    sp.add_argument("--c", type=real, default=1.0)

    add("count-eq1", cmd_count_eq1, "powerful n with largest prime <= sqrt(y)", True)
    add("count-eq3", cmd_count_eq3, "n with squarefree part log(y+1)loglog(y+2)-smooth", True)

    sp = add("sdivisor", cmd_sdivisor, "n with a w-smooth divisor exceeding y^alpha", True)
    sp.add_argument("--alpha", type=rational, required=True)
    sp.add_argument("--w", type=natural, required=True)

    sp = add("cases", cmd_cases, "proof-case census of k-powered n", True)
    sp.add_argument("--k", type=rational, required=True)
    sp.add_argument("--z", type=natural, default=None)
    sp.add_argument("--cut", type=rational, default=Fraction(1, 2))

    sp = add("verify-b2", cmd_verify_b2, "k-powered n with b1^2 <= z and b2 = 1 (expected none)", True)
    sp.add_argument("--k", type=rational, required=True)
    sp.add_argument("--z", type=natural, default=None)

    sp = add("abc-triple", cmd_abc_triple, "reduced abc triple from the quartic identity")
    sp.add_argument("--n", type=natural, required=True)
    sp.add_argument("--d", type=natural, required=True)

    sp = add("abc-scan", cmd_abc_scan, "check the gcd structure over all coprime 2d < n <= max-n")
    sp.add_argument("--max-n", type=natural, default=1500)
    sp.add_argument("--top", type=natural, default=0, help="also list the top triples by quality")

    sp = add("ap-search", cmd_ap_search, "maximal progressions of powered numbers", True)
    sp.add_argument("--pred", choices=("powerful", "k-powered"), default="powerful")
    sp.add_argument("--k", type=rational, default=None)
    sp.add_argument("--L", type=natural, default=7)

    sp = add("rk", cmd_rk, "largest subset of 1..N with no k-term progression")
    sp.add_argument("--N", type=natural, required=True)
    sp.add_argument("--k", type=natural, required=True)
    sp.add_argument("--method", choices=("exact", "greedy"), default="exact")
    sp.add_argument("--cap", type=natural, default=None)

    sp = add("bound", cmd_bound, "evaluate an r_k(N) bound shape")
    sp.add_argument("--N", type=real, required=True)
    sp.add_argument("--form", choices=abc_ap.BOUND_FORMS, required=True)
    sp.add_argument("--k", type=natural, default=3)
    sp.add_argument("--c", type=real, default=1.0)
    sp.add_argument("--c-k", type=real, default=1.0)

    sp = add("table", cmd_table, "bound-ratio table for the three interval theorems", output="csv")
    sp.add_argument("--x", type=natural, required=True)
    sp.add_argument("--ys", type=natural, nargs="+", required=True)
    sp.add_argument("--ks", type=rational, nargs="+", required=True)
    sp.add_argument("--delta", type=rational, default=Fraction(1, 2))
    sp.add_argument("--w", type=natural, default=10)
    sp.add_argument("--C", type=real, default=1.0)
    sp.add_argument("--c", type=real, default=1.0)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARAM if exc.code else EXIT_OK
    if args.threads is None:
        args.threads = default_workers()
    if args.threads < 1:
        print("poweredlab: error: --threads must be >= 1", file=stderr)
        return EXIT_PARAM
    try:
        out = args.fn(args)
    except abc_ap.DStructureError as exc:
        print(f"poweredlab: gcd structure violated: {exc}", file=stderr)
        return 1
    except (abc_ap.CapacityError, MemoryError) as exc:
        print(f"poweredlab: capacity error: {exc}", file=stderr)
        return EXIT_CAPACITY
    except (ValueError, TypeError) as exc:
        print(f"poweredlab: parameter error: {exc}", file=stderr)
        return EXIT_PARAM
    stdout.write(out)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
