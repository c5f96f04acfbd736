"""Command-line front end: ``arcsinc eval|plot|fwhm|verify``.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import replace

import numpy as np

from . import applications as app
from .branches import DomainError, branch_domain, lemma1_slack
from .inverse import DEFAULT_POLICY, Method, evaluate, oracle
from .roots import bessel_3_2_zero

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_NONCONV = 0, 1, 2, 3

RECORD_KEYS = ("k", "x", "y", "method", "err", "work")
METHOD_FLAGS = {
    "oracle": Method.ORACLE,
    "series-anger": Method.SERIES_ANGER,
    "series-weber": Method.SERIES_WEBER,
    "integral": Method.INTEGRAL,
    "auto": Method.AUTO,
}


class UsageError(Exception):
    pass


def _record(k, x, res) -> dict:
    return {"k": int(k), "x": float(x), "y": float(res.value), "method": res.method,
            "err": float(res.err_estimate), "work": int(res.work)}


def _fmt(v):
    # repr gives the shortest string that round-trips, independent of locale
    return repr(float(v)) if isinstance(v, (float, np.floating)) else str(v)


def format_records(records: list[dict], fmt: str, keys=RECORD_KEYS) -> str:
    if fmt == "json":
        return json.dumps(records, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(keys)
    for r in records:
        w.writerow([_fmt(r[key]) for key in keys])
    return buf.getvalue()


def parse_records(text: str, fmt: str) -> list[dict]:
    """Inverse of :func:`format_records` for evaluation records."""
    if fmt == "json":
        return json.loads(text)
    rows = list(csv.DictReader(io.StringIO(text)))
    conv = {"k": int, "x": float, "y": float, "err": float, "work": int, "method": str}
    return [{key: conv[key](val) for key, val in row.items()} for row in rows]


def _policy(tol):
    if tol is None:
        return DEFAULT_POLICY
    if not tol > 0:
        raise UsageError("--tol must be positive")
    return replace(DEFAULT_POLICY, series_tol=tol, integral_tol=tol)


def _branches(kmin, kmax):
    if kmin > kmax:
        raise UsageError(f"--kmin {kmin} exceeds --kmax {kmax}")
    ks = [k for k in range(kmin, kmax + 1) if k != 0]
    if not ks:
        raise UsageError("branch range contains no nonzero k")
    return ks


def cmd_eval(args, out) -> int:
    if args.k == 0:
        raise UsageError("branch k must be nonzero")
    res = evaluate(args.k, args.x, METHOD_FLAGS[args.method], _policy(args.tol))
    out.write(format_records([_record(args.k, args.x, res)], args.format))
    return EXIT_OK if res.converged else EXIT_NONCONV


def plot_records(kmin, kmax, samples, method=Method.AUTO, policy=DEFAULT_POLICY):
    """Sampled branch values (``lines``) and oracle values at the same points (``markers``)."""
    if samples < 2:
        raise UsageError("--samples must be at least 2")
    lines, markers, ok = [], [], True
    for k in _branches(kmin, kmax):
        d = branch_domain(k)
        xs = np.linspace(d.x1, d.x2, samples)
        xs[0], xs[-1] = d.x1, d.x2
        for x in xs:
            res = evaluate(k, x, method, policy)
            ok &= res.converged
            lines.append(_record(k, x, res))
            markers.append(_record(k, x, oracle(k, x)))
    return lines, markers, ok


def cmd_plot(args, out) -> int:
    lines, markers, ok = plot_records(args.kmin, args.kmax, args.samples,
                                      METHOD_FLAGS[args.method], _policy(args.tol))
    for r in lines:
        r["method"] = "line:" + r["method"]
    for r in markers:
        r["method"] = "marker:" + r["method"]
    out.write(format_records(lines + markers, args.format))
    return EXIT_OK if ok else EXIT_NONCONV


def cmd_fwhm(args, out) -> int:
    if args.mmax < 0:
        raise UsageError("--mmax must be non-negative")
    try:
        rows = app.fwhm_table(args.mmax, _policy(args.tol), METHOD_FLAGS[args.method])
    except RuntimeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONV
    recs = [{"m": e.m, "width": e.width, "err": e.err_estimate} for e in rows]
    recs.append({"m": "limit", "width": app.FWHM_LIMIT, "err": 0.0})
    out.write(format_records(recs, args.format, keys=("m", "width", "err")))
    return EXIT_OK


# ------------------------------------------------------------------ verify


def _check(name, measured, expected, tol):
    err = abs(measured - expected)
    return {"check": name, "measured": float(measured), "expected": float(expected),
            "error": float(err), "tol": tol, "pass": bool(err <= tol)}


def suite_identities(policy=DEFAULT_POLICY):
    w = app.weber_series_identity(policy)
    a = app.anger_integral_identity(policy)
    return [_check("weber_series_identity", w.measured, w.expected, 1e-6),
            _check("anger_integral_identity", a.measured, a.expected, 1e-4)]


def suite_lemma():
    worst, interior_ok = math.inf, True
    for k in [s * m for m in range(1, 9) for s in (1, -1)]:
        d = branch_domain(k)
        xs = np.linspace(d.x1, d.x2, 1002)
        slack = np.array([lemma1_slack(k, x) for x in xs])
        worst = min(worst, slack.min())
        interior_ok &= bool((slack[1:-1] > 0).all())
    rows = [_check("lemma1_min_slack", worst, 0.0, 1e-10)]
    rows[0]["pass"] = bool(worst >= -1e-10)
    rows.append({"check": "lemma1_interior_positive", "measured": float(interior_ok),
                 "expected": 1.0, "error": 0.0 if interior_ok else 1.0, "tol": 0.0,
                 "pass": interior_ok})
    return rows


def suite_roots():
    worst = 0.0
    brackets = True
    for n in range(1, 101):
        r = bessel_3_2_zero(n)
        worst = max(worst, abs(math.sin(r) - r * math.cos(r)) / (1 + r * r))
        brackets &= (n + 0.25) * math.pi < r < (n + 0.5) * math.pi
    row = _check("root_residual", worst, 0.0, 1e-12)
    row["pass"] = row["pass"] and brackets
    return [row]


def suite_cross(policy=DEFAULT_POLICY):
    rows = []
    for k in (1, -1, 2, -2, 3, -3):
        d = branch_domain(k)
        for x in d.x1 + (d.x2 - d.x1) * np.array([0.1, 0.35, 0.6, 0.85]):
            ref = oracle(k, x).value
            for method, tol in ((Method.SERIES_ANGER, 1e-8), (Method.SERIES_WEBER, 1e-8),
                                (Method.INTEGRAL, 1e-6)):
                r = evaluate(k, x, method, policy)
                rows.append(_check(f"{method.value}(k={k}, x={x!r})", r.value, ref, tol))
    return rows


SUITES = {"identities": suite_identities, "lemma": suite_lemma, "roots": suite_roots,
          "cross": suite_cross}


def cmd_verify(args, out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    rows = [row for name in names for row in SUITES[name]()]
    if args.format == "json":
        out.write(json.dumps(rows, indent=1) + "\n")
    else:
        for r in rows:
            status = "PASS" if r["pass"] else "FAIL"
            out.write(f"{status} {r['check']}: measured={r['measured']!r} "
                      f"expected={r['expected']!r} error={r['error']:.3e} tol={r['tol']:g}\n")
    return EXIT_OK if all(r["pass"] for r in rows) else EXIT_VERIFY


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="arcsinc", description="Branches of the inverse sinc function.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, method=True):
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--tol", type=float, default=None,
                        help="target error for the series and integral evaluators")
        if method:
            sp.add_argument("--method", choices=tuple(METHOD_FLAGS), default="auto")

    e = sub.add_parser("eval", help="evaluate one branch at one point")
    e.add_argument("-k", type=int, required=True, help="nonzero branch index")
    e.add_argument("-x", type=float, required=True)
    common(e)
    e.set_defaults(func=cmd_eval)

    pl = sub.add_parser("plot", help="sampled branch data with oracle markers")
    pl.add_argument("--kmin", type=int, default=-3)
    pl.add_argument("--kmax", type=int, default=3)
    pl.add_argument("--samples", type=int, default=100)
    common(pl)
    pl.set_defaults(func=cmd_plot)

    f = sub.add_parser("fwhm", help="full widths at half maximum of sinc^2 peaks")
    f.add_argument("--mmax", type=int, default=10)
    common(f, method=False)
    f.add_argument("--method", choices=tuple(METHOD_FLAGS), default="oracle")
    f.set_defaults(func=cmd_fwhm)

    v = sub.add_parser("verify", help="run the built-in verification checks")
    v.add_argument("--suite", choices=("all",) + tuple(SUITES), default="all")
    v.add_argument("--format", choices=("csv", "json"), default="csv")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (DomainError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
