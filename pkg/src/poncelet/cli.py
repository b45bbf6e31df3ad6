"""Command-line front end: every pipeline as a reproducible experiment
emitting CSV or JSON.

Exit codes: 0 success (or inapplicable), 2 invalid configuration,
3 property/theorem check failed.
"""

import argparse
import io
import json
import math
import random
import sys
from fractions import Fraction

from . import __version__
from .confrac import (
    FIB_RECIP,
    PrecisionExhaustedError,
    cf_expand,
    find_balanced_pairs,
    remainder_series,
)
from .families import arnold_family, poncelet_family, rigid_family
from .geometry import (
    TWO_PI,
    AngleState,
    PonceletConfig,
    poncelet_map_analytic,
    poncelet_map_geometric,
)
from .rotation import (
    count_poncelet_pairs,
    find_parameter_for_value,
    rotation_number,
    staircase,
)
from .twistfam import second_order_estimate

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PROPERTY = 3

GOLDEN_CONJUGATE = (math.sqrt(5.0) - 1.0) / 2.0


def _fmt(x):
    """17 significant digits: lossless double round-trip."""
    return "%.17g" % x


def _run_config(args):
    # the output path is not part of the experiment: identical settings
    # must give identical bytes regardless of where they are written
    cfg = {k: v for k, v in sorted(vars(args).items())
           if k not in ("func", "out")}
    cfg["version"] = __version__
    return cfg


def _emit(text, out):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(payload, out):
    _emit(json.dumps(payload, sort_keys=True, indent=2) + "\n", out)


def _csv(rows, header):
    buf = io.StringIO()
    buf.write(",".join(header) + "\r\n")
    for row in rows:
        buf.write(",".join(row) + "\r\n")
    return buf.getvalue()


def _circ_dist(a, b, period):
    d = abs(a - b) % period
    return min(d, period - d)


def _make_family(args):
    if args.family == "poncelet":
        return poncelet_family(args.R, args.c)
    if args.family == "arnold":
        return arnold_family(args.K)
    return rigid_family()


# ---------------------------------------------------------------- orbit

def cmd_orbit(args):
    cfg = PonceletConfig(args.R, args.c, args.t)
    theta = args.theta0 % TWO_PI
    rows = []
    prev = None
    for k in range(args.steps + 1):
        step = poncelet_map_geometric(theta, cfg)
        phi = step.phi  # direction of the tangent line at theta
        if prev is not None:
            pred = poncelet_map_analytic(prev, cfg)
            residual = max(_circ_dist(pred.theta, theta, TWO_PI),
                           _circ_dist(pred.phi, phi, math.pi))
        else:
            residual = 0.0
        rows.append({
            "k": k, "theta": theta, "phi": phi,
            "x": theta / TWO_PI, "y": phi / math.pi,
            "residual": residual,
        })
        prev = AngleState(theta, phi)
        theta = step.theta

    if args.format == "json":
        _emit_json({"config": _run_config(args), "rows": rows}, args.out)
    else:
        header = ["k", "theta", "phi", "x", "y", "residual"]
        text = _csv(
            [[str(r["k"])] + [_fmt(r[h]) for h in header[1:]] for r in rows],
            header,
        )
        _emit(text, args.out)
    return EXIT_OK


# ------------------------------------------------------------ staircase

def cmd_staircase(args):
    family = _make_family(args)
    t_lo = family.a if args.t_min is None else args.t_min
    t_hi = family.b if args.t_max is None else args.t_max
    if not family.a <= t_lo < t_hi <= family.b:
        raise ValueError(f"grid [{t_lo}, {t_hi}] outside parameter interval")
    grid = [t_lo + (t_hi - t_lo) * i / (args.points - 1)
            for i in range(args.points)]
    result = staircase(family, grid, tol=args.tol)

    rows = []
    for t, est in result.points:
        lock_p, lock_q = est.lock if est.lock else ("", "")
        rows.append({
            "t": t, "r": est.value, "error_radius": est.error_radius,
            "lock_p": lock_p, "lock_q": lock_q,
        })
    verdict = {
        "direction": result.direction,
        "monotone_ok": result.monotone_ok,
        "violations": [[t1, t2, d] for t1, t2, d in result.violations],
    }

    if args.format == "json":
        _emit_json({"config": _run_config(args), "rows": rows,
                    "verdict": verdict}, args.out)
    else:
        header = ["t", "r", "error_radius", "lock_p", "lock_q"]
        lines = [[_fmt(r["t"]), _fmt(r["r"]), _fmt(r["error_radius"]),
                  str(r["lock_p"]), str(r["lock_q"])] for r in rows]
        _emit(_csv(lines, header), args.out)
        sidecar = json.dumps(verdict, sort_keys=True, indent=2) + "\n"
        if args.out:
            with open(args.out + ".verdict.json", "w", encoding="utf-8") as fh:
                fh.write(sidecar)
        else:
            sys.stdout.write(sidecar)
    return EXIT_OK if result.monotone_ok else EXIT_PROPERTY


# ---------------------------------------------------------------- count

def cmd_count(args):
    family = poncelet_family(args.R, args.c)
    results = []
    all_ok = True
    for n in range(args.n_min, args.n_max + 1):
        report = count_poncelet_pairs(family, n, tol_t=args.tol_t,
                                      seed=args.seed)
        all_ok = all_ok and report.ok
        results.append({
            "n": n,
            "expected": report.expected,
            "count": len(report.pairs),
            "ok": report.ok,
            "pairs": [{"t": p.t, "p": p.p,
                       "closure_residual": p.closure_residual}
                      for p in report.pairs],
        })
    _emit_json({"config": _run_config(args), "results": results,
                "all_ok": all_ok}, args.out)
    return EXIT_OK if all_ok else EXIT_PROPERTY


# ------------------------------------------------------------------ cf

def _parse_x(text):
    if text == "golden":
        return GOLDEN_CONJUGATE
    if "/" in text:
        return Fraction(text)
    return float(text)


def _cf_report(x, eps, n_max):
    try:
        exp = cf_expand(x, n_terms=max(n_max + 8, 64))
    except PrecisionExhaustedError as err:
        return {"input": str(x), "error": str(err)}
    records = remainder_series(exp, n_max=n_max)
    pairs = find_balanced_pairs(exp, eps=eps, n_max=n_max)
    return {
        "input": str(x),
        "a0": exp.a0,
        "quotients": exp.quotients,
        "convergents": [[str(p), str(q)] for p, q in exp.convergents],
        "exact": exp.exact,
        "remainders": [{
            "n": r.n, "log_qn": r.log_qn, "gauss_sum": r.gauss_sum,
            "remainder": r.remainder, "within_bound": r.within_bound,
        } for r in records],
        "bound_violations": sum(not r.within_bound for r in records),
        "pairs": [{
            "excess": str(p.excess), "defect": str(p.defect),
            "index": p.index, "ratio": p.ratio, "gap_ok": p.gap_ok,
        } for p in pairs],
    }


def cmd_cf(args):
    if (args.x is None) == (args.random is None):
        raise ValueError("provide exactly one of --x or --random")
    if args.x is not None:
        inputs = [_parse_x(args.x)]
    else:
        rng = random.Random(args.seed)
        inputs = [rng.random() for _ in range(args.random)]
    reports = [_cf_report(x, args.eps, args.n_max) for x in inputs]
    total_violations = sum(r.get("bound_violations", 0) for r in reports)
    _emit_json({"config": _run_config(args), "F": FIB_RECIP,
                "reports": reports,
                "total_bound_violations": total_violations}, args.out)
    return EXIT_OK if total_violations == 0 else EXIT_PROPERTY


# ---------------------------------------------------------------- prop2

def cmd_prop2(args):
    family = _make_family(args)
    if args.tau is not None:
        tau = args.tau
    else:
        target = GOLDEN_CONJUGATE
        if args.family == "rigid":
            tau = target
        else:
            tau = find_parameter_for_value(family, target, tol=args.tol)
    report = second_order_estimate(family, tau, tol=args.tol)
    payload = {
        "config": _run_config(args),
        "tau": report.tau,
        "status": report.status,
        "best_ratio": None if math.isnan(report.best_ratio) else report.best_ratio,
        "bound": report.bound,
        "margin": report.margin,
        "pass": report.passed if report.status == "ok" else None,
        "brackets": [[t1, t2, q] for t1, t2, q in report.brackets],
    }
    _emit_json(payload, args.out)
    if report.status == "inapplicable":
        return EXIT_OK
    return EXIT_OK if report.passed else EXIT_PROPERTY


# ----------------------------------------------------------------- main

def _add_common(p):
    p.add_argument("--out", default=None, help="output path (stdout if absent)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-4,
                   help="rotation-number tolerance")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="poncelet",
        description="Poncelet billiard twist-map experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbit", help="iterate the tangent-line map")
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--theta0", type=float, default=0.0)
    p.add_argument("--steps", type=int, default=100)
    _add_common(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("staircase", help="rotation number over a parameter grid")
    p.add_argument("--family", choices=["poncelet", "arnold", "rigid"],
                   default="poncelet")
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--K", type=float, default=0.8)
    p.add_argument("--t-min", type=float, default=None)
    p.add_argument("--t-max", type=float, default=None)
    p.add_argument("--points", type=int, default=101)
    _add_common(p)
    p.set_defaults(func=cmd_staircase)

    p = sub.add_parser("count", help="n-Poncelet pair counting")
    p.add_argument("--n-min", type=int, default=3)
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--tol-t", type=float, default=1e-12)
    _add_common(p)
    p.set_defaults(func=cmd_count, format="json")

    p = sub.add_parser("cf", help="continued-fraction reports")
    p.add_argument("--x", default=None,
                   help="decimal, p/q, or 'golden'")
    p.add_argument("--random", type=int, default=None,
                   help="number of seeded random samples in (0,1)")
    p.add_argument("--eps", type=float, default=0.5)
    p.add_argument("--n-max", type=int, default=25)
    _add_common(p)
    p.set_defaults(func=cmd_cf, format="json")

    p = sub.add_parser("prop2", help="second-order growth estimate")
    p.add_argument("--family", choices=["poncelet", "arnold", "rigid"],
                   default="arnold")
    p.add_argument("--R", type=float, default=1.0)
    p.add_argument("--c", type=float, default=0.0)
    p.add_argument("--K", type=float, default=0.7)
    p.add_argument("--tau", type=float, default=None,
                   help="parameter; auto-located at the golden-mean "
                        "conjugate rotation value if absent")
    _add_common(p)
    p.set_defaults(func=cmd_prop2, format="json", tol=1e-5)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
