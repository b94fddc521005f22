"""Command-line front end: curve exports (CSV/SVG), verification batteries,
the s-sweep, and the local-expansion fits.

Exit codes: 0 all assertions pass, 1 a mathematical assertion failed or was
inconclusive, 2 configuration error. All computations are deterministic for
a fixed configuration; worker threads only parallelize grid evaluation and
results are gathered in input order.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from . import __version__
from ._series import Y_SWITCH
from .closedform import (
    curve_margin,
    local_quadratic_coefficient,
    quotient_limits,
    quotient_p3,
    quotient_p4,
    quotient_p4_signchanging,
    rho_value,
    small_beta_coefficients,
)
from .conformal import SobolevContext, beta_of_y, make_context, y_of_beta
from .families import build_family, two_bubble_profile
from .spectral import be_quotient
from .svg import polyline_chart

MONOTONE_SLACK = 1e-12
MONOTONE_Y_MIN = 0.01
DEFAULT_GRID = "0.005:0.995:200"
DEFAULT_TRUNCATION = 512
DEFAULT_QUAD = 4096


class ConfigError(Exception):
    """Bad command configuration (exit code 2)."""


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def parse_grid(spec: str, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
    try:
        start_s, stop_s, count_s = spec.split(":")
        start, stop, count = float(start_s), float(stop_s), int(count_s)
    except ValueError as exc:
        raise ConfigError(f"grid must look like start:stop:count, got {spec!r}") from exc
    if count < 2:
        raise ConfigError(f"grid count must be at least 2, got {count}")
    if not (lo < start < stop < hi):
        raise ConfigError(f"grid endpoints must satisfy {lo} < start < stop < {hi}, got {spec!r}")
    return np.linspace(start, stop, count)


def context_from_args(args) -> SobolevContext:
    if getattr(args, "p", None) is not None:
        if args.s is not None:
            raise ConfigError("give either --s or the --p shorthand, not both")
        if args.p == 3:
            s = args.d / 6.0
        elif args.p == 4:
            s = args.d / 4.0
        else:
            raise ConfigError("--p shorthand supports only 3 or 4")
    elif args.s is not None:
        s = args.s
    else:
        raise ConfigError("a context needs --s or --p")
    try:
        return make_context(args.d, s)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def provenance(args, ctx: SobolevContext | None, **extra) -> dict:
    block = {
        "tool": "stab",
        "version": __version__,
        "numpy": np.__version__,
        "python": sys.version.split()[0],
        "argv": list(getattr(args, "_argv", [])),
        "wall_time_s": None,  # filled on write
    }
    if ctx is not None:
        block["context"] = {
            "d": ctx.d,
            "s": ctx.s,
            "p": ctx.p,
            "sphere_measure": ctx.sphere_measure,
            "alpha0": ctx.alpha0,
            "sobolev_const": ctx.sobolev_const,
            "c_loc": ctx.c_loc,
        }
    block.update(extra)
    return block


def _write_json(path: str, report: dict, started: float) -> None:
    report["provenance"]["wall_time_s"] = round(time.time() - started, 6)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(report, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _write_csv(path: str | None, rows: list[tuple], header: str) -> None:
    text = header + "\n" + "\n".join(",".join(_fmt(v) for v in row) for row in rows) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _pmap(fn, items, workers: int):
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# curve


def _closed_form_point(ctx: SobolevContext, family: str, y: float):
    if family == "sign-changing":
        return quotient_p4_signchanging(ctx, y)
    if abs(ctx.p - 3) <= 1e-9:
        return quotient_p3(ctx, y)
    if abs(ctx.p - 4) <= 1e-9:
        return quotient_p4(ctx, y)
    raise ConfigError(f"no closed-form curve for p = {ctx.p}; request --spectral explicitly")


def cmd_curve(args) -> int:
    ctx = context_from_args(args)
    if args.family not in ("two-bubble", "sign-changing"):
        raise ConfigError(f"curve supports families two-bubble and sign-changing, not {args.family!r}")
    if args.family == "sign-changing" and abs(ctx.p - 4) > 1e-9:
        raise ConfigError("the sign-changing curve requires p = 4")
    ys = parse_grid(args.grid)
    threshold = args.threshold if args.threshold is not None else ctx.c_loc

    if args.spectral:
        if ctx.d != 1 and args.family == "second-harmonic":
            raise ConfigError("spectral curves for this family need d = 1")

        def eval_point(y: float):
            beta = beta_of_y(float(y))
            fn = build_family(ctx, args.family, beta, args.truncation, quad_order=args.quad_order)
            rep = be_quotient(ctx, fn, quad_order=args.quad_order, label=f"{args.family} beta={beta}")
            return (float(y), beta, rep.quotient_constants, rep.deficit, rep.dist_sq_constants)

        rows = _pmap(eval_point, ys, args.workers)
    else:
        def eval_point(y: float):
            point = _closed_form_point(ctx, args.family, float(y))
            value = point.numerator - threshold * point.denominator if args.regularized else point.value
            return (float(y), point.beta, value, point.numerator, point.denominator)

        if args.regularized and args.family != "sign-changing":
            # stable exact-series margins near the origin
            def eval_point(y: float):  # noqa: F811
                point = _closed_form_point(ctx, args.family, float(y))
                value = curve_margin(ctx, float(y), threshold)
                return (float(y), point.beta, value, point.numerator, point.denominator)

        rows = _pmap(eval_point, ys, args.workers)

    _write_csv(args.out, rows, "y,beta,value,numerator,denominator")
    if args.svg:
        label = "margin" if args.regularized else "quotient"
        chart = polyline_chart(
            [r[0] for r in rows],
            [r[2] for r in rows],
            title=f"{args.family} curve, d={ctx.d}, p={ctx.p:.6g}",
            x_label="y",
            y_label=label,
        )
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(chart)
    return 0


# ---------------------------------------------------------------------------
# verify


def _auto_direction(ctx: SobolevContext, family: str) -> str:
    if family == "two-bubble" and ctx.d >= 2:
        return "below"
    return "above"


def _auto_monotone(ctx: SobolevContext, family: str) -> str:
    if family == "sign-changing":
        return "decreasing"
    return "increasing" if ctx.d == 1 else "decreasing"


def cmd_verify(args) -> int:
    started = time.time()
    ctx = context_from_args(args)
    if args.family not in ("two-bubble", "sign-changing"):
        raise ConfigError(f"verify supports families two-bubble and sign-changing, not {args.family!r}")
    if args.family == "sign-changing" and abs(ctx.p - 4) > 1e-9:
        raise ConfigError("the sign-changing battery requires p = 4")
    if abs(ctx.p - 3) > 1e-9 and abs(ctx.p - 4) > 1e-9:
        raise ConfigError("the closed-form battery requires p in {3, 4}")
    ys = parse_grid(args.grid)
    direction = args.direction or _auto_direction(ctx, args.family)
    monotone = args.monotone or _auto_monotone(ctx, args.family)
    if args.threshold is not None:
        threshold = args.threshold
    elif args.family == "sign-changing":
        threshold = 1.0 - math.sqrt(0.5)
    else:
        threshold = ctx.c_loc

    def eval_point(y: float):
        point = _closed_form_point(ctx, args.family, float(y))
        if args.family == "sign-changing":
            margin = point.value - threshold
        else:
            margin = curve_margin(ctx, float(y), threshold) / abs(point.denominator)
        if direction == "below":
            margin = -margin
        return point, margin

    results = _pmap(eval_point, ys, args.workers)
    records = [
        {"y": p.y, "beta": p.beta, "value": p.value, "margin": m, "degenerate": p.degenerate}
        for p, m in results
    ]
    min_i = min(range(len(records)), key=lambda i: records[i]["margin"])
    violation_y = None
    for (p1, _), (p2, _) in zip(results, results[1:]):
        if p1.y < MONOTONE_Y_MIN:
            continue
        step_ok = p2.value > p1.value - MONOTONE_SLACK if monotone == "increasing" else p2.value < p1.value + MONOTONE_SLACK
        if monotone != "none" and not step_ok:
            violation_y = p2.y
            break
    passed = records[min_i]["margin"] > 0.0 and violation_y is None
    report = {
        "provenance": provenance(
            args,
            ctx,
            grid=args.grid,
            family=args.family,
            threshold=threshold,
            direction=direction,
            monotone=monotone,
            tolerances={"monotone_slack": MONOTONE_SLACK, "monotone_y_min": MONOTONE_Y_MIN},
        ),
        "records": records,
        "aggregate": {
            "min_margin": records[min_i]["margin"],
            "argmin_y": records[min_i]["y"],
            "monotonicity_ok": violation_y is None,
            "first_violation_y": violation_y,
        },
        "pass": passed,
    }
    if args.json:
        _write_json(args.json, report, started)
    print(
        f"verify {args.family} d={ctx.d} p={ctx.p:.6g}: min margin {records[min_i]['margin']:.6g} "
        f"at y={records[min_i]['y']:.6g}; monotonicity({monotone}) "
        f"{'ok' if violation_y is None else f'violated at y={violation_y}'}"
    )
    print("PASS" if passed else "FAIL")
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# scan-s


def cmd_scan_s(args) -> int:
    started = time.time()
    if args.d != 1:
        raise ConfigError("the s-sweep is defined for d = 1")
    s_values = list(parse_grid(args.grid, lo=0.0, hi=0.5))
    betas = parse_grid(args.beta_grid)
    dtype = np.longdouble if args.dtype == "longdouble" else np.float64
    closed_form_s = {1.0 / 6.0: quotient_p3, 0.25: quotient_p4}
    for special in closed_form_s:
        if not any(abs(s - special) < 1e-12 for s in s_values):
            s_values.append(special)
    s_values.sort()

    rows = []
    overall_pass = True
    for s in s_values:
        ctx = make_context(1, float(s))

        def eval_beta(beta: float):
            fn = build_family(ctx, "two-bubble", float(beta), args.truncation, quad_order=args.quad_order, dtype=dtype)
            rep = be_quotient(ctx, fn, quad_order=args.quad_order, label=f"u_beta s={s} beta={beta}")
            return rep.quotient_constants

        quotients = _pmap(eval_beta, betas, args.workers)
        margins = [q - ctx.c_loc for q in quotients]
        min_i = min(range(len(margins)), key=lambda i: margins[i])
        row = {
            "s": float(s),
            "c_loc": ctx.c_loc,
            "min_quotient": quotients[min_i],
            "argmin_beta": float(betas[min_i]),
            "min_margin": margins[min_i],
            "closed_form_max_dev": None,
        }
        curve = next((fn for sv, fn in closed_form_s.items() if abs(s - sv) < 1e-12), None)
        if curve is not None:
            devs = [abs(q - curve(ctx, y_of_beta(float(b))).value) for q, b in zip(quotients, betas)]
            row["closed_form_max_dev"] = max(devs)
            if row["closed_form_max_dev"] > args.crosscheck_tol:
                overall_pass = False
        if row["min_margin"] <= 0.0:
            overall_pass = False
        rows.append(row)
        dev = row["closed_form_max_dev"]
        print(
            f"s={s:.6f}: min quotient-c_loc margin {row['min_margin']:.3e} at beta={row['argmin_beta']:.3f}"
            + (f"; closed-form max dev {dev:.3e}" if dev is not None else "")
        )

    report = {
        "provenance": provenance(
            args,
            None,
            s_grid=args.grid,
            beta_grid=args.beta_grid,
            truncation=args.truncation,
            quad_order=args.quad_order,
            dtype=args.dtype,
            tolerances={"crosscheck": args.crosscheck_tol},
        ),
        "rows": rows,
        "pass": overall_pass,
    }
    if args.json:
        _write_json(args.json, report, started)
    print("PASS" if overall_pass else "FAIL")
    return 0 if overall_pass else 1


# ---------------------------------------------------------------------------
# expansion


def _second_harmonic_quotient(ctx: SobolevContext, mu: float, truncation: int, quad_order: int) -> float:
    fn = build_family(ctx, "second-harmonic", mu, truncation, quad_order=quad_order)
    rep = be_quotient(ctx, fn, quad_order=quad_order, label=f"second-harmonic mu={mu}")
    return rep.quotient


def cmd_expansion(args) -> int:
    started = time.time()
    ctx = context_from_args(args)
    report: dict = {"provenance": provenance(args, ctx, family=args.family)}
    passed = True

    if args.family == "second-harmonic":
        if ctx.d != 1:
            raise ConfigError("the second-harmonic expansion requires d = 1")
        mus = np.geomspace(args.mu_min, args.mu_max, args.mu_count)
        margins = []
        for mu in mus:
            q = _second_harmonic_quotient(ctx, float(mu), args.truncation, args.quad_order)
            margins.append({"mu": float(mu), "quotient": q, "margin": q - ctx.c_loc})
            if margins[-1]["margin"] < -1e-10:
                passed = False
        coarse = (_second_harmonic_quotient(ctx, 0.04, args.truncation, args.quad_order) - ctx.c_loc) / 0.04**2
        fine = (_second_harmonic_quotient(ctx, 0.02, args.truncation, args.quad_order) - ctx.c_loc) / 0.02**2
        fitted = (4.0 * fine - coarse) / 3.0
        exact = local_quadratic_coefficient(ctx)
        rel_dev = abs(fitted - exact) / exact
        if rel_dev > args.fit_tol:
            passed = False
        report["fit"] = {"fitted": fitted, "exact": exact, "relative_deviation": rel_dev}
        report["margins"] = margins
        print(f"quadratic coefficient: fitted {fitted:.8f} vs exact {exact:.8f} (rel dev {rel_dev:.2e})")
        print(f"min margin over mu-grid: {min(m['margin'] for m in margins):.3e}")

    elif args.family == "prop41-rho":
        eps_values = [float(e) for e in args.eps.split(",")]
        records = []
        for eps in eps_values:
            fn = build_family(ctx, "prop41-rho", eps, args.truncation, quad_order=args.quad_order)
            rep = be_quotient(ctx, fn, quad_order=args.quad_order, label=f"prop41-rho eps={eps}")
            records.append({"eps": eps, "quotient": rep.quotient, "deficit": rep.deficit,
                            "margin": rep.quotient - ctx.c_loc})
        if ctx.d >= 2:
            # the rho direction must beat the local constant, with the
            # deficit scaling quadratically in the perturbation size
            for rec in records:
                if rec["margin"] >= 0.0:
                    passed = False
            ratio_checks = []
            for r1, r2 in zip(records, records[1:]):
                expected = (r2["eps"] / r1["eps"]) ** 2
                actual = r2["deficit"] / r1["deficit"]
                ratio_checks.append({"eps_pair": [r1["eps"], r2["eps"]], "deficit_ratio": actual,
                                     "expected": expected, "relative_deviation": abs(actual / expected - 1.0)})
                if ratio_checks[-1]["relative_deviation"] > args.scaling_tol:
                    passed = False
            report["deficit_scaling"] = ratio_checks
        else:
            for rec in records:
                if rec["margin"] < -1e-10:
                    passed = False
        # pointwise quadratic-expansion residuals of the bubble pair
        c1_quad, c2 = small_beta_coefficients(ctx)
        t_grid = np.linspace(-1.0, 1.0, 201)
        ratios = []
        for beta in (0.1, 0.05, 0.025):
            pair = two_bubble_profile(ctx, beta)(t_grid)
            model = 2.0 + c1_quad * beta**2 + c2 * beta**2 * rho_value(ctx.d, t_grid)
            ratios.append(float(np.max(np.abs(pair - model)) / beta**2))
        if not (ratios[0] > ratios[1] > ratios[2]):
            passed = False
        report["pair_expansion_residual_ratios"] = ratios
        report["records"] = records
        for rec in records:
            print(f"eps={rec['eps']}: quotient {rec['quotient']:.10f} margin {rec['margin']:.3e}")
    else:
        raise ConfigError(f"expansion supports second-harmonic and prop41-rho, not {args.family!r}")

    report["pass"] = passed
    if args.json:
        _write_json(args.json, report, started)
    print("PASS" if passed else "FAIL")
    return 0 if passed else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stab",
        description="Stability quotients of the sphere Sobolev inequality: "
        "closed-form two-bubble curves and the independent spectral evaluator.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_context(p):
        p.add_argument("--d", type=int, required=True, help="sphere dimension")
        p.add_argument("--s", type=float, default=None, help="fractional order in (0, d/2)")
        p.add_argument("--p", type=int, default=None, help="shorthand: 3 -> s=d/6, 4 -> s=d/4")

    def add_numerics(p):
        p.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION, help="spectral truncation degree")
        p.add_argument("--quad-order", dest="quad_order", type=int, default=DEFAULT_QUAD)
        p.add_argument("--workers", type=int, default=1)

    p_curve = sub.add_parser("curve", help="export a quotient curve as CSV (optionally SVG)")
    add_context(p_curve)
    add_numerics(p_curve)
    p_curve.add_argument("--family", default="two-bubble", help="two-bubble | sign-changing")
    p_curve.add_argument("--grid", default=DEFAULT_GRID, help="y grid start:stop:count")
    p_curve.add_argument("--regularized", action="store_true",
                         help="emit the margin numerator - threshold*denominator instead of the ratio")
    p_curve.add_argument("--threshold", type=float, default=None)
    p_curve.add_argument("--spectral", action="store_true", help="evaluate through the spectral module")
    p_curve.add_argument("--out", default=None, help="CSV path (stdout when omitted)")
    p_curve.add_argument("--svg", default=None, help="also write an SVG chart")
    p_curve.set_defaults(func=cmd_curve)

    p_verify = sub.add_parser("verify", help="inequality/monotonicity battery for a closed-form family")
    add_context(p_verify)
    add_numerics(p_verify)
    p_verify.add_argument("--family", default="two-bubble")
    p_verify.add_argument("--grid", default=DEFAULT_GRID)
    p_verify.add_argument("--threshold", type=float, default=None)
    p_verify.add_argument("--direction", choices=("above", "below"), default=None)
    p_verify.add_argument("--monotone", choices=("increasing", "decreasing", "none"), default=None)
    p_verify.add_argument("--json", default=None, help="write the verification report here")
    p_verify.set_defaults(func=cmd_verify)

    p_scan = sub.add_parser("scan-s", help="sweep s on the circle: spectral quotients vs the local constant")
    p_scan.add_argument("--d", type=int, default=1)
    p_scan.add_argument("--grid", default="0.05:0.45:9", help="s grid start:stop:count inside (0, 1/2)")
    p_scan.add_argument("--beta-grid", dest="beta_grid", default="0.05:0.95:19")
    p_scan.add_argument("--truncation", type=int, default=DEFAULT_TRUNCATION)
    p_scan.add_argument("--quad-order", dest="quad_order", type=int, default=DEFAULT_QUAD)
    p_scan.add_argument("--workers", type=int, default=1)
    p_scan.add_argument("--dtype", choices=("float64", "longdouble"), default="longdouble",
                        help="longdouble resolves the ~1e-9 margins at the smallest beta")
    p_scan.add_argument("--crosscheck-tol", dest="crosscheck_tol", type=float, default=1e-6)
    p_scan.add_argument("--json", default=None)
    p_scan.set_defaults(func=cmd_scan_s)

    p_exp = sub.add_parser("expansion", help="local expansion fits near the optimizer manifold")
    add_context(p_exp)
    add_numerics(p_exp)
    p_exp.add_argument("--family", default="second-harmonic", help="second-harmonic | prop41-rho")
    p_exp.add_argument("--mu-min", dest="mu_min", type=float, default=1e-3)
    p_exp.add_argument("--mu-max", dest="mu_max", type=float, default=1e-1)
    p_exp.add_argument("--mu-count", dest="mu_count", type=int, default=9)
    p_exp.add_argument("--eps", default="0.01,0.02,0.05", help="comma list for prop41-rho")
    p_exp.add_argument("--fit-tol", dest="fit_tol", type=float, default=0.01)
    p_exp.add_argument("--scaling-tol", dest="scaling_tol", type=float, default=0.10)
    p_exp.add_argument("--json", default=None)
    p_exp.set_defaults(func=cmd_expansion)

    return parser


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    args._argv = argv
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (ValueError,) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
