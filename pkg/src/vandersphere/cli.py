"""Command-line surface.

Subcommands:
  extrema N [--format text|json|csv] [--out PATH]
      Extremal polynomial (both constructions), certified roots, extreme
      value, certification residuals, and closed-form errata flags (n <= 7).
  optimize N [--seed S] [--restarts R] [--out DIR]
      Projected gradient ascent cross-check; writes one trace CSV per restart
      under DIR when given.
  grid N [--res WxH] [--exponents A,B,C] [--out PATH]
      Sphere-slice evaluation grid; CSV by default, JSON when PATH ends in
      .json.  Exponent grids only for N = 3.
  limits {factorize|minors|ratio} --nodes ... --exponents ... [--out PATH]
      Convergence reports for the factorization, minor-series, and
      determinant-ratio limits.

Node and exponent lists accept plain numbers, the token `e`, and fractions
such as 1/3.  All randomness flows from --seed; identical invocations produce
byte-identical output files.

Exit codes: 0 success, 1 usage error, 2 numerical or certification failure.
"""

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import extrema as ex
from . import grids, limits, optimizer
from .emit import fmt, json_text, write_text
from .vandermonde import ZeroNodeWithNonIntegerExponent, det_general, build_generalized

OPTIMIZE_GAP_TOL = 1e-6
FACTORIZE_TOL = 1e-10
MINORS_TOL = 1e-8
RATIO_REL_TOL = 1e-4


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_scalar(token):
    token = token.strip()
    if token == "e":
        return math.e
    if token == "-e":
        return -math.e
    if "/" in token:
        return float(Fraction(token))
    return float(token)


def parse_scalar_list(text):
    try:
        return [parse_scalar(tok) for tok in text.split(",") if tok.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"could not parse scalar list {text!r}: {exc}") from exc


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        write_text(out, text)
        print(f"wrote {out}")


# ---------------------------------------------------------------------------
# extrema

def _extrema_payload(n):
    explicit = ex.pn_from_hermite(n)
    recursive = ex.pn_recursive(n)
    point_set = ex.solve_extrema(n)
    report = ex.closed_form_roots(n) if 3 <= n <= 7 else None
    return explicit, recursive, point_set, report


def _extrema_text(explicit, recursive, point_set, report):
    lines = [f"n: {point_set.n}"]
    lines.append(f"polynomial: {ex.describe_polynomial(explicit)}")
    lines.append("coefficients_explicit: " + ", ".join(fmt(c) for c in explicit.coeffs))
    lines.append("coefficients_recursive: " + ", ".join(fmt(c) for c in recursive.coeffs))
    lines.append("roots: " + ", ".join(fmt(r) for r in point_set.roots))
    lines.append(f"extreme_value: {fmt(point_set.extreme_value)}")
    for name, value in point_set.residuals.items():
        lines.append(f"residual {name}: {fmt(value)}")
    if report is not None:
        for entry in report.entries:
            status = "FLAGGED" if entry.flagged else "ok"
            lines.append(
                f"closed_form {entry.label}: value={fmt(entry.value)} "
                f"certified={fmt(entry.nearest)} deviation={fmt(entry.deviation)} {status}"
            )
            if entry.note:
                lines.append(f"  note: {entry.note}")
    return "\n".join(lines) + "\n"


def _extrema_json(explicit, recursive, point_set, report):
    payload = {
        "n": point_set.n,
        "coefficients_explicit": list(explicit.coeffs),
        "coefficients_recursive": list(recursive.coeffs),
        "roots": list(point_set.roots),
        "extreme_value": point_set.extreme_value,
        "residuals": dict(point_set.residuals),
        "closed_forms": None
        if report is None
        else [
            {
                "label": e.label,
                "value": e.value,
                "certified": e.nearest,
                "deviation": e.deviation,
                "flagged": e.flagged,
                "note": e.note,
            }
            for e in report.entries
        ],
    }
    return json_text(payload) + "\n"


def _extrema_csv(explicit, recursive, point_set, report):
    rows = ["row_type,name,value"]
    for k, c in enumerate(explicit.coeffs):
        rows.append(f"coefficient_explicit,{k},{fmt(c)}")
    for k, c in enumerate(recursive.coeffs):
        rows.append(f"coefficient_recursive,{k},{fmt(c)}")
    for i, r in enumerate(point_set.roots, start=1):
        rows.append(f"root,{i},{fmt(r)}")
    rows.append(f"extreme_value,,{fmt(point_set.extreme_value)}")
    for name, value in point_set.residuals.items():
        rows.append(f"residual,{name},{fmt(value)}")
    if report is not None:
        for e in report.entries:
            rows.append(f"closed_form_deviation,{e.label},{fmt(e.deviation)}")
            rows.append(f"closed_form_flagged,{e.label},{'1' if e.flagged else '0'}")
    return "\n".join(rows) + "\n"


def cmd_extrema(args):
    n = args.n
    if not 2 <= n <= ex.MAX_DIMENSION:
        raise UsageError(f"n must lie in 2..{ex.MAX_DIMENSION}")
    try:
        parts = _extrema_payload(n)
    except ex.RootFindingFailure as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return 2
    render = {"text": _extrema_text, "json": _extrema_json, "csv": _extrema_csv}
    _emit(render[args.format](*parts), args.out)
    return 0


# ---------------------------------------------------------------------------
# optimize

def cmd_optimize(args):
    if args.n < 2:
        raise UsageError("n must be at least 2")
    if args.n > ex.MAX_DIMENSION:
        print(f"no analytic reference beyond n = {ex.MAX_DIMENSION}", file=sys.stderr)
        return 2
    cfg = optimizer.OptimizerConfig(n=args.n, seed=args.seed, restarts=args.restarts)
    traces = optimizer.restart_traces(cfg)
    if args.out is not None:
        outdir = Path(args.out)
        outdir.mkdir(parents=True, exist_ok=True)
        for trace in traces:
            trace.to_csv(outdir / f"trace_r{trace.restart}.csv")
    if not any(t.converged for t in traces):
        print("no restart converged", file=sys.stderr)
        return 2
    best = max(traces, key=lambda t: (abs(t.final_value), -t.restart))
    analytic = ex.solve_extrema(args.n).extreme_value
    best_value = abs(best.final_value)
    gap = abs(best_value - analytic) / analytic if analytic > 0 else float("inf")
    residual = optimizer.equi_residual(best.final_point)
    print(f"best |v_n|: {fmt(best_value)}")
    print(f"analytic value: {fmt(analytic)}")
    print(f"relative gap: {fmt(gap)}")
    print(f"equivalence residual: {fmt(residual)}")
    print(f"converged restarts: {sum(t.converged for t in traces)}/{len(traces)}")
    return 0 if gap < OPTIMIZE_GAP_TOL else 2


# ---------------------------------------------------------------------------
# grid

def _parse_resolution(text):
    try:
        w, h = text.lower().split("x")
        return int(w), int(h)
    except ValueError as exc:
        raise UsageError(f"resolution must look like 720x360, got {text!r}") from exc


def cmd_grid(args):
    resolution = _parse_resolution(args.res)
    exponents = None
    if args.exponents is not None:
        values = parse_scalar_list(args.exponents)
        if any(v != int(v) for v in values):
            raise UsageError("grid exponents must be integers")
        exponents = tuple(int(v) for v in values)
    try:
        grid = grids.grid_eval(args.n, resolution, exponents)
    except (grids.UnsupportedDimension, grids.GeneralizedOnlyFor3D, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if args.out is not None:
        grid.write(args.out)
        print(f"wrote {args.out}")
    vmax = grid.values.max()
    vmin = grid.values.min()
    imax = np.unravel_index(np.argmax(grid.values), grid.values.shape)
    imin = np.unravel_index(np.argmin(grid.values), grid.values.shape)
    print(f"max: {fmt(vmax)} at theta={fmt(grid.thetas[imax[1]])} phi={fmt(grid.phis[imax[0]])}")
    print(f"min: {fmt(vmin)} at theta={fmt(grid.thetas[imin[1]])} phi={fmt(grid.phis[imin[0]])}")
    if exponents is not None:
        _report_zero_bands(grid, exponents)
    return 0


def _report_zero_bands(grid, exponents):
    ordinary = grids.grid_eval(grid.n, (grid.theta_count, grid.phi_count))
    g_theta, g_phi = grids.sign_change_edges(grid.values)
    v_theta, v_phi = grids.sign_change_edges(ordinary.values)
    extra_theta = g_theta & ~v_theta
    extra_phi = g_phi & ~v_phi
    count = int(extra_theta.sum() + extra_phi.sum())
    print(f"zero-crossing edges: {int(g_theta.sum() + g_phi.sum())}")
    if count == 0:
        print("no zero bands beyond the node-coincidence circles")
        return
    column_sums = grids.TRANSFORMS[grid.n].matrix.sum(axis=0)
    th, ph = np.meshgrid(grid.thetas, grid.phis)
    e1 = np.tensordot(column_sums, grids.spherical_to_t(th, ph), axes=1)
    mids = []
    idx = np.argwhere(extra_theta)
    for i, j in idx:
        mids.append(0.5 * (e1[i, j] + e1[i, (j + 1) % grid.theta_count]))
    idx = np.argwhere(extra_phi)
    for i, j in idx:
        mids.append(0.5 * (e1[i, j] + e1[i + 1, j]))
    mids = np.abs(np.array(mids))
    print(
        f"zero bands beyond node-coincidence circles: {count} edges, "
        f"|sum(x)| in [{fmt(mids.min())}, {fmt(mids.max())}]"
    )


# ---------------------------------------------------------------------------
# limits

def _limits_csv(rows, header):
    return "\n".join([header] + [",".join(fmt(c) for c in row) for row in rows]) + "\n"


def cmd_limits(args):
    x = parse_scalar_list(args.nodes)
    a = parse_scalar_list(args.exponents)
    try:
        if args.case == "factorize":
            return _limits_factorize(args, x, a)
        if args.case == "minors":
            return _limits_minors(args, x, a)
        return _limits_ratio(args, x, a)
    except (limits.ZeroNode, ZeroNodeWithNonIntegerExponent) as exc:
        raise UsageError(str(exc)) from exc
    except (limits.LengthMismatch, limits.DimensionGuard, limits.DegenerateExponents) as exc:
        raise UsageError(str(exc)) from exc


def _limits_factorize(args, x, a):
    reference = build_generalized(x, a)
    rows = []
    for k in range(1, args.k + 1):
        approx = limits.truncated_factorization(x, a, k)
        err = np.abs(approx - reference)
        i, j = np.unravel_index(np.argmax(err), err.shape)
        rows.append((k, approx[i, j].real, reference[i, j].real, err[i, j]))
    final_err = rows[-1][3]
    if args.out:
        _emit(_limits_csv(rows, "k,approximation,reference,abs_error"), args.out)
    print(f"max entry error at k={args.k}: {fmt(final_err)}")
    return 0 if final_err < FACTORIZE_TOL else 2


def _limits_minors(args, x, a):
    sums = limits.minor_series_gn(x, a, args.K)
    reference = complex(det_general(build_generalized(x, a)))
    n = len(x)
    rows = [
        (k, sums[k - n].real, reference.real, abs(sums[k - n] - reference))
        for k in range(n, args.K + 1)
    ]
    final_err = rows[-1][3]
    if args.out:
        _emit(_limits_csv(rows, "k,approximation,reference,abs_error"), args.out)
    print(f"series error at K={args.K}: {fmt(final_err)}")
    return 0 if final_err < MINORS_TOL else 2


def _limits_ratio(args, x, a):
    schedule = None
    if args.t_schedule is not None:
        schedule = parse_scalar_list(args.t_schedule)
    report = limits.ratio_limit(x, a, schedule)
    rows = [
        (t, r.real, report.limit_rhs.real, abs(r - report.limit_rhs))
        for t, r in zip(report.t_values, report.ratios)
    ]
    if args.out:
        _emit(_limits_csv(rows, "t,approximation,reference,abs_error"), args.out)
    final_rel = rows[-1][3] / abs(report.limit_rhs)
    print(f"limit: {fmt(report.limit_rhs.real)}")
    print(f"final relative error: {fmt(final_rel)}")
    if report.series_used.any():
        first = report.t_values[report.series_used].max()
        print(f"series evaluation used for t <= {fmt(first)}")
    return 0 if final_rel < RATIO_REL_TOL else 2


# ---------------------------------------------------------------------------

def build_parser():
    parser = Parser(prog="vandersphere", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extrema", help="certified extreme points and polynomial")
    p.add_argument("n", type=int)
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_extrema)

    p = sub.add_parser("optimize", help="sphere ascent cross-check")
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=8)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("grid", help="sphere-slice evaluation grid")
    p.add_argument("n", type=int)
    p.add_argument("--res", default="720x360")
    p.add_argument("--exponents", default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("limits", help="factorization, minor-series, and ratio limits")
    case = p.add_subparsers(dest="case", required=True)
    f = case.add_parser("factorize")
    f.add_argument("--nodes", required=True)
    f.add_argument("--exponents", required=True)
    f.add_argument("--k", type=int, default=40)
    f.add_argument("--out", default=None)
    m = case.add_parser("minors")
    m.add_argument("--nodes", required=True)
    m.add_argument("--exponents", required=True)
    m.add_argument("--K", type=int, default=30)
    m.add_argument("--out", default=None)
    r = case.add_parser("ratio")
    r.add_argument("--nodes", required=True)
    r.add_argument("--exponents", required=True)
    r.add_argument("--t-schedule", dest="t_schedule", default=None)
    r.add_argument("--out", default=None)
    for pp in (f, m, r):
        pp.set_defaults(func=cmd_limits)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # argparse --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
