"""Command-line front end: ``python -m hc3 <command> [options]``.

Exit status: 0 on success, 2 for invalid input, 3 when a solver does not
converge or a bracket fails.
"""

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .errors import GridTooSmallError, HC3Error

SCHEMA = "hc3/1"


def _num(x):
    """Round to 12 significant digits; NaN and infinities become None."""
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(f"{x:.12g}") + 0.0


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, str) or obj is None:
        return obj
    return _num(obj)


def _cell(x):
    if isinstance(x, str):
        return x
    v = _num(x)
    if v is None:
        return "nan"
    return str(v) if isinstance(v, (int, bool)) else f"{v:.12g}"


def emit_json(payload, out):
    body = {"schema": SCHEMA}
    body.update(_clean(payload))
    out.write(json.dumps(body, indent=2) + "\n")


def emit_csv(rows, columns, out):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([_cell(r[c]) for c in columns])


def emit(rows, columns, fmt, out, extra=None):
    if fmt == "csv":
        emit_csv(rows, columns, out)
    else:
        payload = dict(extra or {})
        payload["rows"] = [{c: r[c] for c in columns} for r in rows]
        emit_json(payload, out)


def _positive(kind=float):
    def check(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}")
        if not v > 0 or not math.isfinite(v):
            raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
        return v
    return check


def _nonneg(kind=float):
    def check(text):
        try:
            v = kind(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {text!r}")
        if v < 0 or not math.isfinite(v):
            raise argparse.ArgumentTypeError(f"must be nonnegative: {text!r}")
        return v
    return check


def _finite(text):
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be finite: {text!r}")
    return v


def _grid(args):
    from .model_operator import DEFAULT_GRID, HalfLineGrid
    if args.grid_l is None and args.grid_n is None:
        return DEFAULT_GRID
    return HalfLineGrid(args.grid_l or DEFAULT_GRID.length, args.grid_n or DEFAULT_GRID.points)


def _constants(args):
    from .constants import default_constants
    return default_constants(_grid(args))


def _range(lo, hi, step, name):
    if lo is None or hi is None or step is None:
        raise ValueError(f"give --{name} or all of --{name}-min/--{name}-max/--{name}-step")
    if hi < lo:
        raise ValueError(f"--{name}-max must not be below --{name}-min")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [lo + i * step for i in range(count)]


def _progress(i, total, x):
    print(f"[{i}/{total}] {x:.6g}", file=sys.stderr, flush=True)


def cmd_constants(args, out):
    c = _constants(args)
    d = c.to_dict()
    d["curvature_coefficient"] = c.curvature_coefficient
    if args.format == "csv":
        flat = {k: v for k, v in d.items() if k != "lambda2"}
        flat.update({f"lambda2_{k}": v for k, v in d["lambda2"].items()})
        emit_csv([flat], list(flat), out)
    else:
        emit_json(d, out)


def cmd_mu(args, out):
    from .model_operator import ground_state, mu, mu_derivative
    grid = _grid(args)
    mode = ground_state(args.zeta, grid)
    row = {"zeta": args.zeta, "mu": mu(args.zeta, grid),
           "mu_derivative": mu_derivative(args.zeta, grid),
           "u0_at_0": mode.boundary_value, "residual": mode.residual()}
    emit([row], list(row), args.format, out)


DISC_COLUMNS = ("B", "m_star", "lambda1", "delta_m", "Delta_B", "residual")


def cmd_disc_lambda(args, out):
    from .disc import lambda1_disc
    c = _constants(args)
    res = lambda1_disc(args.b, c, n=args.radial_n)
    row = {"B": res.B, "m_star": res.m_star, "lambda1": res.lambda1,
           "delta_m": res.delta_m, "Delta_B": res.Delta_B, "residual": res.residual(c)}
    emit([row], DISC_COLUMNS, args.format, out)


HC3_COLUMNS = ("kappa", "H", "residual", "lower_local", "upper_local", "asymptotic_gap")


def cmd_hc3(args, out):
    from .critical_field import hc3_local
    kappas = [args.kappa] if args.kappa is not None else _range(
        args.kappa_min, args.kappa_max, args.kappa_step, "kappa")
    rows = []
    for i, k in enumerate(kappas):
        rows.append(hc3_local(k, with_local_fields=not args.skip_local).to_dict())
        if len(kappas) > 1:
            _progress(i + 1, len(kappas), k)
    emit(rows, HC3_COLUMNS, args.format, out)


def cmd_series(args, out):
    from .series import (ExpansionInputs, bernoff_sternberg, invert_critical_field,
                         read_zeta, resubstitution_residual)
    c = _constants(args)
    zeta = read_zeta(args.zeta) if args.zeta else ()
    inputs = ExpansionInputs.from_constants(c, args.k_max, args.k2, zeta)
    res = invert_critical_field(inputs, args.order)
    resid = resubstitution_residual(inputs, res)
    terms = [{"exponent": float(e), "coefficient": float(v)} for e, v in res.H_terms()]
    bs = [{"exponent": float(e), "coefficient": float(v)}
          for e, v in bernoff_sternberg(inputs).items()]
    if args.format == "csv":
        emit_csv(terms, ["exponent", "coefficient"], out)
        return
    emit_json({"order": args.order, "k_max": args.k_max, "k2": args.k2,
               "eta": [float(x) for x in res.eta], "H_terms": terms,
               "bernoff_sternberg": bs,
               "max_resubstitution_residual": max((abs(float(v)) for _, v in resid),
                                                  default=0.0)}, out)


def cmd_gauge_check(args, out):
    from .gauge import BoundaryParametrization, gamma0, normal_form_A1
    disc = BoundaryParametrization.disc()
    g0 = gamma0(1.0, disc)
    rows = []
    for s in np.linspace(0.0, disc.perimeter, 5)[:-1]:
        for t in (0.0, 0.05, 0.1, 0.15, 0.2, 0.25):
            a = float(normal_form_A1(disc, 1.0, s, t, g0))
            exact = 0.5 - t + 0.5 * t * t
            rows.append({"s": s, "t": t, "A1_bar": a, "exact": exact, "error": a - exact})
    cols = ["s", "t", "A1_bar", "exact", "error"]
    emit(rows, cols, args.format, out,
         {"gamma0": g0, "max_error": max(abs(r["error"]) for r in rows)})


def cmd_trial_check(args, out):
    from .perturbation import ModelExpansion
    grid = _grid(args)
    c = _constants(args)
    exp = ModelExpansion(grid)
    Bs = [args.b] if args.b is not None else [100.0, 400.0, 1600.0]
    rows = []
    for delta in (0.0, c.delta0):
        for B in Bs:
            psi = exp.trial_state(delta, B)
            r = psi.residual()
            rows.append({"delta": delta, "B": B, "residual": r,
                         "scaled_residual": r * B ** 1.5, "norm": psi.norm()})
    emit(rows, ["delta", "B", "residual", "scaled_residual", "norm"], args.format, out)


def cmd_sweep(args, out):
    from .disc import SWEEP_COLUMNS, sweep
    c = _constants(args)
    Bs = _range(args.b_min, args.b_max, args.b_step, "b")
    rows = sweep(Bs, c, n=args.radial_n, progress=_progress)
    emit(rows, SWEEP_COLUMNS, args.format, out)


def build_parser():
    p = argparse.ArgumentParser(prog="hc3", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--grid-l", type=_positive(), help="half-line truncation length")
    common.add_argument("--grid-n", type=_positive(int), help="half-line grid points")
    common.add_argument("--radial-n", type=_positive(int), help="radial cells (disc)")
    sub = p.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def add(name, func, fmt, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("--format", choices=("json", "csv"), default=fmt)
        sp.set_defaults(func=func)
        return sp

    add("constants", cmd_constants, "json", "universal constants")
    sp = add("mu", cmd_mu, "json", "ground state energy mu(zeta) of the half-line operator")
    sp.add_argument("--zeta", type=_finite, required=True)
    sp = add("disc-lambda", cmd_disc_lambda, "csv", "lowest disc eigenvalue at field B")
    sp.add_argument("--b", type=_positive(), required=True)
    sp = add("hc3", cmd_hc3, "json", "local critical field of the disc")
    sp.add_argument("--kappa", type=_positive())
    sp.add_argument("--kappa-min", type=_positive())
    sp.add_argument("--kappa-max", type=_positive())
    sp.add_argument("--kappa-step", type=_positive())
    sp.add_argument("--skip-local", action="store_true", help="skip the local-field scan")
    sp = add("series", cmd_series, "json", "large-kappa series of the critical field")
    sp.add_argument("--order", type=_nonneg(int), default=8)
    sp.add_argument("--k-max", type=_positive(), default=1.0)
    sp.add_argument("--k2", type=_nonneg(), default=0.0)
    sp.add_argument("--zeta", help="CSV of (j, zeta_j) rows")
    add("gauge-check", cmd_gauge_check, "json", "disc gauge normal form table")
    sp = add("trial-check", cmd_trial_check, "json", "quasimode residuals")
    sp.add_argument("--b", type=_positive())
    sp = add("sweep", cmd_sweep, "csv", "disc eigenvalue sweep over B")
    sp.add_argument("--b-min", type=_positive())
    sp.add_argument("--b-max", type=_positive())
    sp.add_argument("--b-step", type=_positive())
    return p


def run(argv=None, out=None):
    """Parse ``argv``, dispatch, and return the exit code."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    buf = io.StringIO()
    try:
        _grid(args)  # validate overrides even for commands that ignore them
        args.func(args, buf)
    except (GridTooSmallError, ValueError, OSError) as exc:
        print(f"hc3: error: {exc}", file=sys.stderr)
        return 2
    except HC3Error as exc:
        print(f"hc3: solver failure: {exc}", file=sys.stderr)
        return 3
    out.write(buf.getvalue())
    return 0


def main():
    sys.exit(run())
