"""Command-line interface.

Exit status: 0 on success, 2 on validation or domain errors, 1 on I/O errors.
Results go to standard output, diagnostics to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import gaussian as g
from .errors import AidcorError
from .fileio import parse_columns, read_csv, read_spec, write_csv
from .montecarlo import RngSpec, mc_affine_dcor_gaussian
from .stats import dcor
from .timeseries import LAG_CONVENTION, auto_dcor, cross_dcor


class _UsageError(Exception):
    pass


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be a positive integer, got {text}")
    return v


def _spec_from_args(args) -> g.GaussianSpec:
    if getattr(args, "spec", None):
        return read_spec(args.spec)
    if getattr(args, "rho", None) is None:
        raise _UsageError("either --spec or --rho is required")
    sx = getattr(args, "sigma_x", 1.0)
    sy = getattr(args, "sigma_y", 1.0)
    p, q = args.p, args.q
    return g.GaussianSpec(sx ** 2 * np.eye(p), sy ** 2 * np.eye(q), args.rho * sx * sy * np.eye(p, q))


def cmd_sample(args, out, err) -> int:
    x = read_csv(args.file, args.x)
    y = read_csv(args.file, args.y)
    res = dcor(x, y, affine=args.affine)
    if res.degenerate:
        err.write("warning: degenerate input, distance correlation set to 0\n")
    if args.out == "csv":
        write_csv(out, ["v2", "v2_xx", "v2_yy", "r", "degenerate"],
                  [(res.v2, res.v2_xx, res.v2_yy, res.r, int(res.degenerate))])
    else:
        _emit_json({"variant": res.variant, **res.as_dict()}, out)
    return 0


def cmd_gaussian(args, out, err) -> int:
    what = args.what
    if what == "exact":
        spec = _spec_from_args(args)
        lam = g.lambda_from_spec(spec)
        res = g.aidcor_gaussian(spec)
        _emit_json({"p": spec.p, "q": spec.q, "lambda_eigenvalues": lam.eigenvalues.tolist(),
                    **res.as_dict()}, out)
    elif what == "variance":
        _emit_json({"p": args.p, "v2_xx": g.aidvar2_gaussian(args.p)}, out)
    elif what == "scalar-standard":
        spec = _spec_from_args(args)
        _emit_json({"p": spec.p, "q": spec.q, "v2_xy": g.dcov2_gaussian_scalar(spec)}, out)
    elif what == "limits":
        p, q = args.p, args.q
        _emit_json({
            "p": p,
            "q": q,
            "small_lambda_ratio": g.limit_smalllambda_ratio(p, q),
            "fixed_q_dcov_ratio": g.limit_fixed_q_dcov_ratio(q),
            "fixed_q_dcor_ratio": g.limit_fixed_q_ratio(q),
            "highdim_variance_limit": 0.5,
        }, out)
    elif what == "grid":
        r = np.round(np.arange(0.0, 1.0 + 1e-9, args.step), 12)
        if args.kind == "settings":
            write_csv(out, ["r", "diag_0_r", "diag_r_r", "all_r"], g.settings_grid(r))
        else:
            write_csv(out, ["r", "s", "r_affine"], g.rs_grid(r, r, layout=args.kind[3:]))
    elif what == "convert-pearson":
        if args.spec:
            val = g.pearson_to_dcor_gaussian(read_spec(args.spec))
        elif args.rho is not None:
            if args.p == 1 and args.q == 1:
                val = g.pearson_to_dcor(args.rho)
            else:
                val = g.pearson_to_dcor_gaussian(_spec_from_args(args))
        else:
            raise _UsageError("either --spec or --rho is required")
        _emit_json({"r_affine": val}, out)
    return 0


def _series_values(args, which: str) -> np.ndarray:
    return read_csv(args.file, parse_columns(getattr(args, which)))


def cmd_acf(args, out, err) -> int:
    res = auto_dcor(_series_values(args, "series"), args.max_lag,
                    "affine" if args.affine else "standard")
    if res.degenerate:
        err.write("warning: degenerate series, correlogram set to 0\n")
    write_csv(out, ["lag", "value", "n_effective"],
              zip(res.lags.tolist(), res.values.tolist(), res.n_effective.tolist()))
    return 0


def cmd_ccf(args, out, err) -> int:
    res = cross_dcor(_series_values(args, "series"), _series_values(args, "series2"),
                     args.max_lag, "affine" if args.affine else "standard")
    if res.degenerate:
        err.write("warning: degenerate series, correlogram set to 0\n")
    write_csv(out, ["lag", "value", "n_effective"],
              zip(res.lags.tolist(), res.values.tolist(), res.n_effective.tolist()),
              comment=LAG_CONVENTION.replace("the first series", f"--series ({args.series})")
              .replace("the second", f"--series2 ({args.series2})"))
    return 0


def cmd_mc(args, out, err) -> int:
    spec = _spec_from_args(args)
    target = g.aidcor_gaussian(spec).r_affine if args.target == "exact" else None
    rep = mc_affine_dcor_gaussian(spec, args.n, args.replicates, RngSpec(args.seed), target)
    _emit_json({"statistic": "sample_affine_dcor", **rep.as_dict()}, out)
    return 0


def _add_spec_args(p, with_scale: bool = False) -> None:
    p.add_argument("--spec", help="JSON Gaussian spec file")
    p.add_argument("--rho", type=float,
                   help="shortcut: unit marginals, Sigma_XY = rho * I (rectangular)")
    p.add_argument("--p", type=_positive_int, default=1)
    p.add_argument("--q", type=_positive_int, default=1)
    if with_scale:
        p.add_argument("--sigma-x", type=float, default=1.0, dest="sigma_x")
        p.add_argument("--sigma-y", type=float, default=1.0, dest="sigma_y")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="aidcor", description="Distance correlation toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample distance covariance/correlation of CSV columns")
    p.add_argument("--file", required=True)
    p.add_argument("--x", required=True, help="comma-separated column names")
    p.add_argument("--y", required=True, help="comma-separated column names")
    p.add_argument("--affine", action="store_true")
    p.add_argument("--out", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("gaussian", help="exact results for Gaussian populations")
    gsub = p.add_subparsers(dest="what", required=True)
    q = gsub.add_parser("exact", help="affine distance covariance and correlation")
    _add_spec_args(q)
    q = gsub.add_parser("variance", help="affine distance variance")
    q.add_argument("--p", type=_positive_int, required=True)
    q = gsub.add_parser("scalar-standard", help="standard dcov^2 with scalar marginal covariances")
    _add_spec_args(q, with_scale=True)
    q = gsub.add_parser("limits", help="limit-theorem constants")
    q.add_argument("--p", type=_positive_int, default=1)
    q.add_argument("--q", type=_positive_int, default=1)
    q = gsub.add_parser("grid", help="CSV tables of the affine distance correlation over parameter grids")
    q.add_argument("--kind", choices=("settings", "rs-diag", "rs-column"), default="settings",
                   help="settings: p = q = 2 with diag(0, r), diag(r, r), all-r blocks; "
                        "rs-diag: diag(r, s); rs-column: p = 2, q = 1, (r, s)'")
    q.add_argument("--step", type=float, default=0.1)
    q = gsub.add_parser("convert-pearson", help="Pearson correlation to distance correlation")
    _add_spec_args(q)
    p.set_defaults(func=cmd_gaussian)

    for name, func, help_ in (("acf", cmd_acf, "auto distance correlation function"),
                              ("ccf", cmd_ccf, "cross distance correlation function")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--file", required=True)
        p.add_argument("--series", required=True, help="comma-separated column names")
        if name == "ccf":
            p.add_argument("--series2", required=True, help="comma-separated column names")
        p.add_argument("--max-lag", type=int, required=True, dest="max_lag")
        p.add_argument("--affine", action="store_true")
        p.set_defaults(func=func)

    p = sub.add_parser("mc", help="Monte Carlo check of the sample affine distance correlation")
    _add_spec_args(p)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--replicates", type=_positive_int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", choices=("exact",))
    p.set_defaults(func=cmd_mc)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out, err)
    except _UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return 1
    except (AidcorError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
