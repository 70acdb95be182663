"""Command-line entry point: ``ncwell {spectrum,bounds,verify,minlength,check}``.

Exit codes: 0 success, 1 a must-pass verification failed, 2 usage or
configuration error.  Data output carries no timestamps.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence, TextIO

from . import __version__
from .airy import airy_zero
from .bounds import PAPER_THETA_BOUND, TauConvention, bound_report, min_uncertainty_x
from .constants import ConfigError, Constants, Experiment, load_config, wavenumber
from .fdcheck import Grid1D, fd_eigenvalues
from .reps import SUITE_NAMES, suite
from .spectrum import DeformationParams, NeglectPolicy, spectrum_table

FMT = "%.12e"


def _num(x: float) -> str:
    return FMT % (x + 0.0)  # no "-0.0"


def _load(args) -> tuple[Constants, Experiment]:
    if args.config:
        return load_config(args.config)
    return Constants(), Experiment()


def _table(rows: list[list[str]], out: TextIO) -> None:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    for r in rows:
        out.write("  ".join(cell.ljust(w) for cell, w in zip(r, widths)).rstrip() + "\n")


def _banner(out: TextIO, command: str) -> None:
    out.write(f"# ncwell {__version__} {command}\n")


def cmd_spectrum(args, out: TextIO) -> int:
    c, e = _load(args)
    k = args.k if args.k is not None else wavenumber(c, e)
    p = DeformationParams(args.theta, args.tau)
    rows = spectrum_table(args.nmax, k, p, c)
    header = ["n", "k", "e_commutative_J", "shift_theta_J", "shift_tau_J", "e_total_J"]
    body = [
        [str(r.n), _num(r.k), _num(r.e_commutative), _num(r.shift_theta), _num(r.shift_tau), _num(r.e_total)]
        for r in rows
    ]
    _banner(out, "spectrum")
    if args.format == "table":
        _table([header] + body, out)
    else:
        out.write(",".join(header) + "\n")
        for r in body:
            out.write(",".join(r) + "\n")
    for line in NeglectPolicy().describe():
        out.write(f"# {line}\n")
    return 0


def cmd_bounds(args, out: TextIO) -> int:
    c, e = _load(args)
    rep = bound_report(c, e, args.tau_convention, args.theta_star)
    pairs = rep.as_pairs()
    _banner(out, "bounds")

    def fmt(v):
        return v if isinstance(v, str) else _num(v)

    if args.format == "csv":
        out.write("key,value\n")
        for key, v in pairs:
            out.write(f"{key},{fmt(v)}\n")
        return 0
    if args.format == "table":
        rows = [
            ["quantity", "value", "unit"],
            ["theta bound", _num(rep.theta_max), "m^2"],
            ["tau bound", _num(rep.tau_max), "m^-2"],
            ["min length bound", _num(rep.min_length_bound), "m"],
            ["theta coefficient", _num(rep.coeff_theta), "J/m^2"],
            ["tau coefficient", _num(rep.coeff_tau), "J m^2"],
            ["tau, full budget", _num(rep.tau_full_budget), "m^-2"],
            ["tau, residual", _num(rep.tau_residual), "m^-2"],
            ["tau, published", _num(rep.tau_paper), "m^-2"],
        ]
        _table(rows, out)
        out.write(
            f"# tau convention: {rep.tau_convention}; theta source: {rep.theta_source}; "
            f"published tau lies between residual and full-budget values: "
            f"{rep.tau_residual <= rep.tau_paper <= rep.tau_full_budget}\n"
        )
    for key, v in pairs:
        out.write(f"{key}={fmt(v)}\n")
    return 0


def cmd_verify(args, out: TextIO) -> int:
    entries = suite(args.suite)
    rows = [["check", "claim", "status", "kind", "residual"]]
    failed = 0
    for report, must_pass in entries:
        for claim in report:
            status = "PASS" if claim.passed else "FAIL"
            if must_pass and not claim.passed:
                failed += 1
            rows.append([report.title, claim.label, status, "must-pass" if must_pass else "report", str(claim.residual)])
    _banner(out, "verify")
    if args.format == "csv":
        for r in rows:
            out.write(",".join(f'"{cell}"' if "," in cell else cell for cell in r) + "\n")
    else:
        _table(rows, out)
    out.write(f"# must-pass failures: {failed}\n")
    return 1 if failed else 0


def cmd_minlength(args, out: TextIO) -> int:
    p = DeformationParams(args.theta, args.tau)
    value = min_uncertainty_x(p, args.y_mean)
    _banner(out, "minlength")
    out.write(f"theta={_num(p.theta)}\ntau={_num(p.tau)}\ny_mean={_num(args.y_mean)}\n")
    out.write(f"min_uncertainty_x={_num(value)}\n")
    return 0


def cmd_check(args, out: TextIO) -> int:
    c, _ = _load(args)
    grid = Grid1D(args.xmax, args.points)
    fd = fd_eigenvalues(args.levels, grid, c)
    rows = [["n", "fd_J", "airy_J", "rel_error"]]
    for n, e_fd in enumerate(fd, start=1):
        e_airy = -c.energy_scale * airy_zero(n).r_n
        rows.append([str(n), _num(e_fd), _num(e_airy), "%.3e" % ((e_fd - e_airy) / e_airy)])
    _banner(out, "check")
    if args.format == "csv":
        for r in rows:
            out.write(",".join(r) + "\n")
    else:
        _table(rows, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncwell", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"ncwell {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value file overriding the default constants")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", parents=[common], help="energy levels with deformation shifts")
    p.add_argument("--nmax", type=int, default=5)
    p.add_argument("--theta", type=float, default=0.0, help="m^2")
    p.add_argument("--tau", type=float, default=0.0, help="m^-2")
    p.add_argument("--k", type=float, default=None, help="1/m; default m <v_y> / hbar")
    p.add_argument("--format", choices=["csv", "table"], default="csv")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("bounds", parents=[common], help="theta and tau bounds with the implied minimal length")
    p.add_argument("--tau-convention", choices=[t.value for t in TauConvention], default="residual")
    p.add_argument("--theta-star", type=float, default=PAPER_THETA_BOUND, help="theta used by the residual convention")
    p.add_argument("--format", choices=["table", "kv", "csv"], default="table")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", parents=[common], help="exact checks of the operator algebra")
    p.add_argument("--suite", choices=["all", *SUITE_NAMES], default="all")
    p.add_argument("--format", choices=["table", "csv"], default="table")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("minlength", parents=[common], help="minimal x uncertainty")
    p.add_argument("--theta", type=float, default=PAPER_THETA_BOUND)
    p.add_argument("--tau", type=float, default=6.26e8)
    p.add_argument("--y-mean", type=float, default=0.0)
    p.add_argument("--format", choices=["kv"], default="kv")
    p.set_defaults(func=cmd_minlength)

    p = sub.add_parser("check", parents=[common], help="finite-difference check of the Airy levels")
    p.add_argument("--levels", type=int, default=3)
    p.add_argument("--points", type=int, default=4000)
    p.add_argument("--xmax", type=float, default=60e-6, help="m")
    p.add_argument("--format", choices=["table", "csv"], default="table")
    p.set_defaults(func=cmd_check)
    return parser


def run(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (ConfigError, ValueError) as exc:
        err.write(f"ncwell {args.command}: error: {exc}\n")
        return 2


def main() -> None:
    sys.exit(run())
