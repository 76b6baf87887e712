"""Command-line front end.

Subcommands::

    siac filter DATA [kernel options]
    siac spectrum DATA [--window] [--filtered kernel options]
    siac kernel-response --H H [--r R --l L --k-max K --n-k N]
    siac bohm MOMENTS [--scalings FILE.json] [--unfiltered]

Exit codes: 0 success, 1 I/O or parse error, 2 invalid configuration,
3 numerical degeneracy (degenerate kernel or flagged Bohm points) with
``--strict``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

import numpy as np

from . import __version__
from .bohm import (
    VARIABLES, BohmConfig, MomentSet, compute_bohm_speed, filter_moments,
)
from .convolution import filter_grid
from .exceptions import (
    DegenerateKernelError, InvalidInputError, SIACError, UnsupportedConfigurationError,
)
from .grid import PointwiseData, build_mesh, lagrange_interpolant
from .io import TableError, read_table, write_table
from .kernel import KernelSpec
from .spectral import amplitude_spectrum, analytic_kernel_fourier

log = logging.getLogger("siac")

EXIT_OK, EXIT_IO, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2, 3


class ConfigError(InvalidInputError):
    pass


def _kernel_args(p: argparse.ArgumentParser, bohm: bool = False):
    g = p.add_argument_group("kernel")
    g.add_argument("--r", type=int, default=2, help="moments reproduced (kernel has r+1 splines)")
    g.add_argument("--l", type=int, default=2, dest="order", help="B-spline order")
    g.add_argument("--adaptive", action="store_true", help="adaptive kernel scaling")
    if bohm:
        g.add_argument("--generalized-spline", action=argparse.BooleanOptionalAction,
                       default=True, help="boundary spline on shifted kernels")
        return
    g.add_argument("--H", type=float, help="constant kernel scaling (grid units)")
    g.add_argument("--H-int", type=float, dest="H_int", help="interior scaling for --adaptive")
    g.add_argument("--h-grid", type=float, dest="h_grid", help="element size for --adaptive")
    g.add_argument("--generalized-spline", action="store_true",
                   help="boundary spline on shifted kernels")
    g.add_argument("--periodic", action="store_true", help="periodic data, symmetric kernel")
    g.add_argument("--domain", type=float, nargs=2, metavar=("A", "B"),
                   help="domain ends (default: half a spacing beyond the end samples)")
    g.add_argument("--stencil", type=int, nargs=2, default=(0, 0), metavar=("LEFT", "RIGHT"),
                   help="Lagrange stencil widths (default 0 0: piecewise constant)")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="siac", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("filter", help="filter a two-column (x, f) table")
    f.add_argument("input")
    _kernel_args(f)

    s = sub.add_parser("spectrum", help="single-sided amplitude spectrum")
    s.add_argument("input")
    s.add_argument("--window", action=argparse.BooleanOptionalAction, default=None,
                   help="apply a Hann window (default: on unless --periodic)")
    s.add_argument("--filtered", action="store_true", help="add the filtered data spectrum")
    _kernel_args(s)

    k = sub.add_parser("kernel-response", help="analytic |K^(k)| of the symmetric kernel")
    _kernel_args(k)
    k.add_argument("--k-max", type=float, help="largest wavenumber (default 20/H)")
    k.add_argument("--n-k", type=int, default=201, help="number of wavenumbers")

    b = sub.add_parser("bohm", help="Bohm speed from a moment table")
    b.add_argument("input")
    _kernel_args(b, bohm=True)
    b.add_argument("--scalings", help="JSON file of per-variable scalings in cells")
    b.add_argument("--unfiltered", action="store_true", help="skip the filtering step")
    b.add_argument("--Z", type=float, default=1.0)
    b.add_argument("--m-i", type=float, default=1.0, dest="m_i")
    b.add_argument("--e-charge", type=float, default=1.0, dest="e_charge")

    for sp in (f, s, k, b):
        sp.add_argument("--output", "-o", help="output path (default stdout)")
        sp.add_argument("--strict", action="store_true",
                        help="exit 3 on degenerate or complex-valued points")
    return p


def _spec(args, domain, h_grid) -> KernelSpec:
    if args.periodic and (args.adaptive or args.generalized_spline):
        raise ConfigError("--periodic excludes --adaptive and --generalized-spline")
    if args.adaptive:
        if args.H_int is None:
            raise ConfigError("--adaptive needs --H-int")
        return KernelSpec(r=args.r, order=args.order, domain=domain, adaptive=True,
                          H_int=args.H_int, h_grid=args.h_grid or h_grid,
                          generalized_spline=args.generalized_spline)
    if args.H is None:
        raise ConfigError("--H is required without --adaptive")
    return KernelSpec(r=args.r, order=args.order, domain=domain, H=args.H,
                      generalized_spline=args.generalized_spline,
                      boundary_mode="periodic" if args.periodic else "position_dependent")


def _echo(spec: KernelSpec, command: str, **extra) -> dict:
    cfg = {"command": command, "r": spec.r, "l": spec.order,
           "domain": f"{spec.domain[0]!r} {spec.domain[1]!r}",
           "boundary_mode": spec.boundary_mode,
           "generalized_spline": spec.generalized_spline,
           "adaptive": spec.adaptive}
    if spec.adaptive:
        cfg.update(H_int=repr(spec.H_int), h_grid=repr(spec.h_grid))
    else:
        cfg["H"] = repr(spec.H)
    cfg.update(extra)
    return cfg


def _load_profile(path, args):
    _, table = read_table(path, min_columns=2)
    xs, fs = table[:, 0], table[:, 1]
    if np.any(np.diff(xs) <= 0):
        raise TableError(f"{path}: x column is not strictly increasing")
    try:
        data = PointwiseData.from_centers(xs, fs, args.domain)
    except InvalidInputError as exc:
        raise ConfigError(str(exc)) from exc
    return data


def _filter_data(data, args):
    mesh = build_mesh(data)
    h_grid = (data.domain_hi - data.domain_lo) / data.n
    spec = _spec(args, (data.domain_lo, data.domain_hi), h_grid)
    left, right = args.stencil
    interp = lagrange_interpolant(data, mesh, left, right, periodic=args.periodic)
    return spec, filter_grid(interp, spec, data.xs)


def run_filter(args) -> int:
    data = _load_profile(args.input, args)
    spec, out = _filter_data(data, args)
    cfg = _echo(spec, "filter", input=args.input, stencil=f"{args.stencil[0]} {args.stencil[1]}")
    write_table(args.output, ["x", "f_filtered"], [data.xs, out], cfg)
    return EXIT_OK


def _uniform_dx(xs) -> float:
    d = np.diff(xs)
    dx = float((xs[-1] - xs[0]) / (xs.size - 1))
    if np.max(np.abs(d - dx)) > 1e-6 * abs(dx):
        raise ConfigError("spectrum needs uniformly spaced samples")
    return dx


def run_spectrum(args) -> int:
    data = _load_profile(args.input, args)
    dx = _uniform_dx(data.xs)
    if args.window is None:
        args.window = not args.periodic
    spec_raw = amplitude_spectrum(data.fs, dx, args.window)
    names, cols = ["k", "amplitude"], [spec_raw.k, spec_raw.amplitudes]
    cfg = {"command": "spectrum", "input": args.input, "window": args.window,
           "dx": repr(dx), "filtered": args.filtered}
    if args.filtered:
        spec, out = _filter_data(data, args)
        cfg.update(_echo(spec, "spectrum", input=args.input, window=args.window,
                         dx=repr(dx), filtered=True))
        names.append("amplitude_filtered")
        cols.append(amplitude_spectrum(out, dx, args.window).amplitudes)
    write_table(args.output, names, cols, cfg)
    return EXIT_OK


def run_kernel_response(args) -> int:
    if args.adaptive or args.generalized_spline:
        raise UnsupportedConfigurationError(
            "the closed-form response covers the symmetric constant-scaling kernel only"
        )
    if args.H is None or not args.H > 0:
        raise ConfigError("--H must be given and positive")
    if args.n_k < 2:
        raise ConfigError("--n-k must be at least 2")
    k_max = args.k_max if args.k_max is not None else 20.0 / args.H
    k = np.linspace(0.0, k_max, args.n_k)
    resp = np.abs(analytic_kernel_fourier(args.r, args.order, args.H, k))
    cfg = {"command": "kernel-response", "r": args.r, "l": args.order, "H": repr(args.H),
           "k_max": repr(k_max), "n_k": args.n_k}
    write_table(args.output, ["k", "abs_K_hat"], [k, resp], cfg)
    return EXIT_OK


def _load_moments(path) -> MomentSet:
    names, table = read_table(path, header=True, min_columns=2)
    if names is None or len(names) != table.shape[1]:
        raise TableError(f"{path}: header row does not match the data columns")
    missing = [v for v in ("x",) + VARIABLES if v not in names]
    if missing:
        raise TableError(f"{path}: missing column(s): {', '.join(missing)}")
    col = {n: table[:, i] for i, n in enumerate(names)}
    return MomentSet(col["x"], {v: col[v] for v in VARIABLES})


def run_bohm(args) -> int:
    moments = _load_moments(args.input)
    overrides = {}
    if args.scalings:
        try:
            with open(args.scalings) as fh:
                overrides = json.load(fh)
        except OSError as exc:
            raise TableError(f"cannot read {args.scalings}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise TableError(f"{args.scalings}: invalid JSON ({exc.msg})") from exc
        if not isinstance(overrides, dict):
            raise ConfigError("--scalings must hold a JSON object")
    cfg = BohmConfig(Z=args.Z, m_i=args.m_i, e_charge=args.e_charge, scalings=overrides,
                     r=args.r, order=args.order,
                     generalized_spline=args.generalized_spline, adaptive=args.adaptive)
    if not args.unfiltered:
        moments = filter_moments(moments, cfg)
    res = compute_bohm_speed(moments, cfg)
    echo = {"command": "bohm", "input": args.input, "filtered": not args.unfiltered,
            "r": cfg.r, "l": cfg.order, "generalized_spline": cfg.generalized_spline,
            "adaptive": cfg.adaptive, "Z": repr(cfg.Z), "m_i": repr(cfg.m_i),
            "e_charge": repr(cfg.e_charge),
            "scalings": json.dumps(cfg.scalings, sort_keys=True)}
    summary = [f"complex_modulus_points = {res.n_complex}",
               f"degenerate_points = {res.n_degenerate}"]
    write_table(args.output, ["x", "beta", "u_bohm", "validity"],
                [res.xs, res.beta, res.u_bohm, res.validity], echo, summary)
    print(f"siac bohm: {res.n_complex} complex-modulus, {res.n_degenerate} degenerate "
          f"of {res.xs.size} points", file=sys.stderr)
    if args.strict and (res.n_complex or res.n_degenerate):
        return EXIT_NUMERIC
    return EXIT_OK


COMMANDS = {
    "filter": run_filter,
    "spectrum": run_spectrum,
    "kernel-response": run_kernel_response,
    "bohm": run_bohm,
}


def main(argv=None) -> int:
    logging.basicConfig(format="%(name)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except TableError as exc:
        log.error("%s", exc)
        return EXIT_IO
    except DegenerateKernelError as exc:
        # without --strict an unsolvable kernel is reported as a bad configuration
        log.error("%s", exc)
        return EXIT_NUMERIC if args.strict else EXIT_CONFIG
    except SIACError as exc:
        log.error("%s", exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
