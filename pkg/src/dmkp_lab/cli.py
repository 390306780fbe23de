"""Command-line surface: simulate, norms, picard, illposed, probe.

Exit codes: 0 success, 2 configuration error, 3 numerical failure. Errors
are reported as one machine-readable JSON line on stderr. The output
directory from the config can be overridden with the DMKP_LAB_OUT
environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import __version__
from .config import ConfigError, load_config
from .grid import build_grid, forward, l2_norm
from .illposed import ScanConfig, scan_and_fit
from .io import (
    FormatError,
    atomic_write_text,
    csv_text,
    five_point_derivative,
    format_float,
    read_field,
    write_csv,
    write_field,
)
from .norms import NormSpec, SpaceTimeField, bourgain_norm, sobolev_norm
from .picard import PicardDivergenceError, picard_solve
from .probes import (
    free_window_field,
    phi_window_field,
    probe_bilinear_estimate,
    probe_linear_estimate,
    probe_retarded_estimate,
    random_band_field,
)
from .propagator import SimulationUnstable, energy_dissipation_rate, simulate
from .symbols import ModelParams
from .trajectory import Trajectory

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _fail(kind: str, message: str, code: int) -> int:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)
    return code


def _out_dir(configured: str) -> str:
    return os.environ.get("DMKP_LAB_OUT", configured)


def cmd_simulate(args) -> int:
    from .grid import inverse

    cfg = load_config(args.config)
    out = _out_dir(cfg.output_dir)
    os.makedirs(out, exist_ok=True)
    phi = cfg.initial_field()

    times, l2s, hs, rates = [], [], [], []

    def observer(state):
        # snapshots stream out; only scalar series stay in memory
        write_field(
            os.path.join(out, f"snap_{len(times):06d}.fld"),
            cfg.grid,
            inverse(state.field),
            state.time,
            cfg.params,
            {"config": os.path.basename(args.config), "index": len(times)},
        )
        times.append(state.time)
        l2s.append(l2_norm(state.field))
        hs.append(sobolev_norm(state.field, cfg.norm_s1, cfg.norm_s2))
        rates.append(energy_dissipation_rate(state.field, cfg.params))

    try:
        simulate(phi, cfg.t_final, cfg.dt, cfg.params, observer, cfg.output_every)
    except SimulationUnstable as exc:
        return _fail("instability", str(exc), EXIT_NUMERICAL)

    energy = 0.5 * np.asarray(l2s) ** 2
    if len(times) >= 5:
        lhs = five_point_derivative(energy, times[1] - times[0])
    else:
        lhs = np.gradient(energy, np.asarray(times))
    rhs = np.asarray(rates)
    resid = np.abs(lhs - rhs) / np.asarray(l2s) ** 2
    rows = [
        (times[i], l2s[i], hs[i], float(lhs[i]), float(rhs[i]), float(resid[i]))
        for i in range(len(times))
    ]
    write_csv(
        os.path.join(out, "norms.csv"),
        "simulate",
        ["t", "l2", "h_s1_s2", "energy_lhs", "energy_rhs", "energy_residual"],
        rows,
    )
    return EXIT_OK


def cmd_norms(args) -> int:
    if os.path.isdir(args.path):
        files = sorted(
            os.path.join(args.path, f) for f in os.listdir(args.path) if f.endswith(".fld")
        )
        if len(files) < 3:
            raise ConfigError(f"{args.path}: need at least 3 snapshots for a space-time norm")
        if not args.windowed:
            raise ConfigError("space-time norms need --windowed (compact support in time)")
        grids, samples, times = zip(*[read_field(f) for f in files])
        grid = grids[0]
        coefs = np.stack([forward(grid, s).coef for s in samples])
        dts = np.diff(times)
        if not np.allclose(dts, dts[0], rtol=1e-9, atol=0):
            raise ConfigError("snapshots are not uniformly spaced in time")
        traj = Trajectory(grid, times[0], float(dts[0]), coefs)
        f = SpaceTimeField(traj, args.pad, window_applied=True)
        params = ModelParams(args.alpha, args.beta, args.epsilon, args.kind)
        value = bourgain_norm(f, NormSpec(args.b, args.s1, args.s2), params)
        columns, row = ["b", "s1", "s2", "value"], (args.b, args.s1, args.s2, value)
    else:
        grid, samples, _ = read_field(args.path)
        if args.b != 0.0:
            raise ConfigError("b != 0 needs a trajectory directory, not a single snapshot")
        value = sobolev_norm(forward(grid, samples), args.s1, args.s2)
        columns, row = ["b", "s1", "s2", "value"], (args.b, args.s1, args.s2, value)
    sys.stdout.write(csv_text("norms", columns, [row]))
    return EXIT_OK


def cmd_picard(args) -> int:
    cfg = load_config(args.config)
    out = _out_dir(cfg.output_dir)
    os.makedirs(out, exist_ok=True)
    phi = cfg.initial_field()
    n_steps = int(round(cfg.t_final / cfg.dt))
    try:
        traj, residuals = picard_solve(phi, cfg.t_final, n_steps, args.max_iter, args.tol, cfg.params)
    except PicardDivergenceError as exc:
        return _fail("non_convergence", str(exc), EXIT_NUMERICAL)
    rows = []
    for k, r in enumerate(residuals):
        ratio = residuals[k] / residuals[k - 1] if k > 0 and residuals[k - 1] > 0 else float("nan")
        rows.append((k, float(r), float(ratio)))
    write_csv(os.path.join(out, "picard_residuals.csv"), "picard", ["iteration", "residual", "ratio"], rows)
    from .grid import SpectralField, inverse

    for idx in range(len(traj)):
        write_field(
            os.path.join(out, f"picard_{idx:06d}.fld"),
            cfg.grid,
            inverse(SpectralField(cfg.grid, traj.coef[idx])),
            float(traj.times()[idx]),
            cfg.params,
            {"config": os.path.basename(args.config), "index": idx},
        )
    return EXIT_OK


def cmd_illposed(args) -> int:
    n_values = tuple(float(v) for v in args.n_list.split(","))
    s_values = tuple(float(v) for v in args.s_list.split(","))
    orders = [int(v) for v in args.orders.split(",")] if args.orders else [12, 10, 16, 12]
    if len(orders) != 4:
        raise ConfigError("--orders takes four integers: Mxi,Meta,mxi,meta")
    cfg = ScanConfig(
        n_values=n_values,
        s_values=s_values,
        eps=args.eps,
        outer_orders=(orders[0], orders[1]),
        inner_orders=(orders[2], orders[3]),
    )
    params = ModelParams(args.alpha, args.beta, args.epsilon, args.kind)
    result = scan_and_fit(cfg, params)
    rows = [(r.n, r.s, r.eps, r.norm, r.slope) for r in result.rows]
    text = csv_text("illposed-scan", ["N", "s", "eps", "norm", "slope"], rows)
    if args.out:
        atomic_write_text(args.out, text)
    else:
        sys.stdout.write(text)
    for s, slope in sorted(result.slopes.items()):
        print(f"# slope s={format_float(s)}: {format_float(slope)}", file=sys.stderr)
    return EXIT_OK


def cmd_probe(args) -> int:
    params = ModelParams(args.alpha, args.beta, args.epsilon, args.kind)
    grid = build_grid(args.nx, args.nx, 2 * np.pi, 2 * np.pi)
    rows: list[tuple] = []
    if args.which == "linear":
        phis = [random_band_field(grid, args.band, seed=args.seed + i) for i in range(args.count)]
        stats = probe_linear_estimate(phis, NormSpec(0.5, args.s1, args.s2), params, dt=args.dt)
        rows = [(str(i), float(r)) for i, r in enumerate(stats.ratios)]
    elif args.which == "retarded":
        ws = [
            free_window_field(random_band_field(grid, args.band, seed=args.seed + i), params, 2.2, args.dt)
            for i in range(args.count)
        ]
        stats = probe_retarded_estimate(ws, args.s1, args.s2, args.delta, params)
        rows = [(str(i), float(r)) for i, r in enumerate(stats.ratios)]
    elif args.which == "bilinear":
        if args.phi_n:
            for n in (float(v) for v in args.phi_n.split(",")):
                u = phi_window_field(n, args.s1, params)
                stats = probe_bilinear_estimate([u], [u], args.s1, args.s2, args.delta, params)
                rows.append((f"N={n:g}", float(stats.ratios[0])))
        else:
            us = [
                free_window_field(random_band_field(grid, args.band, seed=args.seed + i), params, 2.2, args.dt)
                for i in range(args.count)
            ]
            vs = [
                free_window_field(random_band_field(grid, args.band, seed=args.seed + 1000 + i), params, 2.2, args.dt)
                for i in range(args.count)
            ]
            stats = probe_bilinear_estimate(us, vs, args.s1, args.s2, args.delta, params)
            rows = [(str(i), float(r)) for i, r in enumerate(stats.ratios)]
    sys.stdout.write(csv_text(f"probe-{args.which}", ["label", "ratio"], rows))
    return EXIT_OK


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.0)
    p.add_argument("--epsilon", type=int, default=1, choices=(-1, 1))
    p.add_argument("--kind", default="dmkp", choices=("dmkp", "burgers", "none"))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dmkp-lab",
        description="Pseudo-spectral laboratory for a dissipative KP-type equation",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run the time stepper from a JSON config")
    p.add_argument("config")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("norms", help="norms of a snapshot or trajectory directory")
    p.add_argument("path")
    p.add_argument("--b", type=float, default=0.0)
    p.add_argument("--s1", type=float, default=0.0)
    p.add_argument("--s2", type=float, default=0.0)
    p.add_argument("--pad", type=int, default=4)
    p.add_argument("--windowed", action="store_true",
                   help="assert the trajectory is compactly supported in time")
    _add_model_flags(p)
    p.set_defaults(func=cmd_norms)

    p = sub.add_parser("picard", help="fixed-point solve of the integral equation")
    p.add_argument("config")
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--max-iter", type=int, default=25)
    p.set_defaults(func=cmd_picard)

    p = sub.add_parser("illposed", help="norm-growth scan of the second iterate")
    p.add_argument("--n-list", default="16,32,64,128")
    p.add_argument("--s-list", default="-0.75,-0.25")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--orders", default=None, help="Mxi,Meta,mxi,meta")
    p.add_argument("--out", default=None, help="CSV path (default: stdout)")
    _add_model_flags(p)
    p.set_defaults(func=cmd_illposed)

    p = sub.add_parser("probe", help="estimate-ratio ensembles")
    p.add_argument("which", choices=("linear", "retarded", "bilinear"))
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--band", type=int, default=2)
    p.add_argument("--nx", type=int, default=16)
    p.add_argument("--dt", type=float, default=0.02)
    p.add_argument("--s1", type=float, default=0.0)
    p.add_argument("--s2", type=float, default=0.0)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--phi-n", default=None, help="comma list of N for the data-family bilinear probe")
    _add_model_flags(p)
    p.set_defaults(func=cmd_probe)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, FormatError, FileNotFoundError, ValueError) as exc:
        return _fail("config", str(exc), EXIT_CONFIG)
    except (SimulationUnstable, PicardDivergenceError, RuntimeError) as exc:
        return _fail("numerical", str(exc), EXIT_NUMERICAL)


if __name__ == "__main__":
    raise SystemExit(main())
