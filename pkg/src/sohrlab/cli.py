"""Command line front end: ``sohrlab <subcommand> [flags] --config <path>``.

Exit codes: 0 success, 1 usage/configuration error, 2 numerical failure.
Output files land under --out, resolved against $SOHRLAB_OUTPUT_ROOT when
set.  Every run directory gets a manifest that reproduces the run.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .coefficients import REFERENCE_BETA_CONSTANTS, beta_coefficients, coefficient_table
from .errors import ConfigError, NumericalError
from .experiments import compare, convergence, micro_macro, presets
from .experiments.config import ExperimentConfig, default_config
from .kernels import indicator_ball, kernel_moment_k0, potential_mass_phi0, quadratic_well
from .particles.deposit import ensemble_run
from .simio import load_config, to_manifest, write_error_report, write_manifest, \
    write_micro_macro_table, write_snapshot
from .solver.grid import GridSpec
from .solver.scheme import run_fields

OUTPUT_ROOT_VAR = "SOHRLAB_OUTPUT_ROOT"


class _Parser(argparse.ArgumentParser):
    """argparse that signals usage errors as ConfigError (exit code 1)."""

    def error(self, message):
        raise ConfigError(message)


def _resolve_out(out: str | None, default: str) -> str:
    out = out or default
    root = os.environ.get(OUTPUT_ROOT_VAR)
    if root and not os.path.isabs(out):
        out = os.path.join(root, out)
    os.makedirs(out, exist_ok=True)
    return out


def _base_config(args, preset: str) -> ExperimentConfig:
    if getattr(args, "config", None):
        config = load_config(args.config)
        if config.preset != preset and preset not in ("sohr", "ibm"):
            raise ConfigError(
                f"config preset {config.preset!r} does not match subcommand {preset!r}")
        return config
    return default_config(preset)


def _write_run(config: ExperimentConfig, result, out: str, tag: str = "snapshot") -> None:
    for snap in result.snapshots:
        path = os.path.join(out, f"{tag}_t{snap.time:.6f}.csv")
        write_snapshot(snap, config.grid, path)
    write_manifest(to_manifest(config, result.diagnostics),
                   os.path.join(out, "manifest.txt"))


def cmd_coefficients(args) -> int:
    table = coefficient_table(args.d, args.n, args.grid_size, cache_path=args.cache)
    k0 = kernel_moment_k0(indicator_ball(args.n, normalized=True), args.n)
    phi0 = potential_mass_phi0(quadratic_well(args.n), args.n)
    alpha = REFERENCE_BETA_CONSTANTS[0]
    betas = beta_coefficients(table, alpha, phi0, k0)
    names = ["d", "n", "c1", "c2", "k0", "phi0"] + [f"beta{i}" for i in range(1, 7)]
    values = [repr(args.d), str(args.n), repr(table.c1), repr(table.c2),
              repr(k0), repr(phi0)] + [repr(b) for b in betas]
    print(",".join(names))
    print(",".join(values))
    return 0


def _add_sohr_flags(p) -> None:
    p.add_argument("--preset", default="riemann",
                   choices=["vortex", "riemann", "taylor-green", "four-vortex"])
    p.add_argument("--mode", choices=["sohr", "soh", "dlmp"])
    p.add_argument("--flux", choices=["poly", "rusanov"])
    p.add_argument("--nx", type=int)
    p.add_argument("--ny", type=int)
    p.add_argument("--dt", type=float)
    p.add_argument("--T", type=float)
    p.add_argument("--F0", type=float)
    p.add_argument("--snapshots", type=str, default="",
                   help="comma-separated snapshot times")
    p.add_argument("--out", type=str)
    p.add_argument("--config", type=str)
    p.add_argument("--backend", choices=["numba", "numpy"])


def _sohr_config(args) -> ExperimentConfig:
    config = _base_config(args, getattr(args, "preset", "riemann"))
    updates = {}
    hydro = config.hydro
    if args.mode or args.F0 is not None or args.flux:
        hydro = presets.hydro_for(
            d=hydro.d, F0=args.F0 if args.F0 is not None else hydro.F0,
            mode=args.mode or hydro.mode, mu=hydro.mu, alpha=hydro.alpha,
            v0=hydro.v0, flux_scheme=args.flux or hydro.flux_scheme)
        updates["hydro"] = hydro
    if args.nx or args.ny:
        g = config.grid
        updates["grid"] = GridSpec(args.nx or g.nx, args.ny or g.ny, g.Lx, g.Ly, g.bc)
    if args.dt is not None:
        updates["dt"] = args.dt
    if args.T is not None:
        updates["T"] = args.T
    if args.snapshots:
        updates["snapshot_times"] = tuple(float(t) for t in args.snapshots.split(","))
    return config.with_updates(**updates) if updates else config


def cmd_sohr(args) -> int:
    config = _sohr_config(args)
    out = _resolve_out(args.out, f"out/{config.preset}")
    state0 = presets.build_initial_state(config.preset, config.grid)
    result = run_fields(state0, config.grid, config.hydro, config.T, dt=config.dt,
                        snapshot_times=config.snapshot_times, backend=args.backend)
    _write_run(config, result, out)
    print(f"wrote {len(result.snapshots)} snapshot(s) to {out}")
    return 0


def cmd_ibm(args) -> int:
    config = _base_config(args, args.preset)
    ibm = config.ibm or presets.micro_macro_ibm_params()
    import dataclasses

    if args.N:
        ibm = dataclasses.replace(ibm, N=args.N)
    if args.epsilon:
        ibm = dataclasses.replace(ibm, epsilon=args.epsilon)
    if args.dt:
        ibm = dataclasses.replace(ibm, dt=args.dt)
    T = args.T if args.T is not None else config.T
    realizations = args.realizations or config.realizations
    out = _resolve_out(args.out, f"out/ibm-{args.preset}")
    box = (config.grid.Lx, config.grid.Ly)

    if args.preset == "riemann":
        mass = presets.riemann_mass(box)

        def sampler(rng):
            return presets.sample_riemann_particles(rng, ibm.N, box, d=ibm.d)
    else:
        mass = presets.taylor_green_mass(box)

        def sampler(rng):
            return presets.sample_taylor_green_particles(rng, ibm.N, box, d=ibm.d)

    fields = ensemble_run(sampler, ibm, config.grid, T,
                          snapshot_times=config.snapshot_times,
                          realizations=realizations, mass=mass,
                          base_seed=config.seed, backend=args.backend)
    for f in fields:
        write_snapshot(f.mean, config.grid, os.path.join(out, f"ibm_t{f.time:.6f}.csv"))
    write_manifest(to_manifest(config.with_updates(ibm=ibm, T=T,
                                                   realizations=realizations)),
                   os.path.join(out, "manifest.txt"))
    print(f"wrote {len(fields)} deposited snapshot(s) to {out}")
    return 0


def cmd_convergence(args) -> int:
    config = _base_config(args, "convergence")
    out = _resolve_out(args.out, "out/convergence")
    report = convergence.convergence_study(
        levels=args.levels, base_nx=config.grid.nx,
        dt=config.dt if config.dt is not None else 0.001,
        T=config.T, hydro=config.hydro, backend=args.backend)
    path = os.path.join(out, "error_report.csv")
    write_error_report(report, path)
    for dx, er, ec in zip(report.dx, report.err_rho, report.err_cos):
        print(f"dx={dx:g} err_rho={er:.4e} err_cos={ec:.4e}")
    print(f"observed orders rho={['%.2f' % o for o in report.order_rho]} "
          f"cos={['%.2f' % o for o in report.order_cos]}")
    print(f"report written to {path}")
    return 0


def cmd_compare_micro_macro(args) -> int:
    config = _base_config(args, "micro-macro")
    if args.realizations:
        config = config.with_updates(realizations=args.realizations)
    if args.eps:
        config = config.with_updates(eps_list=tuple(float(e) for e in args.eps.split(",")))
    out = _resolve_out(args.out, "out/micro-macro")
    rows = micro_macro.micro_macro_compare(config, backend=args.backend)
    path = os.path.join(out, "micro_macro.csv")
    write_micro_macro_table(rows, path)
    write_manifest(to_manifest(config), os.path.join(out, "manifest.txt"))
    for eps, row in sorted(micro_macro.final_errors(rows).items(), reverse=True):
        print(f"eps={eps:g}: err_rho={row.err_rho:.4f} err_theta={row.err_theta:.4f} "
              f"({row.realizations} averages)")
    print(f"table written to {path}")
    return 0


def cmd_compare_repulsion(args) -> int:
    out = _resolve_out(args.out, "out/compare-repulsion")
    config = default_config("four-vortex")
    res = compare.repulsion_comparison(nx=config.grid.nx, dt=config.dt or 0.001,
                                       T=config.T, backend=args.backend)
    for name, state in (("strong_F5", res.strong), ("weak_F005", res.weak),
                        ("soh", res.soh)):
        write_snapshot(state, config.grid, os.path.join(out, f"{name}.csv"))
    print(f"max rho: F0=5 -> {res.max_rho_strong:.4f}, "
          f"F0=0.05 -> {res.max_rho_weak:.4f}")
    print(f"L1(F0=0.05 vs SOH) = {res.l1_weak_vs_soh:.5f}")
    print(f"snapshots written to {out}")
    return 0


def cmd_compare_dlmp(args) -> int:
    out = _resolve_out(args.out, "out/compare-dlmp")
    config = default_config("dlmp-compare")
    res = compare.dlmp_comparison(nx=config.grid.nx, dt=config.dt or 0.001,
                                  T=config.T, backend=args.backend)
    write_snapshot(res.sohr, config.grid, os.path.join(out, "sohr_F5.csv"))
    write_snapshot(res.dlmp, config.grid, os.path.join(out, "dlmp_F5.csv"))
    print(f"L1(sohr vs dlmp) = {res.distance:.5f}; refinement errors "
          f"sohr={res.refinement_sohr:.5f}, dlmp={res.refinement_dlmp:.5f} "
          f"(separation factor {res.separation_factor:.1f})")
    print(f"snapshots written to {out}")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="sohrlab",
                     description="particle and hydrodynamic models of aligned "
                                 "self-propelled matter with repulsion")
    parser.add_argument("--version", action="version", version=f"sohrlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coefficients", help="print closure coefficients as CSV")
    p.add_argument("--d", type=float, required=True)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--grid-size", type=int, default=4095)
    p.add_argument("--cache", type=str, default=None)
    p.set_defaults(func=cmd_coefficients)

    p = sub.add_parser("sohr", help="run the macroscopic solver on a preset")
    _add_sohr_flags(p)
    p.set_defaults(func=cmd_sohr)

    p = sub.add_parser("ibm", help="run the particle model (ensemble deposit)")
    p.add_argument("--preset", default="riemann", choices=["riemann", "taylor-green"])
    p.add_argument("--N", type=int)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--dt", type=float)
    p.add_argument("--T", type=float)
    p.add_argument("--realizations", type=int)
    p.add_argument("--out", type=str)
    p.add_argument("--config", type=str)
    p.add_argument("--backend", choices=["numba", "numpy"])
    p.set_defaults(func=cmd_ibm)

    p = sub.add_parser("convergence", help="vortex grid-refinement study")
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--out", type=str)
    p.add_argument("--config", type=str)
    p.add_argument("--backend", choices=["numba", "numpy"])
    p.set_defaults(func=cmd_convergence)

    for name in ("riemann", "taylor-green"):
        p = sub.add_parser(name, help=f"run the {name} preset (solver snapshots)")
        _add_sohr_flags(p)
        p.set_defaults(func=cmd_sohr, preset=name)

    p = sub.add_parser("compare-micro-macro", help="particle vs solver error table")
    p.add_argument("--realizations", type=int)
    p.add_argument("--eps", type=str, help="comma-separated epsilon values")
    p.add_argument("--out", type=str)
    p.add_argument("--config", type=str)
    p.add_argument("--backend", choices=["numba", "numpy"])
    p.set_defaults(func=cmd_compare_micro_macro)

    p = sub.add_parser("compare-repulsion", help="strong vs weak repulsion study")
    p.add_argument("--out", type=str)
    p.add_argument("--backend", choices=["numba", "numpy"])
    p.set_defaults(func=cmd_compare_repulsion)

    p = sub.add_parser("compare-dlmp", help="transport-closure vs pressure-closure study")
    p.add_argument("--out", type=str)
    p.add_argument("--backend", choices=["numba", "numpy"])
    p.set_defaults(func=cmd_compare_dlmp)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
