"""User-facing run configuration: INI-style key = value with sections.

A minimal file only names the preset; every other key overrides the preset's
reference defaults.  Unknown keys are rejected (with their line number), so
typos cannot silently fall back to defaults.

    [experiment]
    preset = riemann
    T = 1.0

    [grid]
    nx = 40

    [hydro]
    d = 0.1
    F0 = 1.0

    [ibm]
    N = 10000
"""

from __future__ import annotations

import configparser
import dataclasses

from ..errors import ConfigError
from ..experiments.config import ExperimentConfig, default_config
from ..experiments.presets import hydro_for, micro_macro_ibm_params
from ..solver.grid import GridSpec

_KNOWN = {
    "experiment": {"preset", "T", "dt", "snapshot_times", "realizations",
                   "seed", "output_dir", "eps_list"},
    "grid": {"nx", "ny", "Lx", "Ly", "bc"},
    "hydro": {"d", "F0", "mode", "flux_scheme", "mu", "alpha", "v0", "k0",
              "phi0", "cfl_hyp", "cfl_diff", "dt_max", "c1", "c2"},
    "ibm": {"N", "epsilon", "r", "R", "alpha", "d", "mu", "v0", "dt", "seed"},
}

_REQUIRED = "an [experiment] section with a 'preset' key"


def _line_of(path: str, key: str) -> str:
    try:
        with open(path) as fh:
            for lineno, line in enumerate(fh, start=1):
                stripped = line.split("=")[0].strip().lower()
                if stripped == key.lower():
                    return f" (line {lineno})"
    except OSError:
        pass
    return ""


def _floats(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(float(v) for v in text.split(","))


def load_config(path: str) -> ExperimentConfig:
    parser = configparser.ConfigParser()
    parser.optionxform = str  # keep key case
    try:
        with open(path) as fh:
            parser.read_file(fh, source=path)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc

    for section in parser.sections():
        if section not in _KNOWN:
            raise ConfigError(f"{path}: unknown section [{section}]")
        for key in parser[section]:
            if key not in _KNOWN[section]:
                raise ConfigError(
                    f"{path}: unknown key {key!r} in [{section}]{_line_of(path, key)}")

    if not parser.has_option("experiment", "preset"):
        raise ConfigError(f"{path}: required keys missing; need at least {_REQUIRED}")
    exp = parser["experiment"]
    preset = exp["preset"]

    hydro_kw = {}
    hsec = parser["hydro"] if parser.has_section("hydro") else {}
    for key in ("d", "F0", "mu", "alpha", "v0"):
        if key in hsec:
            hydro_kw[key] = float(hsec[key])
    if "mode" in hsec:
        hydro_kw["mode"] = hsec["mode"]
    if "flux_scheme" in hsec:
        hydro_kw["flux_scheme"] = hsec["flux_scheme"]
    for key in ("k0", "phi0", "cfl_hyp", "cfl_diff", "dt_max"):
        if key in hsec:
            hydro_kw[key] = float(hsec[key])

    config = default_config(preset)
    hydro = config.hydro
    if hydro_kw:
        explicit = {k: v for k, v in hydro_kw.items()
                    if k in ("k0", "phi0", "cfl_hyp", "cfl_diff", "dt_max")}
        rebuild = {k: v for k, v in hydro_kw.items() if k not in explicit}
        if rebuild:
            # the coefficient engine recomputes c1, c2 for the new d
            merged = dict(d=hydro.d, F0=hydro.F0, mode=hydro.mode, mu=hydro.mu,
                          alpha=hydro.alpha, v0=hydro.v0,
                          flux_scheme=hydro.flux_scheme)
            merged.update(rebuild)
            hydro = hydro_for(**merged, **{k: getattr(hydro, k) for k in
                                           ("k0", "phi0", "cfl_hyp", "cfl_diff", "dt_max")})
        if explicit:
            hydro = dataclasses.replace(hydro, **explicit)
    if "c1" in hsec or "c2" in hsec:
        hydro = dataclasses.replace(
            hydro,
            c1=float(hsec["c1"]) if "c1" in hsec else hydro.c1,
            c2=float(hsec["c2"]) if "c2" in hsec else hydro.c2)

    grid = config.grid
    if parser.has_section("grid"):
        gsec = parser["grid"]
        grid = GridSpec(
            nx=int(gsec.get("nx", grid.nx)), ny=int(gsec.get("ny", grid.ny)),
            Lx=float(gsec.get("Lx", grid.Lx)), Ly=float(gsec.get("Ly", grid.Ly)),
            bc=gsec.get("bc", grid.bc))

    ibm = config.ibm
    if parser.has_section("ibm"):
        isec = parser["ibm"]
        base = ibm if ibm is not None else micro_macro_ibm_params()
        ibm = dataclasses.replace(
            base,
            N=int(isec.get("N", base.N)),
            epsilon=float(isec.get("epsilon", base.epsilon)),
            r=float(isec.get("r", base.r)), R=float(isec.get("R", base.R)),
            alpha=float(isec.get("alpha", base.alpha)),
            d=float(isec.get("d", base.d)), mu=float(isec.get("mu", base.mu)),
            v0=float(isec.get("v0", base.v0)),
            dt=None if isec.get("dt", "auto") == "auto" else float(isec["dt"]),
            seed=int(isec.get("seed", base.seed)))

    updates = dict(grid=grid, hydro=hydro, ibm=ibm)
    if "T" in exp:
        updates["T"] = float(exp["T"])
    if "dt" in exp:
        updates["dt"] = None if exp["dt"] == "adaptive" else float(exp["dt"])
    if "snapshot_times" in exp:
        updates["snapshot_times"] = _floats(exp["snapshot_times"])
    if "eps_list" in exp:
        updates["eps_list"] = _floats(exp["eps_list"])
    if "realizations" in exp:
        updates["realizations"] = int(exp["realizations"])
    if "seed" in exp:
        updates["seed"] = int(exp["seed"])
    if "output_dir" in exp:
        updates["output_dir"] = exp["output_dir"] or None
    return config.with_updates(**updates)


def save_config(config: ExperimentConfig, path: str) -> None:
    """Write a config file that load_config parses back to an equal config."""
    lines = ["[experiment]",
             f"preset = {config.preset}",
             f"T = {config.T!r}",
             f"dt = {'adaptive' if config.dt is None else repr(config.dt)}",
             f"snapshot_times = {','.join(repr(t) for t in config.snapshot_times)}",
             f"eps_list = {','.join(repr(e) for e in config.eps_list)}",
             f"realizations = {config.realizations}",
             f"seed = {config.seed}",
             f"output_dir = {config.output_dir or ''}",
             "",
             "[grid]",
             f"nx = {config.grid.nx}", f"ny = {config.grid.ny}",
             f"Lx = {config.grid.Lx!r}", f"Ly = {config.grid.Ly!r}",
             f"bc = {config.grid.bc}",
             "",
             "[hydro]"]
    h = config.hydro
    for key in ("d", "F0", "mu", "alpha", "v0", "k0", "phi0",
                "cfl_hyp", "cfl_diff", "dt_max", "c1", "c2"):
        lines.append(f"{key} = {getattr(h, key)!r}")
    lines.append(f"mode = {h.mode}")
    lines.append(f"flux_scheme = {h.flux_scheme}")
    if config.ibm is not None:
        p = config.ibm
        lines += ["", "[ibm]", f"N = {p.N}", f"epsilon = {p.epsilon!r}",
                  f"r = {p.r!r}", f"R = {p.R!r}", f"alpha = {p.alpha!r}",
                  f"d = {p.d!r}", f"mu = {p.mu!r}", f"v0 = {p.v0!r}",
                  f"dt = {'auto' if p.dt is None else repr(p.dt)}",
                  f"seed = {p.seed}"]
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
