"""Run manifests: a flat key = value file that pins a run completely.

The manifest records every physical and numerical parameter (including the
closure coefficients actually used), the scheme identifiers, and the seed,
so re-running from the manifest reproduces the output files bit-exactly.
Informational keys (timestamps, versions, diagnostics) are prefixed ``meta.``
and ignored on reload.
"""

from __future__ import annotations

import datetime
import hashlib

import numpy as np

from .. import __version__
from ..errors import ConfigError
from ..experiments.config import ExperimentConfig
from ..particles.model import IbmParams
from ..solver.grid import GridSpec
from ..solver.params import HydroParams, effective_coefficients


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (tuple, list)):
        return ",".join(_fmt(v) for v in value)
    return str(value)


def to_manifest(config: ExperimentConfig, diagnostics=None) -> dict[str, str]:
    eff = effective_coefficients(config.hydro)
    entries: dict[str, str] = {
        "preset": config.preset,
        "T": _fmt(config.T),
        "dt": "adaptive" if config.dt is None else _fmt(config.dt),
        "snapshot_times": _fmt(config.snapshot_times),
        "eps_list": _fmt(config.eps_list),
        "realizations": str(config.realizations),
        "seed": str(config.seed),
        "output_dir": config.output_dir or "",
    }
    g = config.grid
    entries.update({"grid.nx": str(g.nx), "grid.ny": str(g.ny),
                    "grid.Lx": _fmt(g.Lx), "grid.Ly": _fmt(g.Ly), "grid.bc": g.bc})
    h = config.hydro
    for name in ("c1", "c2", "v0", "mu", "alpha", "d", "k0", "phi0", "F0",
                 "cfl_hyp", "cfl_diff", "dt_max"):
        entries[f"hydro.{name}"] = _fmt(getattr(h, name))
    entries["hydro.mode"] = h.mode
    entries["hydro.flux_scheme"] = h.flux_scheme
    if config.ibm is not None:
        p = config.ibm
        for name in ("epsilon", "r", "R", "alpha", "d", "mu", "v0"):
            entries[f"ibm.{name}"] = _fmt(getattr(p, name))
        entries["ibm.N"] = str(p.N)
        entries["ibm.dt"] = "auto" if p.dt is None else _fmt(p.dt)
        entries["ibm.seed"] = str(p.seed)

    entries["meta.version"] = __version__
    entries["meta.scheme"] = "split-conservative+relaxation"
    entries["meta.effective.gamma"] = _fmt(eff.gamma)
    entries["meta.effective.mu_phi0"] = _fmt(eff.mu_phi0)
    entries["meta.effective.p1"] = _fmt(eff.p1)
    entries["meta.effective.p2"] = _fmt(eff.p2)
    entries["meta.created"] = datetime.datetime.now(datetime.timezone.utc).isoformat()
    payload = "".join(f"{k}={v}" for k, v in sorted(entries.items())
                      if not k.startswith("meta."))
    entries["meta.build_id"] = hashlib.sha256(payload.encode()).hexdigest()[:12]
    if diagnostics is not None:
        entries["meta.steps"] = str(diagnostics.steps)
        entries["meta.rusanov_fallbacks"] = str(diagnostics.rusanov_fallbacks)
        entries["meta.zero_momentum_cells"] = str(diagnostics.zero_momentum_cells)
    return entries


def write_manifest(entries: dict[str, str], path: str) -> None:
    with open(path, "w") as fh:
        for key in entries:
            fh.write(f"{key} = {entries[key]}\n")


def read_manifest(path: str) -> dict[str, str]:
    entries: dict[str, str] = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
            key, _, value = line.partition("=")
            entries[key.strip()] = value.strip()
    return entries


def _floats(text: str) -> tuple[float, ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(float(v) for v in text.split(","))


def config_from_manifest(source: str | dict[str, str]) -> ExperimentConfig:
    m = read_manifest(source) if isinstance(source, str) else source
    try:
        grid = GridSpec(int(m["grid.nx"]), int(m["grid.ny"]),
                        float(m["grid.Lx"]), float(m["grid.Ly"]), m["grid.bc"])
        hydro = HydroParams(
            c1=float(m["hydro.c1"]), c2=float(m["hydro.c2"]),
            v0=float(m["hydro.v0"]), mu=float(m["hydro.mu"]),
            alpha=float(m["hydro.alpha"]), d=float(m["hydro.d"]),
            k0=float(m["hydro.k0"]), phi0=float(m["hydro.phi0"]),
            F0=float(m["hydro.F0"]), mode=m["hydro.mode"],
            flux_scheme=m["hydro.flux_scheme"], cfl_hyp=float(m["hydro.cfl_hyp"]),
            cfl_diff=float(m["hydro.cfl_diff"]), dt_max=float(m["hydro.dt_max"]))
        ibm = None
        if "ibm.N" in m:
            ibm = IbmParams(
                N=int(m["ibm.N"]), epsilon=float(m["ibm.epsilon"]),
                r=float(m["ibm.r"]), R=float(m["ibm.R"]),
                alpha=float(m["ibm.alpha"]), d=float(m["ibm.d"]),
                mu=float(m["ibm.mu"]), v0=float(m["ibm.v0"]),
                dt=None if m["ibm.dt"] == "auto" else float(m["ibm.dt"]),
                seed=int(m["ibm.seed"]))
        return ExperimentConfig(
            preset=m["preset"], grid=grid, hydro=hydro, T=float(m["T"]),
            dt=None if m["dt"] == "adaptive" else float(m["dt"]),
            snapshot_times=_floats(m["snapshot_times"]),
            ibm=ibm, eps_list=_floats(m["eps_list"]),
            realizations=int(m["realizations"]), seed=int(m["seed"]),
            output_dir=m.get("output_dir") or None)
    except KeyError as exc:
        raise ConfigError(f"manifest is missing key {exc.args[0]!r}") from exc
