"""Experiment configuration: one dataclass fully determines a run."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from ..errors import ConfigError
from ..particles.model import IbmParams
from ..solver.grid import BC_DIRICHLET, BC_PERIODIC, GridSpec
from ..solver.params import HydroParams
from . import presets

PRESETS = ("vortex", "convergence", "riemann", "taylor-green", "four-vortex",
           "micro-macro", "dlmp-compare")

#: boundary condition each preset requires (per the reference experiments)
PRESET_BC = {
    "vortex": BC_DIRICHLET,
    "convergence": BC_DIRICHLET,
    "riemann": BC_PERIODIC,
    "taylor-green": BC_PERIODIC,
    "four-vortex": BC_PERIODIC,
    "micro-macro": BC_PERIODIC,
    "dlmp-compare": BC_PERIODIC,
}


@dataclass(frozen=True)
class ExperimentConfig:
    preset: str
    grid: GridSpec
    hydro: HydroParams
    T: float
    dt: float | None = None          # None: adaptive CFL step
    snapshot_times: tuple[float, ...] = ()
    ibm: IbmParams | None = None
    eps_list: tuple[float, ...] = (1.0, 0.5, 0.1, 0.05)
    realizations: int = 10
    seed: int = 12345
    output_dir: str | None = None

    def __post_init__(self):
        if self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}; expected one of {PRESETS}")
        required_bc = PRESET_BC[self.preset]
        if self.grid.bc != required_bc:
            raise ConfigError(
                f"preset {self.preset!r} requires bc={required_bc!r}, got {self.grid.bc!r}")
        if self.T <= 0:
            raise ConfigError("T must be positive")
        if self.realizations < 1:
            raise ConfigError("realizations must be >= 1")

    def with_updates(self, **kw) -> "ExperimentConfig":
        return replace(self, **kw)


def default_config(preset: str, cache_path: str | None = None, **overrides) -> ExperimentConfig:
    """The reference parameter set for each preset (desk scale for particles)."""
    if preset in ("vortex", "convergence"):
        base = dict(
            preset=preset,
            grid=GridSpec(40, 40, 10.0, 10.0, BC_DIRICHLET),
            hydro=presets.hydro_for(d=0.1, F0=1.0, cache_path=cache_path),
            dt=0.001, T=1.0)
    elif preset in ("riemann", "micro-macro"):
        base = dict(
            preset=preset,
            grid=GridSpec(40, 40, 10.0, 10.0, BC_PERIODIC),
            hydro=presets.hydro_for(d=0.1, F0=1.0, cache_path=cache_path),
            dt=0.01, T=1.0,
            ibm=presets.micro_macro_ibm_params())
    elif preset == "taylor-green":
        base = dict(
            preset=preset,
            grid=GridSpec(50, 50, 10.0, 10.0, BC_PERIODIC),
            hydro=presets.hydro_for(d=0.1, F0=1.0, cache_path=cache_path),
            dt=0.01, T=0.6,
            ibm=IbmParams(N=10_000, epsilon=0.05, r=0.04, R=0.2,
                          alpha=1.0, d=0.1, mu=0.5))
    elif preset in ("four-vortex", "dlmp-compare"):
        mode = "dlmp" if preset == "dlmp-compare" else "sohr"
        # dx = dy ~ 0.15 on the 10x10 box (67 cells: 10/67 = 0.1493)
        base = dict(
            preset=preset,
            grid=GridSpec(67, 67, 10.0, 10.0, BC_PERIODIC),
            hydro=presets.hydro_for(d=0.05, F0=5.0, mode=mode, mu=1.0,
                                    alpha=0.0, cache_path=cache_path),
            dt=0.001, T=1.5)
    else:
        raise ConfigError(f"unknown preset {preset!r}")
    base.update(overrides)
    return ExperimentConfig(**base)
