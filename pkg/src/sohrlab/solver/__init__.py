"""Finite-volume solver for the macroscopic density/orientation system.

The constrained system (|Omega| = 1) is solved through its conservative
relaxation form: a flux-form update of (rho, rho*Omega) with hyperbolic and
diffusive fluxes, followed by an exact relaxation step that restores the unit
norm (instantaneously for eta = 0, through a closed-form logistic solution
for eta > 0).
"""

from .grid import FieldState, GridSpec
from .params import HydroParams, effective_coefficients
from .fluxes import numerical_flux, physical_fluxes, pviscosity_coefficients, wave_speed_bound
from .scheme import (
    Diagnostics,
    RunResult,
    cfl_dt,
    conservative_step,
    max_wavespeed,
    relaxation_step,
    run,
    run_fields,
)

__all__ = [
    "FieldState", "GridSpec", "HydroParams", "effective_coefficients",
    "numerical_flux", "physical_fluxes", "pviscosity_coefficients",
    "wave_speed_bound", "Diagnostics", "RunResult", "cfl_dt",
    "conservative_step", "max_wavespeed", "relaxation_step", "run", "run_fields",
]
