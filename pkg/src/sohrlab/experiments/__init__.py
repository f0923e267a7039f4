"""Reproducible experiment presets and comparison studies."""

from .config import ExperimentConfig, default_config
from .presets import (
    build_initial_state,
    four_vortex_initial_data,
    hydro_for,
    riemann_initial_data,
    sample_riemann_particles,
    sample_taylor_green_particles,
    taylor_green_initial_data,
    vortex_initial_data,
)
from .errors import ErrorReport, l1_relative_error, restrict_half
from .convergence import convergence_study
from .micro_macro import MicroMacroRow, micro_macro_compare
from .expansion import SmoothField, expansion_check, remainder_ratios, sine_field
from .compare import dlmp_comparison, repulsion_comparison

__all__ = [
    "ExperimentConfig", "default_config", "build_initial_state",
    "four_vortex_initial_data", "hydro_for", "riemann_initial_data",
    "sample_riemann_particles", "sample_taylor_green_particles",
    "taylor_green_initial_data", "vortex_initial_data", "ErrorReport",
    "l1_relative_error", "restrict_half", "convergence_study", "MicroMacroRow",
    "micro_macro_compare", "SmoothField", "expansion_check", "remainder_ratios",
    "sine_field", "dlmp_comparison", "repulsion_comparison",
]
