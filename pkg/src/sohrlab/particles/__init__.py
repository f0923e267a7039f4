"""Stochastic individual-based model: self-propulsion, repulsion, alignment.

Positions are overdamped (velocity = self-propulsion minus a repulsion
potential gradient); orientations live on the unit circle and relax towards
the local mean orientation (rate 1/epsilon), towards the velocity direction
(rate alpha), and diffuse with intensity sqrt(2 d/epsilon).  The angle
representation makes the unit-norm constraint exact at every step.
"""

from .model import (
    IbmParams,
    ParticleState,
    ibm_run,
    ibm_step,
    mean_orientation,
    potential_value,
    repulsion_gradient,
    sample_uniform_state,
    step_with_noise,
)
from .deposit import EnsembleField, deposit_fields, ensemble_run

__all__ = [
    "IbmParams", "ParticleState", "ibm_run", "ibm_step", "mean_orientation",
    "potential_value", "repulsion_gradient", "sample_uniform_state",
    "step_with_noise", "EnsembleField", "deposit_fields", "ensemble_run",
]
