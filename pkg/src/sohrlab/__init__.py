"""sohrlab: a two-level laboratory for self-propelled particles with alignment and repulsion.

Three layers:

* ``sohrlab.coefficients`` / ``sohrlab.kernels`` -- the closure coefficients of the
  hydrodynamic limit (order parameter c1, the collision-invariant weighted
  coefficient c2, kernel moments k0 and Phi0, and the beta moment family).
* ``sohrlab.particles`` -- the stochastic individual-based model (overdamped
  positions with short-range repulsion, alignment/noise orientation dynamics
  on the unit circle) plus field deposition.
* ``sohrlab.solver`` -- a 2D finite-volume scheme for the macroscopic
  density/orientation system, in relaxation form with exact renormalization.

``sohrlab.experiments`` wires those into reproducible presets (grid
convergence, Riemann, Taylor-Green, four-vortex comparisons, micro-macro
matching); ``sohrlab.simio`` and ``sohrlab.cli`` provide the file formats and
the command line.

Hot kernels have two interchangeable implementations (numba and pure numpy),
selected by the ``SOHRLAB_BACKEND`` environment variable; see
``sohrlab.backend``.
"""

__version__ = "0.1.0"

from . import backend  # noqa: F401
from .errors import ConfigError, InstabilityError, NumericalError, PositivityError  # noqa: F401
