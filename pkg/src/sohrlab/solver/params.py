"""Physical parameters of the macroscopic models and their effective form.

Three model modes share one flux kernel, differing only in a handful of
effective scalars:

* ``sohr``  -- full model: repulsion enters the transport velocities
  (mu*Phi0 * grad rho), the quadratic part of the pressure, and nothing else.
* ``soh``   -- repulsion off (Phi0 forced to 0).
* ``dlmp``  -- repulsion folded into an enlarged linear pressure coefficient
  v0*d*(1 + (d + c2)/c1 * F0); no density-gradient transport terms.

The orientation diffusion gamma = k0*(d + c2) is common to all three (n = 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..errors import ConfigError

MODE_SOHR = "sohr"
MODE_SOH = "soh"
MODE_DLMP = "dlmp"
MODES = (MODE_SOHR, MODE_SOH, MODE_DLMP)

FLUX_POLY = "poly"
FLUX_RUSANOV = "rusanov"
FLUX_SCHEMES = (FLUX_POLY, FLUX_RUSANOV)


@dataclass(frozen=True)
class HydroParams:
    """Constants of the macroscopic system (unscaled form, n = 2).

    ``phi0`` is the total mass of the repulsion potential (pi/6 for the
    quadratic well); the force actually applied is scaled by ``F0``, so the
    effective potential mass is F0 * phi0.
    """

    c1: float
    c2: float
    v0: float = 1.0
    mu: float = 0.5
    alpha: float = 1.0
    d: float = 0.1
    k0: float = 0.125
    phi0: float = np.pi / 6.0
    F0: float = 1.0
    mode: str = MODE_SOHR
    flux_scheme: str = FLUX_POLY
    cfl_hyp: float = 0.45
    cfl_diff: float = 0.45
    dt_max: float = 1.0

    def __post_init__(self):
        for name in ("v0", "mu", "d", "k0"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive")
        if self.alpha < 0 or self.F0 < 0 or self.phi0 < 0:
            raise ConfigError("alpha, F0 and phi0 must be nonnegative")
        if not 0.0 < self.c1 < 1.0:
            raise ConfigError(f"c1 must lie in (0, 1), got {self.c1}")
        if not 0.0 < self.c2 < 1.0:
            raise ConfigError(f"c2 must lie in (0, 1), got {self.c2}")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.flux_scheme not in FLUX_SCHEMES:
            raise ConfigError(f"flux_scheme must be one of {FLUX_SCHEMES}")


class EffectiveCoefficients(NamedTuple):
    """Scalars consumed by the flux kernels.

    p(rho) = p1*rho + p2*rho^2/2;  transport speeds a1 = c1*v0, a2 = c2*v0;
    mu_phi0 multiplies the density-gradient terms; gamma the momentum
    diffusion.
    """

    a1: float
    a2: float
    p1: float
    p2: float
    mu_phi0: float
    gamma: float


def effective_coefficients(p: HydroParams) -> EffectiveCoefficients:
    gamma = p.k0 * (p.d + p.c2)
    if p.mode == MODE_DLMP:
        p1 = p.v0 * p.d * (1.0 + (p.d + p.c2) / p.c1 * p.F0)
        return EffectiveCoefficients(p.c1 * p.v0, p.c2 * p.v0, p1, 0.0, 0.0, gamma)
    mu_phi0 = 0.0 if p.mode == MODE_SOH else p.mu * p.F0 * p.phi0
    p1 = p.v0 * p.d
    p2 = p.alpha * mu_phi0 * (p.d + p.c2)
    return EffectiveCoefficients(p.c1 * p.v0, p.c2 * p.v0, p1, p2, mu_phi0, gamma)
