"""Radial interaction kernels and their macroscopic moments.

Two kernels drive the microscopic interactions: the alignment influence
kernel K (an indicator of the unit ball, normalized to total mass 1) and the
binary repulsion potential phi (a quadratic well).  Both enter the
hydrodynamic model only through two scalars:

    k0   = R^2/(2 n) * integral of K(|x|) |x|^2 over R^n
    Phi0 = integral of phi(|x|) over R^n

For the unit indicator these give pi/8 (n=2) and 2 pi/15 (n=3) unnormalized,
and 1/8 (n=2) normalized; the quadratic well gives Phi0 = pi/6 in 2D.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gamma

from .errors import ConfigError

#: Gauss-Legendre rule used for all radial moments.  Exact to machine
#: precision for polynomial profiles of degree < 2*128.
_GL_NODES = 128


def sphere_surface(n: int) -> float:
    """Surface measure |S^{n-1}| of the unit sphere in R^n."""
    return 2.0 * np.pi ** (n / 2.0) / gamma(n / 2.0)


def ball_volume(n: int) -> float:
    """Volume of the unit ball in R^n."""
    return np.pi ** (n / 2.0) / gamma(n / 2.0 + 1.0)


@dataclass(frozen=True)
class KernelSpec:
    """A compactly supported radial profile with a physical length scale.

    ``profile`` maps the scaled radius s = |x|/range (vectorized) to kernel
    values; it must be nonnegative and vanish for s > ``support``.
    ``normalization`` records the total integral over R^n of the profile in
    scaled variables, for the dimension the kernel was built for (None when
    unknown).
    """

    kind: str
    range: float
    profile: Callable[[np.ndarray], np.ndarray]
    support: float = 1.0
    normalization: float | None = None
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.range <= 0:
            raise ConfigError("kernel range must be positive")
        if not np.isfinite(self.support) or self.support <= 0:
            raise ConfigError("kernel support must be finite and positive")
        s = np.linspace(0.0, self.support, 257)
        if np.any(np.asarray(self.profile(s)) < 0):
            raise ConfigError("kernel profile must be nonnegative")


def radial_integral(spec: KernelSpec, n: int, power: int = 0) -> float:
    """Integral of profile(|z|) |z|^power over R^n, in scaled variables."""
    x, w = np.polynomial.legendre.leggauss(_GL_NODES)
    r = 0.5 * spec.support * (x + 1.0)
    wr = 0.5 * spec.support * w
    vals = np.asarray(spec.profile(r)) * r ** (n - 1 + power)
    return sphere_surface(n) * float(np.sum(wr * vals))


def indicator_ball(n: int, normalized: bool = True, range: float = 1.0) -> KernelSpec:
    """Indicator of the unit ball; normalized=True scales it to total mass 1."""
    height = 1.0 / ball_volume(n) if normalized else 1.0
    total = 1.0 if normalized else ball_volume(n)

    def profile(s):
        s = np.asarray(s, dtype=float)
        return np.where(s <= 1.0, height, 0.0)

    return KernelSpec("indicator-ball", range, profile, 1.0, total,
                      meta={"height": height, "n": n})


def quadratic_well(n: int = 2, range: float = 1.0, amplitude: float = 1.0) -> KernelSpec:
    """Repulsion well phi(s) = amplitude * (s - 1)^2 for s <= 1, else 0.

    Note the radial derivative does not vanish at s = 0 (the profile has a
    cusp there); the pair force at exactly zero separation is defined as 0 by
    symmetry, which is what the particle kernels implement.
    """

    def profile(s):
        s = np.asarray(s, dtype=float)
        return np.where(s <= 1.0, amplitude * (s - 1.0) ** 2, 0.0)

    total = amplitude * sphere_surface(n) * _poly_well_moment(n - 1)
    return KernelSpec("quadratic-well", range, profile, 1.0, total,
                      meta={"amplitude": amplitude, "n": n})


def _poly_well_moment(p: int) -> float:
    # integral of (r-1)^2 r^p over [0,1] = 1/(p+1) - 2/(p+2) + 1/(p+3)
    return 1.0 / (p + 1) - 2.0 / (p + 2) + 1.0 / (p + 3)


def custom_radial(profile: Callable[[np.ndarray], np.ndarray], range: float = 1.0,
                  support: float = 1.0) -> KernelSpec:
    return KernelSpec("custom-radial", range, profile, support, None)


def kernel_moment_k0(K: KernelSpec, n: int) -> float:
    """Second moment k0 = range^2/(2n) * integral K(|z|) |z|^2 dz over R^n."""
    return K.range**2 / (2.0 * n) * radial_integral(K, n, power=2)


def potential_mass_phi0(phi: KernelSpec, n: int) -> float:
    """Total mass Phi0 = integral phi(|z|) dz over R^n (scaled variables)."""
    return radial_integral(phi, n, power=0)
