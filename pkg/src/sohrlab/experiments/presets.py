"""Initial data of the four experiments, pointwise and as grid builders.

All functions are vectorized over coordinate arrays.  The vortex angle field
is arctan(y1/x1) + (pi/2) sign(x1) around the box center (a counterclockwise
vortex, discontinuous only at the center itself); the Riemann problem is a
two-plateau split of the box; the Taylor-Green field is a three-mode
sine/cosine superposition normalized to unit vectors.
"""

from __future__ import annotations

import numpy as np

from ..coefficients import DEFAULT_GRID_SIZE, coefficient_table
from ..errors import ConfigError
from ..particles.model import IbmParams, ParticleState
from ..solver.grid import FieldState, GridSpec, state_from_primitives
from ..solver.params import HydroParams

#: Riemann plateaus (rho, theta): left half, right half of the box
RIEMANN_LEFT = (0.0067, 0.7)
RIEMANN_RIGHT = (0.0133, 2.3)

TAYLOR_GREEN_RHO = 0.01

#: below this |raw vector| the Taylor-Green direction defaults to +x
DEGENERATE_OMEGA = 1e-12


def _vortex_angle(x1: np.ndarray, y1: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        theta = np.arctan(y1 / x1) + 0.5 * np.pi * np.sign(x1)
    on_axis = np.where(y1 > 0, np.pi, 0.0)
    return np.where(x1 == 0.0, on_axis, theta)


def vortex_initial_data(x, y, Lx: float = 10.0, Ly: float = 10.0):
    """Single vortex centered in the box: returns (rho, theta) with rho = 1."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    theta = _vortex_angle(x - Lx / 2.0, y - Ly / 2.0)
    return np.ones_like(theta), theta


def four_vortex_initial_data(x, y, Lx: float = 10.0, Ly: float = 10.0):
    """2x2 tiling of the vortex field, one vortex per half-box block."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    cx = Lx / 4.0 + np.where(x >= Lx / 2.0, Lx / 2.0, 0.0)
    cy = Ly / 4.0 + np.where(y >= Ly / 2.0, Ly / 2.0, 0.0)
    theta = _vortex_angle(x - cx, y - cy)
    return np.ones_like(theta), theta


def riemann_initial_data(x, Lx: float = 10.0):
    """Two plateaus split at Lx/2, uniform in y: returns (rho, theta)."""
    x = np.asarray(x, dtype=float)
    left = x < Lx / 2.0
    rho = np.where(left, RIEMANN_LEFT[0], RIEMANN_RIGHT[0])
    theta = np.where(left, RIEMANN_LEFT[1], RIEMANN_RIGHT[1])
    return rho, theta


def taylor_green_raw_omega(x, y):
    """The unnormalized three-mode Taylor-Green direction field."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    k = (np.pi / 5.0, 3.0 * np.pi / 10.0, np.pi / 2.0)
    o1 = sum(np.sin(kk * x) * np.cos(kk * y) for kk in k) / 3.0
    o2 = -sum(np.cos(kk * x) * np.sin(kk * y) for kk in k) / 3.0
    return np.stack([o1, o2], axis=-1)


def taylor_green_initial_data(x, y):
    """Normalized Taylor-Green data: returns (rho, omega) with rho = 0.01.

    Cells where the raw vector is below 1e-12 get the +x default direction
    (the box center and corners are such points).
    """
    raw = taylor_green_raw_omega(x, y)
    norm = np.hypot(raw[..., 0], raw[..., 1])
    degenerate = norm < DEGENERATE_OMEGA
    safe = np.where(degenerate, 1.0, norm)
    omega = raw / safe[..., None]
    omega[degenerate] = (1.0, 0.0)
    rho = np.full(np.shape(norm), TAYLOR_GREEN_RHO)
    return rho, omega


_DATA_PRESETS = ("vortex", "riemann", "taylor-green", "four-vortex")
_PRESET_ALIASES = {"convergence": "vortex", "micro-macro": "riemann",
                   "dlmp-compare": "four-vortex"}


def build_initial_state(preset: str, grid: GridSpec) -> FieldState:
    """Evaluate a preset's initial data at the grid's cell centers."""
    name = _PRESET_ALIASES.get(preset, preset)
    if name not in _DATA_PRESETS:
        raise ConfigError(f"unknown preset {preset!r}")
    X, Y = grid.center_mesh()
    if name == "vortex":
        rho, theta = vortex_initial_data(X, Y, grid.Lx, grid.Ly)
        return state_from_primitives(rho, theta)
    if name == "four-vortex":
        rho, theta = four_vortex_initial_data(X, Y, grid.Lx, grid.Ly)
        return state_from_primitives(rho, theta)
    if name == "riemann":
        rho, theta = riemann_initial_data(X, grid.Lx)
        return state_from_primitives(rho, theta)
    rho, omega = taylor_green_initial_data(X, Y)
    return state_from_primitives(rho, omega)


def hydro_for(d: float = 0.1, F0: float = 1.0, mode: str = "sohr",
              mu: float = 0.5, alpha: float = 1.0, v0: float = 1.0,
              flux_scheme: str = "poly", grid_size: int = DEFAULT_GRID_SIZE,
              cache_path: str | None = None, **kw) -> HydroParams:
    """HydroParams with c1, c2 tabulated from the coefficient engine (n = 2)."""
    table = coefficient_table(d, 2, grid_size, cache_path=cache_path)
    return HydroParams(c1=table.c1, c2=table.c2, v0=v0, mu=mu, alpha=alpha,
                       d=d, F0=F0, mode=mode, flux_scheme=flux_scheme, **kw)


# ---------------------------------------------------------------------------
# particle-side initial sampling (positions from the density, angles from the
# local anisotropic equilibrium with concentration 1/d)

def riemann_mass(box=(10.0, 10.0)) -> float:
    return 0.5 * (RIEMANN_LEFT[0] + RIEMANN_RIGHT[0]) * box[0] * box[1]


def sample_riemann_particles(rng: np.random.Generator, N: int,
                             box=(10.0, 10.0), d: float = 0.1) -> ParticleState:
    Lx, Ly = box
    frac_left = RIEMANN_LEFT[0] / (RIEMANN_LEFT[0] + RIEMANN_RIGHT[0])
    n_left = int(round(N * frac_left))
    x = np.concatenate([rng.uniform(0.0, Lx / 2.0, n_left),
                        rng.uniform(Lx / 2.0, Lx, N - n_left)])
    y = rng.uniform(0.0, Ly, N)
    theta = np.concatenate([rng.vonmises(RIEMANN_LEFT[1], 1.0 / d, n_left),
                            rng.vonmises(RIEMANN_RIGHT[1], 1.0 / d, N - n_left)])
    return ParticleState(np.stack([x, y], axis=-1), theta, box)


def taylor_green_mass(box=(10.0, 10.0)) -> float:
    return TAYLOR_GREEN_RHO * box[0] * box[1]


def sample_taylor_green_particles(rng: np.random.Generator, N: int,
                                  box=(10.0, 10.0), d: float = 0.1) -> ParticleState:
    Lx, Ly = box
    pos = rng.uniform(0.0, 1.0, size=(N, 2)) * np.array([Lx, Ly])
    _, omega = taylor_green_initial_data(pos[:, 0], pos[:, 1])
    theta0 = np.arctan2(omega[:, 1], omega[:, 0])
    theta = rng.vonmises(theta0, 1.0 / d)
    return ParticleState(pos, theta, box)


def micro_macro_ibm_params(N: int = 10_000, epsilon: float = 0.05,
                           mu: float = 0.5, seed: int = 0) -> IbmParams:
    """Desk-scale particle parameters for the Riemann micro-macro study."""
    return IbmParams(N=N, epsilon=epsilon, r=0.0625, R=0.25, alpha=1.0,
                     d=0.1, mu=mu, seed=seed)
