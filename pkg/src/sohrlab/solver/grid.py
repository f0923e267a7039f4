"""Rectangular cell-centered grids and the (rho, rho*Omega) field state."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError

BC_PERIODIC = "periodic"
BC_DIRICHLET = "dirichlet"


@dataclass(frozen=True)
class GridSpec:
    """Uniform nx-by-ny grid on [0, Lx) x [0, Ly); dx = Lx/nx by construction."""

    nx: int
    ny: int
    Lx: float = 10.0
    Ly: float = 10.0
    bc: str = BC_PERIODIC

    def __post_init__(self):
        if self.nx < 4 or self.ny < 4:
            raise ConfigError("grid needs nx, ny >= 4")
        if self.Lx <= 0 or self.Ly <= 0:
            raise ConfigError("box lengths must be positive")
        if self.bc not in (BC_PERIODIC, BC_DIRICHLET):
            raise ConfigError(f"bc must be '{BC_PERIODIC}' or '{BC_DIRICHLET}', got {self.bc!r}")

    @property
    def dx(self) -> float:
        return self.Lx / self.nx

    @property
    def dy(self) -> float:
        return self.Ly / self.ny

    @property
    def periodic(self) -> bool:
        return self.bc == BC_PERIODIC

    def x_centers(self) -> np.ndarray:
        return (np.arange(self.nx) + 0.5) * self.dx

    def y_centers(self) -> np.ndarray:
        return (np.arange(self.ny) + 0.5) * self.dy

    def center_mesh(self) -> tuple[np.ndarray, np.ndarray]:
        """Cell-center coordinate arrays of shape (nx, ny)."""
        return np.meshgrid(self.x_centers(), self.y_centers(), indexing="ij")


@dataclass
class FieldState:
    """Cell-centered density and momentum rho*Omega on a grid.

    ``missing`` optionally marks cells with no orientation information
    (deposited from a particle run with an empty cell); those cells are
    excluded pairwise from error norms.
    """

    rho: np.ndarray
    mom: np.ndarray  # shape (nx, ny, 2)
    time: float = 0.0
    missing: np.ndarray | None = field(default=None)

    def __post_init__(self):
        self.rho = np.asarray(self.rho, dtype=float)
        self.mom = np.asarray(self.mom, dtype=float)
        if self.mom.shape != self.rho.shape + (2,):
            raise ConfigError(
                f"mom shape {self.mom.shape} does not match rho shape {self.rho.shape}"
            )

    @property
    def shape(self) -> tuple[int, int]:
        return self.rho.shape

    def copy(self) -> "FieldState":
        return FieldState(self.rho.copy(), self.mom.copy(), self.time,
                          None if self.missing is None else self.missing.copy())

    def omega(self) -> np.ndarray:
        """Unit direction field; NaN where rho vanishes or data is missing."""
        with np.errstate(invalid="ignore", divide="ignore"):
            om = self.mom / self.rho[..., None]
        if self.missing is not None:
            om[self.missing] = np.nan
        return om

    def cos_theta(self) -> np.ndarray:
        return self.omega()[..., 0]

    def theta(self) -> np.ndarray:
        om = self.omega()
        return np.arctan2(om[..., 1], om[..., 0])

    def mass(self, grid: GridSpec) -> float:
        return float(np.sum(self.rho)) * grid.dx * grid.dy


def state_from_primitives(rho: np.ndarray, theta_or_omega: np.ndarray,
                          time: float = 0.0) -> FieldState:
    """Build a FieldState from density and either angles or unit vectors."""
    rho = np.asarray(rho, dtype=float)
    arr = np.asarray(theta_or_omega, dtype=float)
    if arr.shape == rho.shape:  # angles
        omega = np.stack([np.cos(arr), np.sin(arr)], axis=-1)
    else:
        omega = arr
    return FieldState(rho, rho[..., None] * omega, time)
