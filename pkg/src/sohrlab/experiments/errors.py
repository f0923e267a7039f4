"""Error norms between field states and the refinement-study report."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import ConfigError
from ..solver.grid import FieldState

COMPONENTS = ("rho", "cos_theta", "theta")


def _valid_mask(A: FieldState, B: FieldState) -> np.ndarray:
    mask = np.ones(A.rho.shape, dtype=bool)
    if A.missing is not None:
        mask &= ~A.missing
    if B.missing is not None:
        mask &= ~B.missing
    return mask


def l1_relative_error(A: FieldState, B: FieldState, component: str = "rho") -> float:
    """sum |a - b| / sum |b| over cells valid in both fields; B is the reference.

    ``theta`` uses the wrapped angular distance in the numerator (branch-cut
    free), still normalized by sum |theta_B|.
    """
    if A.rho.shape != B.rho.shape:
        raise ConfigError(f"grid mismatch: {A.rho.shape} vs {B.rho.shape}")
    if component not in COMPONENTS:
        raise ConfigError(f"component must be one of {COMPONENTS}")
    mask = _valid_mask(A, B)
    if component == "rho":
        a, b = A.rho[mask], B.rho[mask]
        num = np.sum(np.abs(a - b))
    elif component == "cos_theta":
        a, b = A.cos_theta()[mask], B.cos_theta()[mask]
        num = np.sum(np.abs(a - b))
    else:
        a, b = A.theta()[mask], B.theta()[mask]
        diff = np.mod(a - b + np.pi, 2.0 * np.pi) - np.pi
        num = np.sum(np.abs(diff))
    den = np.sum(np.abs(b))
    if den == 0.0:
        raise ConfigError("reference field is identically zero in the compared component")
    return float(num / den)


def excluded_cells(A: FieldState, B: FieldState) -> int:
    return int(np.count_nonzero(~_valid_mask(A, B)))


def restrict_half(fine: FieldState) -> FieldState:
    """Conservative 2x2 block average onto the twice-coarser grid.

    Density and momentum are block-averaged; the momentum direction is then
    renormalized so the restricted field satisfies |Omega| = 1 like any
    solver state.
    """
    nx, ny = fine.rho.shape
    if nx % 2 or ny % 2:
        raise ConfigError("restriction needs even cell counts")

    def blocks(u):
        return 0.25 * (u[0::2, 0::2] + u[1::2, 0::2] + u[0::2, 1::2] + u[1::2, 1::2])

    rho = blocks(fine.rho)
    mx = blocks(fine.mom[..., 0])
    my = blocks(fine.mom[..., 1])
    norm = np.hypot(mx, my)
    with np.errstate(invalid="ignore", divide="ignore"):
        mx, my = rho * mx / norm, rho * my / norm
    mom = np.stack([mx, my], axis=-1)
    mom[norm == 0.0] = 0.0
    return FieldState(rho, mom, fine.time)


@dataclass
class ErrorReport:
    """Successive-refinement errors and observed orders (log2 ratios)."""

    dx: list[float] = field(default_factory=list)
    err_rho: list[float] = field(default_factory=list)
    err_cos: list[float] = field(default_factory=list)
    runtime_seconds: float = 0.0

    @property
    def order_rho(self) -> list[float]:
        return [float(np.log2(a / b)) for a, b in zip(self.err_rho, self.err_rho[1:])]

    @property
    def order_cos(self) -> list[float]:
        return [float(np.log2(a / b)) for a, b in zip(self.err_cos, self.err_cos[1:])]
