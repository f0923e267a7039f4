"""Time stepping: conservative flux update + exact relaxation, with CFL control.

One full step of size dt is

    Q* = Q^n - dt/dx (F_{i+1/2} - F_{i-1/2}) - dt/dy (G_{j+1/2} - G_{j-1/2})
    (rho, rho*Omega)^{n+1} = relaxation of Q*   (normalization when eta = 0)

Periodic boundaries wrap the stencil; fixed (Dirichlet) boundaries reimpose
the initial data on the one-cell frame after each conservative update, which
is how the convergence experiment pins its boundary values in time.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .. import backend as backend_mod
from ..errors import ConfigError, InstabilityError, PositivityError
from .fluxes import wave_speed_bound
from .grid import BC_DIRICHLET, FieldState, GridSpec
from .params import FLUX_RUSANOV, HydroParams, effective_coefficients

#: blow-up detector threshold on |rho|
INSTABILITY_RHO = 1.0e6

#: |momentum| below this (with rho > 0) counts as a zero-momentum cell
ZERO_MOMENTUM = 1.0e-300


@dataclass
class Diagnostics:
    """Counters accumulated over a run; attached to manifests."""

    steps: int = 0
    rusanov_fallbacks: int = 0
    zero_momentum_cells: int = 0
    dt_min: float = float("inf")
    dt_max: float = 0.0

    def record_dt(self, dt: float) -> None:
        self.steps += 1
        self.dt_min = min(self.dt_min, dt)
        self.dt_max = max(self.dt_max, dt)


def _sweep_module(backend: str | None):
    if backend_mod.resolve(backend) == "numba":
        from . import _sweep_numba as impl
    else:
        from . import _sweep_numpy as impl
    return impl


def _pad0(u: np.ndarray, periodic: bool) -> np.ndarray:
    """One ghost cell left, two right (the sweep needs the right cell's own
    forward gradient at the last interface)."""
    if periodic:
        return np.concatenate([u[-1:], u, u[:2]], axis=0)
    return np.concatenate([u[:1], u, u[-1:], u[-1:]], axis=0)


def _pad1(u: np.ndarray, periodic: bool) -> np.ndarray:
    if periodic:
        return np.concatenate([u[-1:], u, u[:1]], axis=0)
    return np.concatenate([u[:1], u, u[-1:]], axis=0)


def _transverse_gradient(u: np.ndarray, h: float, periodic: bool) -> np.ndarray:
    """Centered d/d(axis 1) with wrap or one-sided edges."""
    if periodic:
        return (np.roll(u, -1, axis=1) - np.roll(u, 1, axis=1)) / (2.0 * h)
    out = np.empty_like(u)
    out[:, 1:-1] = (u[:, 2:] - u[:, :-2]) / (2.0 * h)
    out[:, 0] = (u[:, 1] - u[:, 0]) / h
    out[:, -1] = (u[:, -1] - u[:, -2]) / h
    return out


def _check_admissible(rho: np.ndarray, when: str) -> None:
    if not np.all(np.isfinite(rho)):
        idx = np.unravel_index(int(np.argmin(np.isfinite(rho))), rho.shape)
        raise PositivityError(f"non-finite density {when} at cell {idx}", cell=idx)
    if np.any(rho <= 0.0):
        idx = np.unravel_index(int(np.argmin(rho)), rho.shape)
        raise PositivityError(
            f"nonpositive density {rho[idx]:.6e} {when} at cell {idx}", cell=idx)


def conservative_step(state: FieldState, dt: float, grid: GridSpec,
                      params: HydroParams, backend: str | None = None,
                      boundary_data: FieldState | None = None,
                      diagnostics: Diagnostics | None = None) -> FieldState:
    """One flux-form update of (rho, rho*Omega); returns the starred state."""
    eff = effective_coefficients(params)
    impl = _sweep_module(backend)
    rusanov_only = params.flux_scheme == FLUX_RUSANOV
    periodic = grid.periodic
    if not periodic and boundary_data is None:
        raise ConfigError("Dirichlet boundaries need boundary_data")

    rho = state.rho
    m1 = np.ascontiguousarray(state.mom[..., 0])
    m2 = np.ascontiguousarray(state.mom[..., 1])
    _check_admissible(rho, "before step")

    ry = _transverse_gradient(rho, grid.dy, periodic)
    rx = _transverse_gradient(rho.T, grid.dx, periodic).T

    f1, f2, f3, nf_x = impl.interface_fluxes(
        _pad0(rho, periodic), _pad0(m1, periodic), _pad0(m2, periodic),
        _pad0(ry, periodic), grid.dx,
        eff.a1, eff.a2, eff.p1, eff.p2, eff.mu_phi0, eff.gamma, rusanov_only)

    g1, g2, g3, nf_y = impl.interface_fluxes(
        _pad0(np.ascontiguousarray(rho.T), periodic),
        _pad0(np.ascontiguousarray(m2.T), periodic),
        _pad0(np.ascontiguousarray(m1.T), periodic),
        _pad0(np.ascontiguousarray(rx.T), periodic), grid.dy,
        eff.a1, eff.a2, eff.p1, eff.p2, eff.mu_phi0, eff.gamma, rusanov_only)

    if diagnostics is not None:
        diagnostics.rusanov_fallbacks += nf_x + nf_y

    new_rho = rho - dt / grid.dx * (f1[1:] - f1[:-1]) - dt / grid.dy * (g1[1:] - g1[:-1]).T
    new_m1 = m1 - dt / grid.dx * (f2[1:] - f2[:-1]) - dt / grid.dy * (g3[1:] - g3[:-1]).T
    new_m2 = m2 - dt / grid.dx * (f3[1:] - f3[:-1]) - dt / grid.dy * (g2[1:] - g2[:-1]).T

    out = FieldState(new_rho, np.stack([new_m1, new_m2], axis=-1), state.time)
    if not periodic:
        _reimpose_frame(out, boundary_data)
    if np.any(out.rho <= 0.0):
        idx = np.unravel_index(int(np.argmin(out.rho)), out.rho.shape)
        raise PositivityError(
            f"density went nonpositive ({out.rho[idx]:.6e}) at cell {idx}; retry with dt <= {dt / 2:.3e}",
            cell=idx, suggested_dt=dt / 2)
    return out


def _reimpose_frame(state: FieldState, boundary_data: FieldState) -> None:
    for sl in (np.s_[0, :], np.s_[-1, :], np.s_[:, 0], np.s_[:, -1]):
        state.rho[sl] = boundary_data.rho[sl]
        state.mom[sl] = boundary_data.mom[sl]


def relaxation_step(state: FieldState, eta: float, dt: float | None = None,
                    diagnostics: Diagnostics | None = None,
                    default_axis: tuple[float, float] = (1.0, 0.0)) -> FieldState:
    """Exact solution of the norm-relaxation over dt (normalization at eta=0).

    For eta > 0 the squared norm m = |Omega|^2 follows the logistic closed
    form m(dt) = m0 / ((1 - m0) e^{-2 dt/eta} + m0) with the direction fixed;
    eta = 0 is the limit m -> 1 (plain normalization of Omega).
    """
    if np.any(state.rho < 0.0):
        idx = np.unravel_index(int(np.argmin(state.rho)), state.rho.shape)
        raise PositivityError(f"negative density at cell {idx} entering relaxation", cell=idx)

    rho = state.rho
    mom = state.mom
    mnorm = np.hypot(mom[..., 0], mom[..., 1])
    occupied = rho > 0.0
    degenerate = occupied & (mnorm <= ZERO_MOMENTUM)
    new_mom = np.zeros_like(mom)

    if eta == 0.0:
        ok = occupied & ~degenerate
        with np.errstate(invalid="ignore", divide="ignore"):
            unit = mom / mnorm[..., None]
        new_mom[ok] = rho[ok, None] * unit[ok]
        new_mom[degenerate] = rho[degenerate, None] * np.asarray(default_axis)
    else:
        if dt is None:
            raise ConfigError("relaxation with eta > 0 needs a dt")
        with np.errstate(invalid="ignore", divide="ignore"):
            omega = mom / rho[..., None]
        m0 = omega[..., 0] ** 2 + omega[..., 1] ** 2
        decay = np.exp(-2.0 * dt / eta)
        with np.errstate(invalid="ignore", divide="ignore"):
            m_new = m0 / ((1.0 - m0) * decay + m0)
            scale = np.sqrt(m_new / m0)
        ok = occupied & (m0 > 0.0)
        new_mom[ok] = mom[ok] * scale[ok, None]
        # m0 = 0 stays at 0 (flagged below); empty cells keep zero momentum

    if diagnostics is not None:
        diagnostics.zero_momentum_cells += int(np.count_nonzero(degenerate))
    return FieldState(rho.copy(), new_mom, state.time, state.missing)


def max_wavespeed(state: FieldState, grid: GridSpec, params: HydroParams) -> float:
    """Largest first-order wave-speed bound over the interfaces of both axes."""
    rho = state.rho
    periodic = grid.periodic
    lam = 0.0
    for axis in (0, 1):
        r = rho if axis == 0 else rho.T
        mpar = state.mom[..., axis] if axis == 0 else state.mom[..., axis].T
        rp = _pad1(r, periodic)
        ap = _pad1(np.ascontiguousarray(mpar), periodic)
        rm = 0.5 * (rp[:-1] + rp[1:])
        om = 0.5 * (ap[:-1] + ap[1:]) / rm
        lam = max(lam, float(np.max(wave_speed_bound(rm, om, params))))
    return lam


def cfl_dt(state: FieldState, grid: GridSpec, params: HydroParams,
           dt_max: float | None = None) -> float:
    """Stable step: min of the hyperbolic and diffusive CFL conditions."""
    eff = effective_coefficients(params)
    hmin = min(grid.dx, grid.dy)
    lam = max_wavespeed(state, grid, params)
    dt_h = params.cfl_hyp * hmin / lam if lam > 0 else np.inf
    denom = eff.gamma + eff.mu_phi0 * float(np.max(state.rho))
    dt_d = params.cfl_diff * hmin**2 / (2.0 * denom) if denom > 0 else np.inf
    cap = dt_max if dt_max is not None else params.dt_max
    return float(min(dt_h, dt_d, cap))


@dataclass
class RunResult:
    snapshots: list[FieldState] = field(default_factory=list)
    diagnostics: Diagnostics = field(default_factory=Diagnostics)


def run_fields(state0: FieldState, grid: GridSpec, params: HydroParams, T: float,
               dt: float | None = None, snapshot_times: tuple[float, ...] = (),
               eta: float = 0.0, backend: str | None = None,
               boundary_data: FieldState | None = None) -> RunResult:
    """March the splitting scheme to time T, collecting snapshots.

    ``dt=None`` adapts the step from the CFL condition each step; a concrete
    dt is used as a fixed step (clipped to land exactly on snapshot times).
    The final state is always captured.
    """
    if T <= 0:
        raise ConfigError("final time T must be positive")
    if grid.bc == BC_DIRICHLET and boundary_data is None:
        boundary_data = state0.copy()

    targets = sorted(set(float(t) for t in snapshot_times if 0.0 < t <= T)) + [float(T)]
    targets = sorted(set(targets))
    result = RunResult()
    state = state0.copy()
    t = 0.0
    next_idx = 0
    while next_idx < len(targets):
        target = targets[next_idx]
        step = dt if dt is not None else cfl_dt(state, grid, params)
        step = min(step, target - t)
        state = conservative_step(state, step, grid, params, backend=backend,
                                  boundary_data=boundary_data,
                                  diagnostics=result.diagnostics)
        state = relaxation_step(state, eta, step, diagnostics=result.diagnostics)
        t += step
        state.time = t
        result.diagnostics.record_dt(step)

        rho_max = float(np.max(np.abs(state.rho)))
        if not np.isfinite(rho_max) or rho_max > INSTABILITY_RHO or not np.all(np.isfinite(state.mom)):
            raise InstabilityError(
                f"solution blew up at t={t:.6g} (step {result.diagnostics.steps}): "
                f"max|rho|={rho_max:.3e}", step=result.diagnostics.steps, time=t)
        if t >= target - 1e-12:
            result.snapshots.append(state.copy())
            next_idx += 1
    return result


def run(config, backend: str | None = None) -> RunResult:
    """Run a preset experiment configuration (see sohrlab.experiments)."""
    from ..experiments.presets import build_initial_state  # lazy: avoids a cycle

    state0 = build_initial_state(config.preset, config.grid)
    return run_fields(state0, config.grid, config.hydro, config.T, dt=config.dt,
                      snapshot_times=config.snapshot_times, backend=backend)
