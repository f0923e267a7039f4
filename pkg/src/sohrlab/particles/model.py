"""Particle state, parameters, and the Euler-Maruyama step.

The scaled dynamics for particle k (orientation angle phi_k, omega_k =
(cos phi_k, sin phi_k)):

    X_k   <- wrap(X_k + v_k dt),            v_k = v0 omega_k - mu grad Phi(X_k)
    phi_k <- phi_k + [ (1/eps) tau(mean orientation) + alpha tau(v_k) ] dt
                   + sqrt(2 d dt / eps) xi_k

where tau(u) = u . omega_k^perp is the tangential component at omega_k (this
realizes the projected Stratonovich dynamics exactly on S^1) and

    Phi(x) = 1/(N (eps r)^n) sum_i phi(|x - X_i|/(eps r)),   phi(s) = (s-1)^2,
    mean orientation = J/|J|,  J = 1/N sum_i K(|x - X_i|/(sqrt(eps) R)) omega_i

with K the mass-1 indicator of the unit disc (the i = k self term included).
All interactions are evaluated on the pre-step state, so per-particle updates
commute and a fixed seed reproduces trajectories bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .. import backend as backend_mod
from ..errors import ConfigError

#: |J| below this means "no aligned neighbors": the particle keeps its own
#: orientation as the alignment target (zero tangential torque)
DEGENERATE_J = 1e-12


@dataclass(frozen=True)
class IbmParams:
    """Scaled particle-model parameters (n = 2).

    The repulsion range is eps*r, the alignment range sqrt(eps)*R; the model
    regime has the former much shorter than the latter, enforced here.
    ``mu`` scales the repulsion force so that particle runs and hydrodynamic
    runs can share the same mu*Phi0; the plain scaled model has mu = 1.
    """

    N: int
    epsilon: float
    r: float = 0.0625
    R: float = 0.25
    alpha: float = 1.0
    d: float = 0.1
    mu: float = 1.0
    v0: float = 1.0
    dt: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.N < 1:
            raise ConfigError("need at least one particle")
        if not 0.0 < self.epsilon <= 1.0:
            raise ConfigError("epsilon must lie in (0, 1]")
        if self.r <= 0 or self.R <= 0:
            raise ConfigError("interaction ranges must be positive")
        if not self.repulsion_radius < self.alignment_radius:
            raise ConfigError(
                f"repulsion range eps*r = {self.repulsion_radius:.4g} must be shorter "
                f"than alignment range sqrt(eps)*R = {self.alignment_radius:.4g}")
        if self.d < 0:
            raise ConfigError("noise intensity d must be nonnegative")
        if self.dt is not None and self.dt > 0.1 * self.epsilon + 1e-15:
            raise ConfigError(
                f"dt = {self.dt} too large for epsilon = {self.epsilon}: "
                f"the stiff alignment needs dt <= 0.1*epsilon")
        if self.dt is not None and self.dt <= 0:
            raise ConfigError("dt must be positive")

    @property
    def repulsion_radius(self) -> float:
        return self.epsilon * self.r

    @property
    def alignment_radius(self) -> float:
        return np.sqrt(self.epsilon) * self.R

    @property
    def dt_effective(self) -> float:
        return self.dt if self.dt is not None else min(0.01, 0.1 * self.epsilon)


@dataclass
class ParticleState:
    """Positions in the periodic box [0,Lx) x [0,Ly) and orientation angles."""

    pos: np.ndarray    # (N, 2)
    theta: np.ndarray  # (N,)
    box: tuple[float, float]
    time: float = 0.0

    def __post_init__(self):
        self.pos = np.asarray(self.pos, dtype=float)
        self.theta = np.asarray(self.theta, dtype=float)
        if self.pos.ndim != 2 or self.pos.shape[1] != 2 or self.pos.shape[0] != self.theta.shape[0]:
            raise ConfigError("pos must be (N, 2) and theta (N,)")

    @property
    def N(self) -> int:
        return self.pos.shape[0]

    def omega(self) -> np.ndarray:
        return np.stack([np.cos(self.theta), np.sin(self.theta)], axis=-1)

    def copy(self) -> "ParticleState":
        return ParticleState(self.pos.copy(), self.theta.copy(), self.box, self.time)


def wrap_positions(pos: np.ndarray, box: tuple[float, float]) -> np.ndarray:
    Lx, Ly = box
    out = pos.copy()
    out[:, 0] -= Lx * np.floor(out[:, 0] / Lx)
    out[:, 1] -= Ly * np.floor(out[:, 1] / Ly)
    return out


def sample_uniform_state(params: IbmParams, box: tuple[float, float],
                         rng: np.random.Generator) -> ParticleState:
    """Uniform positions, uniform angles; handy for smoke tests."""
    pos = rng.uniform(0.0, 1.0, size=(params.N, 2)) * np.asarray(box)
    theta = rng.uniform(-np.pi, np.pi, size=params.N)
    return ParticleState(pos, theta, box)


def _impl(backend: str | None):
    if backend_mod.resolve(backend) == "numba":
        from . import _impl_numba as impl
    else:
        from . import _impl_numpy as impl
    return impl


def repulsion_gradient(state: ParticleState, params: IbmParams,
                       backend: str | None = None, method: str = "cell") -> np.ndarray:
    """grad Phi at every particle (cell lists by default, direct O(N^2) oracle path).

    The quadratic well has compact support: pairs farther than eps*r do not
    interact, and coincident particles (including the self pair) contribute
    zero force by symmetry.
    """
    if method not in ("cell", "direct"):
        raise ConfigError("method must be 'cell' or 'direct'")
    radius = params.repulsion_radius
    pref = 1.0 / (params.N * radius**2)  # n = 2 kernel normalization
    impl = _impl(backend)
    if method == "direct":
        return impl.repulsion_direct(state.pos, state.box, radius, pref)
    return impl.repulsion(state.pos, state.box, radius, pref)


def potential_value(state: ParticleState, params: IbmParams, x: np.ndarray) -> float:
    """Phi evaluated at an arbitrary point by direct summation (oracle use)."""
    radius = params.repulsion_radius
    Lx, Ly = state.box
    dx = x[0] - state.pos[:, 0]
    dy = x[1] - state.pos[:, 1]
    dx -= Lx * np.round(dx / Lx)
    dy -= Ly * np.round(dy / Ly)
    s = np.hypot(dx, dy) / radius
    vals = np.where(s <= 1.0, (s - 1.0) ** 2, 0.0)
    return float(np.sum(vals)) / (params.N * radius**2)


def alignment_current(state: ParticleState, params: IbmParams,
                      backend: str | None = None) -> np.ndarray:
    """J at every particle: kernel-weighted mean of neighbor orientations."""
    radius = params.alignment_radius
    pref = 1.0 / (params.N * np.pi)  # indicator of the unit disc, mass 1
    return _impl(backend).alignment(state.pos, state.omega(), state.box, radius, pref)


def mean_orientation(state: ParticleState, k: int, params: IbmParams,
                     backend: str | None = None) -> np.ndarray | None:
    """Normalized mean orientation seen by particle k; None when degenerate."""
    J = alignment_current(state, params, backend=backend)[k]
    norm = float(np.hypot(J[0], J[1]))
    if norm < DEGENERATE_J:
        return None
    return J / norm


def step_with_noise(state: ParticleState, params: IbmParams, noise: np.ndarray,
                    backend: str | None = None) -> ParticleState:
    """One explicit Euler-Maruyama step with the standard normals supplied."""
    dt = params.dt_effective
    grad = repulsion_gradient(state, params, backend=backend)
    J = alignment_current(state, params, backend=backend)

    cos_t = np.cos(state.theta)
    sin_t = np.sin(state.theta)
    vx = params.v0 * cos_t - params.mu * grad[:, 0]
    vy = params.v0 * sin_t - params.mu * grad[:, 1]

    jnorm = np.hypot(J[:, 0], J[:, 1])
    aligned = jnorm >= DEGENERATE_J
    # tangential components at omega_k: u . (-sin, cos)
    tau_align = np.where(aligned, (-J[:, 0] * sin_t + J[:, 1] * cos_t) / np.where(aligned, jnorm, 1.0), 0.0)
    tau_v = -vx * sin_t + vy * cos_t

    theta_new = state.theta + dt * (tau_align / params.epsilon + params.alpha * tau_v) \
        + np.sqrt(2.0 * params.d * dt / params.epsilon) * noise
    pos_new = state.pos + dt * np.stack([vx, vy], axis=-1)
    return ParticleState(wrap_positions(pos_new, state.box), theta_new,
                         state.box, state.time + dt)


def ibm_step(state: ParticleState, params: IbmParams, rng: np.random.Generator,
             backend: str | None = None) -> ParticleState:
    """One step with noise drawn from ``rng`` (one normal per particle)."""
    return step_with_noise(state, params, rng.standard_normal(state.N), backend=backend)


def ibm_run(state: ParticleState, params: IbmParams, T: float,
            rng: np.random.Generator, snapshot_times: tuple[float, ...] = (),
            backend: str | None = None) -> list[ParticleState]:
    """March to time T; returns states at the requested times (final included).

    Steps are clipped to land exactly on snapshot times; the noise amplitude
    follows the actual step length.
    """
    targets = sorted(set(float(t) for t in snapshot_times if 0.0 < t <= T)) + [float(T)]
    targets = sorted(set(targets))
    out = []
    t = 0.0
    current = state.copy()
    for target in targets:
        while t < target - 1e-12:
            step = min(params.dt_effective, target - t)
            p = params if abs(step - params.dt_effective) < 1e-15 else replace(params, dt=step)
            current = ibm_step(current, p, rng, backend=backend)
            t += step
            current.time = t
        out.append(current.copy())
    return out
