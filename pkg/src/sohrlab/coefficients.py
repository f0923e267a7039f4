"""Closure coefficients of the alignment-repulsion hydrodynamic limit.

The anisotropic equilibrium of the orientation dynamics is the von
Mises-Fisher density M(omega) ~ exp(omega . Omega / d) on the unit sphere
S^{n-1}, with noise-to-alignment ratio d.  Everything macroscopic reduces to
1D integrals in the polar angle theta against the weight

    W(theta) = sin^{n-2}(theta) exp(cos(theta)/d).

Two coefficients need more than plain quadrature:

* c1(d) -- the order parameter <cos theta>_M, the mass-flux speed factor.
* c2(d) -- a weighted average <sin^2 cos h> / <sin^2 h> where h(cos theta) =
  g(theta)/sin(theta) and g solves the singular two-point boundary value
  problem

      -(W g')' + (n-2) (W / sin^2) g = W sin,   g(0) = g(pi) = 0,

  discretized with second-order conservative finite differences on a uniform
  interior grid and solved as a tridiagonal system.

All exponentials are evaluated in the shifted form exp((cos theta - 1)/d) so
that small d never overflows; every exported quantity is a ratio in which the
shift cancels exactly.

The beta family are the six moment coefficients appearing in the derivation
of the orientation equation; their ratios are analytic identities
(beta3/beta1 = d, beta2/beta1 = c2, ...) which the test suite checks.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np
from scipy.integrate import simpson
from scipy.linalg import solve_banded

from .errors import ConfigError, NumericalError
from .kernels import sphere_surface

#: interior grid size used for tabulated coefficients (4096 Simpson intervals)
DEFAULT_GRID_SIZE = 4095

#: reference constants under which GciTable.betas is tabulated
#: (coupling alpha, potential mass Phi0 of the 2D quadratic well, second
#: moment k0 of the normalized 2D unit-ball indicator)
REFERENCE_BETA_CONSTANTS = (1.0, np.pi / 6.0, 0.125)

_BETA_NAMES = tuple(f"beta{i}" for i in range(1, 7))
CACHE_HEADER = ("d", "n", "grid_size", "c1", "c2") + _BETA_NAMES


def _check_d_n(d: float, n: int) -> None:
    if not d > 0:
        raise ConfigError(f"noise intensity d must be positive, got {d}")
    if int(n) != n or n < 2:
        raise ConfigError(f"dimension n must be an integer >= 2, got {n}")


@dataclass(frozen=True)
class VmfParams:
    """Parameters of the von Mises-Fisher density on S^{n-1}."""

    d: float
    n: int
    omega: np.ndarray

    def __post_init__(self):
        _check_d_n(self.d, self.n)
        omega = np.asarray(self.omega, dtype=float)
        if omega.shape != (self.n,):
            raise ConfigError(f"omega must have shape ({self.n},)")
        if abs(np.linalg.norm(omega) - 1.0) > 1e-12:
            raise ConfigError("omega must be a unit vector (|omega| = 1 within 1e-12)")
        object.__setattr__(self, "omega", omega)


def _polar_weight(theta: np.ndarray, d: float, n: int) -> np.ndarray:
    # shifted weight sin^{n-2} exp((cos - 1)/d); the exp(1/d) factor cancels
    # in every ratio and in the normalizer bookkeeping below
    return np.sin(theta) ** (n - 2) * np.exp((np.cos(theta) - 1.0) / d)


def vmf_log_normalizer_shifted(d: float, n: int, num_intervals: int = 4096) -> float:
    """log of Z * exp(-1/d), with Z the full spherical normalizer."""
    theta = np.linspace(0.0, np.pi, num_intervals + 1)
    integral = simpson(_polar_weight(theta, d, n), x=theta)
    return float(np.log(sphere_surface(n - 1) * integral))


def vmf_pdf(omega: Sequence[float], params: VmfParams) -> float:
    """Density of the von Mises-Fisher distribution at a unit vector omega."""
    omega = np.asarray(omega, dtype=float)
    if omega.shape != (params.n,):
        raise ConfigError(f"omega must have shape ({params.n},)")
    if abs(np.linalg.norm(omega) - 1.0) > 1e-12:
        raise ConfigError("omega must be a unit vector (|omega| = 1 within 1e-12)")
    logz = vmf_log_normalizer_shifted(params.d, params.n)
    t = float(omega @ params.omega)
    return float(np.exp((t - 1.0) / params.d - logz))


def c1(d: float, n: int, num_intervals: int = 4096) -> float:
    """Order parameter <cos theta> under the VMF weight; decreasing in d."""
    _check_d_n(d, n)
    theta = np.linspace(0.0, np.pi, num_intervals + 1)
    w = _polar_weight(theta, d, n)
    return float(simpson(np.cos(theta) * w, x=theta) / simpson(w, x=theta))


@dataclass(frozen=True)
class GciTable:
    """Tabulated solution of the invariant BVP and derived coefficients.

    ``theta_grid``/``g_values``/``h_values`` sample the interior (0, pi) grid;
    they are None for tables reconstructed from the coefficient cache.
    ``moments`` holds (<sin^2 h>_M, <sin^2 cos h>_M); ``betas`` is tabulated
    under REFERENCE_BETA_CONSTANTS (use beta_coefficients for other values).
    """

    d: float
    n: int
    grid_size: int
    c1: float
    c2: float
    moments: tuple[float, float]
    betas: np.ndarray
    theta_grid: np.ndarray | None = None
    g_values: np.ndarray | None = None
    h_values: np.ndarray | None = None


def solve_gci(d: float, n: int, grid_size: int = DEFAULT_GRID_SIZE) -> GciTable:
    """Solve the invariant boundary value problem and tabulate coefficients.

    ``grid_size`` counts interior points theta_i = i pi/(grid_size+1); sizes
    N and 2N+1 produce nested grids, which the refinement tests exploit.
    """
    _check_d_n(d, n)
    if grid_size < 64:
        raise ConfigError(f"grid_size must be >= 64, got {grid_size}")

    h = np.pi / (grid_size + 1)
    theta = np.linspace(0.0, np.pi, grid_size + 2)
    thi = theta[1:-1]

    def w(t):
        return _polar_weight(t, d, n)

    wp = w(thi + 0.5 * h)
    wm = w(thi - 0.5 * h)
    diag = (wp + wm) / h**2 + (n - 2) * w(thi) / np.sin(thi) ** 2
    rhs = w(thi) * np.sin(thi)

    ab = np.zeros((3, grid_size))
    ab[0, 1:] = -wp[:-1] / h**2
    ab[1, :] = diag
    ab[2, :-1] = -wm[1:] / h**2
    try:
        g = solve_banded((1, 1), ab, rhs)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - regular for d > 0
        raise NumericalError(
            f"singular BVP discretization for d={d}, n={n}, grid_size={grid_size}: {exc}"
        ) from exc
    if not np.all(np.isfinite(g)):
        raise NumericalError(
            f"non-finite BVP solution for d={d}, n={n}, grid_size={grid_size}"
        )

    hvals = g / np.sin(thi)
    m1, m2 = _gci_moments(theta, g, d, n)
    c2_val = m2 / m1
    alpha, phi0, k0 = REFERENCE_BETA_CONSTANTS
    betas = _betas_from_moments(m1, m2, d, n, alpha, phi0, k0)
    return GciTable(
        d=d, n=n, grid_size=grid_size,
        c1=c1(d, n, num_intervals=grid_size + 1),
        c2=float(c2_val), moments=(float(m1), float(m2)), betas=betas,
        theta_grid=thi, g_values=g, h_values=hvals,
    )


def _gci_moments(theta_full: np.ndarray, g_interior: np.ndarray, d: float, n: int):
    """Weighted moments (<sin^2 h>_M, <sin^2 cos h>_M), h = g/sin."""
    g_full = np.concatenate(([0.0], g_interior, [0.0]))
    s = np.sin(theta_full)
    expw = np.exp((np.cos(theta_full) - 1.0) / d)
    base = s ** (n - 1) * expw * g_full  # sin^n * h * exp weight
    denom = simpson(s ** (n - 2) * expw, x=theta_full)
    m1 = simpson(base, x=theta_full) / denom
    m2 = simpson(np.cos(theta_full) * base, x=theta_full) / denom
    return m1, m2


def c2(table: GciTable) -> float:
    """Invariant-weighted convection coefficient from a solved table."""
    if table.g_values is None:
        raise ConfigError("table carries no BVP samples (cache-loaded); re-solve to evaluate c2")
    theta_full = np.concatenate(([0.0], table.theta_grid, [np.pi]))
    m1, m2 = _gci_moments(theta_full, table.g_values, table.d, table.n)
    if abs(m1) < 1e-14:
        raise NumericalError("degenerate moment <sin^2 h> below 1e-14")
    return float(m2 / m1)


def gci_residual(table: GciTable) -> float:
    """Max-norm residual of the discrete BVP operator, relative to the rhs."""
    if table.g_values is None:
        raise ConfigError("table carries no BVP samples")
    d, n = table.d, table.n
    thi = table.theta_grid
    h = np.pi / (table.grid_size + 1)
    g = np.concatenate(([0.0], table.g_values, [0.0]))
    wp = _polar_weight(thi + 0.5 * h, d, n)
    wm = _polar_weight(thi - 0.5 * h, d, n)
    wi = _polar_weight(thi, d, n)
    flux = wp * (g[2:] - g[1:-1]) / h - wm * (g[1:-1] - g[:-2]) / h
    lhs = -flux / h + (n - 2) * wi / np.sin(thi) ** 2 * g[1:-1]
    rhs = wi * np.sin(thi)
    return float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(rhs)))


def h_at_endpoints(table: GciTable) -> tuple[float, float]:
    """One-sided quadratic extrapolation of h = g/sin to theta = 0 and pi.

    The quadratures never need these values (the sin^n weight vanishes at the
    endpoints); they are exposed for inspection of the invariant profile.
    """
    if table.h_values is None:
        raise ConfigError("table carries no BVP samples")
    th, hv = table.theta_grid, table.h_values

    def extrap(x0, xs, ys):
        l0 = (x0 - xs[1]) * (x0 - xs[2]) / ((xs[0] - xs[1]) * (xs[0] - xs[2]))
        l1 = (x0 - xs[0]) * (x0 - xs[2]) / ((xs[1] - xs[0]) * (xs[1] - xs[2]))
        l2 = (x0 - xs[0]) * (x0 - xs[1]) / ((xs[2] - xs[0]) * (xs[2] - xs[1]))
        return l0 * ys[0] + l1 * ys[1] + l2 * ys[2]

    return (float(extrap(0.0, th[:3], hv[:3])),
            float(extrap(np.pi, th[-3:][::-1], hv[-3:][::-1])))


def _betas_from_moments(m1, m2, d, n, alpha, phi0, k0) -> np.ndarray:
    q = d * (n - 1)
    return np.array([
        m1 / q,
        m2 / q,
        m1 / (n - 1),
        -phi0 * m1 / q,
        alpha * phi0 * (m1 + m2 / q),
        -k0 * (m1 + m2 / q),
    ])


def beta_coefficients(table: GciTable, alpha: float, phi0: float, k0: float) -> np.ndarray:
    """The six orientation-equation moment coefficients beta1..beta6."""
    m1, m2 = table.moments
    return _betas_from_moments(m1, m2, table.d, table.n, alpha, phi0, k0)


# ---------------------------------------------------------------------------
# coefficient cache (CSV keyed by (d, n, grid_size))

def save_table(path: str, table: GciTable) -> None:
    """Append the table's coefficient row to a CSV cache file."""
    exists = os.path.exists(path) and os.path.getsize(path) > 0
    with open(path, "a", newline="") as fh:
        writer = csv.writer(fh)
        if not exists:
            writer.writerow(CACHE_HEADER)
        writer.writerow([repr(table.d), table.n, table.grid_size,
                         repr(table.c1), repr(table.c2),
                         *(repr(b) for b in table.betas)])


def load_table(path: str, d: float, n: int, grid_size: int) -> GciTable | None:
    """Look up a cached coefficient row; None when absent."""
    if not os.path.exists(path):
        return None
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return None
        if tuple(header) != CACHE_HEADER:
            raise ConfigError(f"unexpected cache header in {path}: {header}")
        for row in reader:
            if float(row[0]) == d and int(row[1]) == n and int(row[2]) == grid_size:
                betas = np.array([float(v) for v in row[5:11]])
                m1 = betas[0] * d * (n - 1)
                m2 = float(row[4]) * m1
                return GciTable(d=d, n=n, grid_size=grid_size,
                                c1=float(row[3]), c2=float(row[4]),
                                moments=(m1, m2), betas=betas)
    return None


def coefficient_table(d: float, n: int, grid_size: int = DEFAULT_GRID_SIZE,
                      cache_path: str | None = None) -> GciTable:
    """Cached front end to solve_gci keyed by (d, n, grid_size)."""
    _check_d_n(d, n)
    if cache_path is not None:
        hit = load_table(cache_path, d, n, grid_size)
        if hit is not None:
            return hit
    table = solve_gci(d, n, grid_size)
    if cache_path is not None:
        save_table(cache_path, table)
    return table


def rescale_invariant(table: GciTable, factor: float) -> GciTable:
    """Return a table with g (hence h) scaled by ``factor``; c2 is invariant."""
    if table.g_values is None:
        raise ConfigError("table carries no BVP samples")
    return replace(table, g_values=table.g_values * factor,
                   h_values=table.h_values * factor)
