"""Second-order accuracy check of the nonlocal-to-local kernel expansion.

The alignment interaction smooths fields through a mass-1 disc kernel of
radius sqrt(eps)*R.  For smooth J the exact convolution satisfies

    (K_a * J)(x) = J(x) + eps * k0 * Laplacian(J)(x) + O(eps^2),

with k0 the kernel's second moment.  This module evaluates the convolution
by high-order quadrature (Gauss-Legendre radially, trapezoid in angle) and
tabulates the sup-norm remainder per eps; for a sinusoidal field the
remainder ratio between eps and eps/2 sits near 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..kernels import indicator_ball, kernel_moment_k0


@dataclass(frozen=True)
class SmoothField:
    """A scalar test field with its analytic Laplacian."""

    name: str
    f: Callable[[np.ndarray, np.ndarray], np.ndarray]
    laplacian: Callable[[np.ndarray, np.ndarray], np.ndarray]


def constant_field(value: float = 1.0) -> SmoothField:
    return SmoothField("constant",
                       lambda x, y: np.full(np.shape(x), value),
                       lambda x, y: np.zeros(np.shape(x)))


def quadratic_field(a: float = 0.3, b: float = -0.2) -> SmoothField:
    return SmoothField("quadratic",
                       lambda x, y: a * x**2 + b * y**2 + 0.1 * x * y + 0.5 * x,
                       lambda x, y: np.full(np.shape(x), 2.0 * a + 2.0 * b))


def sine_field(kx: float = 2.0 * np.pi / 5.0, ky: float = 2.0 * np.pi / 5.0) -> SmoothField:
    k2 = kx**2 + ky**2
    return SmoothField("sine",
                       lambda x, y: np.sin(kx * x) * np.cos(ky * y),
                       lambda x, y: -k2 * np.sin(kx * x) * np.cos(ky * y))


def disc_convolution(field: SmoothField, x: np.ndarray, y: np.ndarray,
                     radius: float, nr: int = 48, nphi: int = 96) -> np.ndarray:
    """Mean of the field over the disc of given radius around each point."""
    gl_x, gl_w = np.polynomial.legendre.leggauss(nr)
    r = 0.5 * radius * (gl_x + 1.0)
    wr = 0.5 * radius * gl_w * r          # radial measure r dr
    phi = 2.0 * np.pi * np.arange(nphi) / nphi
    wphi = 2.0 * np.pi / nphi
    acc = np.zeros(np.shape(x))
    for ri, wi in zip(r, wr):
        for p in phi:
            acc += wi * wphi * field.f(x + ri * np.cos(p), y + ri * np.sin(p))
    return acc / (np.pi * radius**2)


def expansion_check(field: SmoothField, eps_list: Sequence[float],
                    R: float = 1.0, box: float = 10.0, npts: int = 17) -> list[tuple[float, float]]:
    """Sup-norm remainder |K_a * J - J - eps k0 Lap J| per eps (a = sqrt(eps) R)."""
    k0 = kernel_moment_k0(indicator_ball(2, normalized=True, range=R), 2)
    pts = (np.arange(npts) + 0.5) * box / npts
    X, Y = np.meshgrid(pts, pts, indexing="ij")
    base = field.f(X, Y)
    lap = field.laplacian(X, Y)
    rows = []
    for eps in eps_list:
        conv = disc_convolution(field, X, Y, np.sqrt(eps) * R)
        remainder = np.max(np.abs(conv - base - eps * k0 * lap))
        rows.append((float(eps), float(remainder)))
    return rows


def remainder_ratios(rows: Sequence[tuple[float, float]]) -> list[float]:
    """Remainder ratios between successive eps values (expect ~4 for eps/2 steps)."""
    return [rows[i][1] / rows[i + 1][1] for i in range(len(rows) - 1)]
