"""Physical fluxes, Jacobian wave speeds, and the polynomial viscosity matrix.

Conserved variables Q = (rho, m1, m2) with m = rho*Omega.  The x-directed
flux, with one-sided gradients rx = d(rho)/dx, m1x, m2x and the transverse
density gradient ry, reads

    F1 = a1*m1            - mu_phi0*rho*rx
    F2 = a2*m1^2/rho + p  - mu_phi0*m1*rx - gamma*m1x
    F3 = a2*m1*m2/rho     - mu_phi0*m1*ry - gamma*m2x

with p(rho) = p1*rho + p2*rho^2/2; the y-flux is its mirror image.  The
first-order part has closed-form eigenvalues

    lam = a2*w,  a2*w +/- sqrt((a2*w)^2 + a1*(p'(rho) - a2*w^2)),   w = m1/rho,

so the degree-2 polynomial interpolating |lam| at those three nodes (the
upwinding matrix of the numerical flux) never needs an eigensolver.  The
numerical interface flux is

    (F(QL) + F(QR))/2 - (1/2) * P2(A(mean state)) * (QR - QL),

which reduces to the exact upwind flux for a scalar advection equation; when
the nodes cluster within 1e-8 relative (or the discriminant goes negative,
losing hyperbolicity away from |Omega| = 1) the scheme falls back to a
Rusanov viscosity |lam|_max * Id.
"""

from __future__ import annotations

import numpy as np

from ..errors import PositivityError
from .params import EffectiveCoefficients, FLUX_RUSANOV, HydroParams, effective_coefficients

#: relative eigenvalue-separation threshold below which Rusanov is used
EIG_CLUSTER_RTOL = 1e-8


def _effective(params) -> EffectiveCoefficients:
    if isinstance(params, EffectiveCoefficients):
        return params
    return effective_coefficients(params)


def _check_positive_rho(rho: np.ndarray) -> None:
    rho = np.asarray(rho)
    if np.any(rho <= 0.0):
        idx = np.unravel_index(int(np.argmin(rho)), rho.shape)
        raise PositivityError(
            f"nonpositive density {rho[idx]:.6e} at cell {idx}", cell=idx)


def physical_fluxes(Q, Qx, Qy, params):
    """Pointwise F and G triples from cell values and one-sided gradients.

    Q, Qx, Qy are (rho, m1, m2) triples of equal-shaped arrays; returns
    (F, G) as triples.  Density must be positive wherever evaluated.
    """
    eff = _effective(params)
    rho, m1, m2 = (np.asarray(q, dtype=float) for q in Q)
    rx, m1x, m2x = (np.asarray(q, dtype=float) for q in Qx)
    ry, m1y, m2y = (np.asarray(q, dtype=float) for q in Qy)
    _check_positive_rho(rho)

    p = eff.p1 * rho + 0.5 * eff.p2 * rho**2
    F = (eff.a1 * m1 - eff.mu_phi0 * rho * rx,
         eff.a2 * m1**2 / rho + p - eff.mu_phi0 * m1 * rx - eff.gamma * m1x,
         eff.a2 * m1 * m2 / rho - eff.mu_phi0 * m1 * ry - eff.gamma * m2x)
    G = (eff.a1 * m2 - eff.mu_phi0 * rho * ry,
         eff.a2 * m2 * m1 / rho - eff.mu_phi0 * m2 * rx - eff.gamma * m1y,
         eff.a2 * m2**2 / rho + p - eff.mu_phi0 * m2 * ry - eff.gamma * m2y)
    return F, G


def wave_speeds(rho, om_par, eff: EffectiveCoefficients):
    """Center eigenvalue and discriminant of the first-order x-Jacobian."""
    pprime = eff.p1 + eff.p2 * rho
    c = eff.a2 * om_par
    disc = c * c + eff.a1 * (pprime - eff.a2 * om_par * om_par)
    return c, disc


def wave_speed_bound(rho, om_par, params):
    """Upper bound |c| + sqrt(|disc|) on the spectral radius (exact when real)."""
    eff = _effective(params)
    c, disc = wave_speeds(np.asarray(rho, dtype=float), np.asarray(om_par, dtype=float), eff)
    return np.abs(c) + np.sqrt(np.abs(disc))


def pviscosity_coefficients(lam_lo, lam_mid, lam_hi):
    """Coefficients (q0, q1, q2) of the quadratic interpolating |lam| at 3 nodes.

    Nodes must be distinct; q(lam) = q0 + q1*lam + q2*lam^2 with q(lam_k) =
    |lam_k|.  Exposed mainly for the scalar upwind sanity checks; the sweep
    kernels use the equivalent node-centered form.
    """
    x = np.array([lam_lo, lam_mid, lam_hi], dtype=float)
    V = np.vander(x, 3, increasing=True)
    return tuple(np.linalg.solve(V, np.abs(x)))


def _jacobian_apply(u0, u1, u2, rho, o1, o2, eff: EffectiveCoefficients):
    """Action of the first-order x-Jacobian at state (rho, o1, o2) on u."""
    pprime = eff.p1 + eff.p2 * rho
    y0 = eff.a1 * u1
    y1 = (pprime - eff.a2 * o1 * o1) * u0 + 2.0 * eff.a2 * o1 * u1
    y2 = -eff.a2 * o1 * o2 * u0 + eff.a2 * o2 * u1 + eff.a2 * o1 * u2
    return y0, y1, y2


def upwind_viscosity(QL, QR, params, scheme=None):
    """Viscosity term (1/2) P2(A(mean)) (QR - QL), with Rusanov fallback.

    Returns (v0, v1, v2, fallback_mask); arrays broadcast over the inputs.
    """
    eff = _effective(params)
    rusanov_only = (scheme == FLUX_RUSANOV) if scheme is not None else (
        isinstance(params, HydroParams) and params.flux_scheme == FLUX_RUSANOV)

    rL, aL, bL = (np.asarray(q, dtype=float) for q in QL)
    rR, aR, bR = (np.asarray(q, dtype=float) for q in QR)
    d0, d1, d2 = rR - rL, aR - aL, bR - bL
    rm = 0.5 * (rL + rR)
    o1 = 0.5 * (aL + aR) / rm
    o2 = 0.5 * (bL + bR) / rm

    c, disc = wave_speeds(rm, o1, eff)
    s = np.sqrt(np.abs(disc))
    vmid = np.abs(c)
    vhi = np.abs(c + s)
    vlo = np.abs(c - s)
    lam_max = vmid + s

    scale = np.maximum(lam_max, 1e-300)
    fallback = (disc < 0.0) | (s <= EIG_CLUSTER_RTOL * scale) | rusanov_only

    # node-centered quadratic q(lam) = vmid + beta*(lam-c) + g2*(lam-c)^2
    with np.errstate(divide="ignore", invalid="ignore"):
        beta = (vhi - vlo) / (2.0 * s)
        g2 = (vhi + vlo - 2.0 * vmid) / (2.0 * s * s)
    y10, y11, y12 = _jacobian_apply(d0, d1, d2, rm, o1, o2, eff)
    y10, y11, y12 = y10 - c * d0, y11 - c * d1, y12 - c * d2
    y20, y21, y22 = _jacobian_apply(y10, y11, y12, rm, o1, o2, eff)
    y20, y21, y22 = y20 - c * y10, y21 - c * y11, y22 - c * y12

    v0 = np.where(fallback, 0.5 * lam_max * d0, 0.5 * (vmid * d0 + beta * y10 + g2 * y20))
    v1 = np.where(fallback, 0.5 * lam_max * d1, 0.5 * (vmid * d1 + beta * y11 + g2 * y21))
    v2 = np.where(fallback, 0.5 * lam_max * d2, 0.5 * (vmid * d2 + beta * y12 + g2 * y22))
    return v0, v1, v2, fallback


def numerical_flux(QL, QR, QxL, QxR, params, ryL=0.0, ryR=0.0, scheme=None):
    """Interface flux: central average of physical fluxes minus the viscosity.

    QL/QR are (rho, m1, m2) triples on either side of an x-interface; QxL/QxR
    the one-sided gradient triples used inside the physical fluxes (the
    production sweep passes each cell's own forward difference).  ryL/ryR are
    the transverse density gradients entering the third component.
    """
    eff = _effective(params)
    rL, aL, bL = (np.asarray(q, dtype=float) for q in QL)
    rR, aR, bR = (np.asarray(q, dtype=float) for q in QR)
    _check_positive_rho(rL)
    _check_positive_rho(rR)

    def fx(rho, m1, m2, grads, ry):
        rx, m1x, m2x = grads
        p = eff.p1 * rho + 0.5 * eff.p2 * rho**2
        return (eff.a1 * m1 - eff.mu_phi0 * rho * rx,
                eff.a2 * m1**2 / rho + p - eff.mu_phi0 * m1 * rx - eff.gamma * m1x,
                eff.a2 * m1 * m2 / rho - eff.mu_phi0 * m1 * ry - eff.gamma * m2x)

    FL = fx(rL, aL, bL, QxL, ryL)
    FR = fx(rR, aR, bR, QxR, ryR)
    v0, v1, v2, fallback = upwind_viscosity(QL, QR, params, scheme=scheme)
    return (0.5 * (FL[0] + FR[0]) - v0,
            0.5 * (FL[1] + FR[1]) - v1,
            0.5 * (FL[2] + FR[2]) - v2), fallback
