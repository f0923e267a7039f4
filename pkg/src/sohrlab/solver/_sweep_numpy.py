"""Vectorized (pure numpy) interface-flux sweep.

Arrays are padded along axis 0 (the sweep direction) with one ghost cell on
the left and two on the right: interface k sits between padded cells k and
k+1, and the right cell's own forward gradient needs cell k+2.  Each side of
the central average is evaluated with its own one-sided gradient
(Qx_i = (Q_{i+1} - Q_i)/h); this wide diffusive stencil is the one whose
explicit step stays stable at the reference time steps (the compact variant
amplifies the checkerboard mode once mu*Phi0*rho*dt/dx^2 exceeds 1/4).

The formulas mirror the scalar code in ``_sweep_numba`` operation for
operation; keep the two in lockstep.
"""

from __future__ import annotations

import numpy as np

from .fluxes import EIG_CLUSTER_RTOL


def interface_fluxes(Rp, Ap, Bp, Pp, h, a1, a2, p1, p2, mp, gam, rusanov_only):
    """Fluxes at the n+1 interfaces of a padded (n+3, m) block.

    Rp/Ap/Bp: padded density and momentum (parallel, perpendicular); Pp:
    padded transverse density gradient.  Returns (f1, f2, f3, nfallback);
    nfallback counts interfaces where the polynomial viscosity fell back to
    Rusanov (0 in rusanov_only mode, which is a choice, not a fallback).
    """
    rL, rR, rRR = Rp[:-2], Rp[1:-1], Rp[2:]
    aL, aR, aRR = Ap[:-2], Ap[1:-1], Ap[2:]
    bL, bR, bRR = Bp[:-2], Bp[1:-1], Bp[2:]
    pL_t, pR_t = Pp[:-2], Pp[1:-1]

    # one-sided gradients owned by the left and right cells of each interface
    rxL = (rR - rL) / h
    axL = (aR - aL) / h
    bxL = (bR - bL) / h
    rxR = (rRR - rR) / h
    axR = (aRR - aR) / h
    bxR = (bRR - bR) / h

    pL = p1 * rL + 0.5 * p2 * rL * rL
    pR = p1 * rR + 0.5 * p2 * rR * rR
    fL1 = a1 * aL - mp * rL * rxL
    fR1 = a1 * aR - mp * rR * rxR
    fL2 = a2 * aL * aL / rL + pL - mp * aL * rxL - gam * axL
    fR2 = a2 * aR * aR / rR + pR - mp * aR * rxR - gam * axR
    fL3 = a2 * aL * bL / rL - mp * aL * pL_t - gam * bxL
    fR3 = a2 * aR * bR / rR - mp * aR * pR_t - gam * bxR
    f1 = 0.5 * (fL1 + fR1)
    f2 = 0.5 * (fL2 + fR2)
    f3 = 0.5 * (fL3 + fR3)

    # upwinding at the arithmetic mean state
    dr = rR - rL
    da = aR - aL
    db = bR - bL
    rm = 0.5 * (rL + rR)
    o1 = 0.5 * (aL + aR) / rm
    o2 = 0.5 * (bL + bR) / rm
    pa = (p1 + p2 * rm) - a2 * o1 * o1
    c = a2 * o1
    disc = c * c + a1 * pa
    s = np.sqrt(np.abs(disc))
    vmid = np.abs(c)
    vhi = np.abs(c + s)
    vlo = np.abs(c - s)
    lam = vmid + s

    eig_fallback = (disc < 0.0) | (s <= EIG_CLUSTER_RTOL * lam)
    use_rus = eig_fallback if not rusanov_only else np.ones_like(eig_fallback)

    with np.errstate(divide="ignore", invalid="ignore"):
        beta = (vhi - vlo) / (2.0 * s)
        g2 = (vhi + vlo - 2.0 * vmid) / (2.0 * s * s)
    y10 = a1 * da - c * dr
    y11 = pa * dr + 2.0 * a2 * o1 * da - c * da
    y12 = -a2 * o1 * o2 * dr + a2 * o2 * da + a2 * o1 * db - c * db
    y20 = a1 * y11 - c * y10
    y21 = pa * y10 + 2.0 * a2 * o1 * y11 - c * y11
    y22 = -a2 * o1 * o2 * y10 + a2 * o2 * y11 + a2 * o1 * y12 - c * y12

    v0 = np.where(use_rus, 0.5 * lam * dr, 0.5 * (vmid * dr + beta * y10 + g2 * y20))
    v1 = np.where(use_rus, 0.5 * lam * da, 0.5 * (vmid * da + beta * y11 + g2 * y21))
    v2 = np.where(use_rus, 0.5 * lam * db, 0.5 * (vmid * db + beta * y12 + g2 * y22))

    nfallback = 0 if rusanov_only else int(np.count_nonzero(eig_fallback))
    return f1 - v0, f2 - v1, f3 - v2, nfallback
