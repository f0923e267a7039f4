"""Numba implementation of the interface-flux sweep.

Scalar transcription of ``_sweep_numpy.interface_fluxes`` (same padding
convention: one ghost left, two right); keep the two in lockstep when
touching either.  Compiled lazily and cached on disk.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .fluxes import EIG_CLUSTER_RTOL


@njit(cache=True)
def _sweep(Rp, Ap, Bp, Pp, h, a1, a2, p1, p2, mp, gam, rusanov_only):
    ni = Rp.shape[0] - 2
    m = Rp.shape[1]
    f1 = np.empty((ni, m))
    f2 = np.empty((ni, m))
    f3 = np.empty((ni, m))
    nfallback = 0
    for i in range(ni):
        for j in range(m):
            rL = Rp[i, j]
            rR = Rp[i + 1, j]
            rRR = Rp[i + 2, j]
            aL = Ap[i, j]
            aR = Ap[i + 1, j]
            aRR = Ap[i + 2, j]
            bL = Bp[i, j]
            bR = Bp[i + 1, j]
            bRR = Bp[i + 2, j]

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
            fL3 = a2 * aL * bL / rL - mp * aL * Pp[i, j] - gam * bxL
            fR3 = a2 * aR * bR / rR - mp * aR * Pp[i + 1, j] - gam * bxR
            fc1 = 0.5 * (fL1 + fR1)
            fc2 = 0.5 * (fL2 + fR2)
            fc3 = 0.5 * (fL3 + fR3)

            dr = rR - rL
            da = aR - aL
            db = bR - bL
            rm = 0.5 * (rL + rR)
            o1 = 0.5 * (aL + aR) / rm
            o2 = 0.5 * (bL + bR) / rm
            pa = (p1 + p2 * rm) - a2 * o1 * o1
            c = a2 * o1
            disc = c * c + a1 * pa
            s = np.sqrt(abs(disc))
            vmid = abs(c)
            vhi = abs(c + s)
            vlo = abs(c - s)
            lam = vmid + s

            eig_fallback = (disc < 0.0) or (s <= EIG_CLUSTER_RTOL * lam)
            if rusanov_only or eig_fallback:
                if eig_fallback and not rusanov_only:
                    nfallback += 1
                v0 = 0.5 * lam * dr
                v1 = 0.5 * lam * da
                v2 = 0.5 * lam * db
            else:
                beta = (vhi - vlo) / (2.0 * s)
                g2 = (vhi + vlo - 2.0 * vmid) / (2.0 * s * s)
                y10 = a1 * da - c * dr
                y11 = pa * dr + 2.0 * a2 * o1 * da - c * da
                y12 = -a2 * o1 * o2 * dr + a2 * o2 * da + a2 * o1 * db - c * db
                y20 = a1 * y11 - c * y10
                y21 = pa * y10 + 2.0 * a2 * o1 * y11 - c * y11
                y22 = -a2 * o1 * o2 * y10 + a2 * o2 * y11 + a2 * o1 * y12 - c * y12
                v0 = 0.5 * (vmid * dr + beta * y10 + g2 * y20)
                v1 = 0.5 * (vmid * da + beta * y11 + g2 * y21)
                v2 = 0.5 * (vmid * db + beta * y12 + g2 * y22)

            f1[i, j] = fc1 - v0
            f2[i, j] = fc2 - v1
            f3[i, j] = fc3 - v2
    return f1, f2, f3, nfallback


def interface_fluxes(Rp, Ap, Bp, Pp, h, a1, a2, p1, p2, mp, gam, rusanov_only):
    return _sweep(Rp, Ap, Bp, Pp, float(h), float(a1), float(a2), float(p1),
                  float(p2), float(mp), float(gam), bool(rusanov_only))
