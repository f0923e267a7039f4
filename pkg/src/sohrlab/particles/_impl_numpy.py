"""Pure-numpy interaction sums (fallback backend).

Both the repulsion gradient and the alignment current are computed by
chunked direct pairwise summation with minimum-image distances; memory stays
bounded (~a few million pair entries per chunk) at the cost of O(N^2) work.
The numba backend provides the cell-list versions.
"""

from __future__ import annotations

import numpy as np

_PAIRS_PER_CHUNK = 4_000_000


def _chunk(N: int) -> int:
    return max(1, _PAIRS_PER_CHUNK // max(N, 1))


def repulsion_direct(pos: np.ndarray, box, radius: float, pref: float) -> np.ndarray:
    Lx, Ly = box
    N = pos.shape[0]
    grad = np.zeros((N, 2))
    step = _chunk(N)
    for s in range(0, N, step):
        e = min(s + step, N)
        dx = pos[s:e, 0, None] - pos[None, :, 0]
        dy = pos[s:e, 1, None] - pos[None, :, 1]
        dx -= Lx * np.round(dx / Lx)
        dy -= Ly * np.round(dy / Ly)
        dist = np.hypot(dx, dy)
        with np.errstate(invalid="ignore", divide="ignore"):
            sr = dist / radius
            w = np.where((sr <= 1.0) & (dist > 0.0),
                         2.0 * (sr - 1.0) / (radius * dist), 0.0)
        grad[s:e, 0] = np.sum(w * dx, axis=1)
        grad[s:e, 1] = np.sum(w * dy, axis=1)
    return pref * grad


# the fallback backend has no cell lists; "cell" simply reuses the direct sum
repulsion = repulsion_direct


def alignment(pos: np.ndarray, omega: np.ndarray, box, radius: float,
              pref: float) -> np.ndarray:
    Lx, Ly = box
    N = pos.shape[0]
    J = np.zeros((N, 2))
    step = _chunk(N)
    for s in range(0, N, step):
        e = min(s + step, N)
        dx = pos[s:e, 0, None] - pos[None, :, 0]
        dy = pos[s:e, 1, None] - pos[None, :, 1]
        dx -= Lx * np.round(dx / Lx)
        dy -= Ly * np.round(dy / Ly)
        within = (dx * dx + dy * dy) <= radius * radius
        J[s:e, 0] = within @ omega[:, 0]
        J[s:e, 1] = within @ omega[:, 1]
    return pref * J
