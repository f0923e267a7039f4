"""Numba cell-list interaction sums (default backend).

Linked cells (head/next arrays) with wrapped 3x3 neighbor sweeps; the cell
edge is never smaller than the interaction radius, and the cell count per
axis is capped near sqrt(2N) so the grid stays O(N) even for tiny radii.
Boxes that would give fewer than 3 cells per axis fall back to the direct
O(N^2) kernels (a 3x3 sweep would double-count wrapped neighbors there).
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _build_cells(pos, Lx, Ly, ncx, ncy):
    N = pos.shape[0]
    head = np.full(ncx * ncy, -1, dtype=np.int64)
    nxt = np.full(N, -1, dtype=np.int64)
    for i in range(N):
        cx = int(pos[i, 0] / Lx * ncx)
        cy = int(pos[i, 1] / Ly * ncy)
        if cx >= ncx:
            cx = ncx - 1
        if cy >= ncy:
            cy = ncy - 1
        c = cx * ncy + cy
        nxt[i] = head[c]
        head[c] = i
    return head, nxt


@njit(cache=True)
def _repulsion_cells(pos, head, nxt, ncx, ncy, Lx, Ly, radius, pref):
    N = pos.shape[0]
    grad = np.zeros((N, 2))
    for i in range(N):
        xi = pos[i, 0]
        yi = pos[i, 1]
        cx = int(xi / Lx * ncx)
        cy = int(yi / Ly * ncy)
        if cx >= ncx:
            cx = ncx - 1
        if cy >= ncy:
            cy = ncy - 1
        gx = 0.0
        gy = 0.0
        for di in range(-1, 2):
            cx2 = (cx + di) % ncx
            for dj in range(-1, 2):
                cy2 = (cy + dj) % ncy
                j = head[cx2 * ncy + cy2]
                while j >= 0:
                    if j != i:
                        dx = xi - pos[j, 0]
                        dy = yi - pos[j, 1]
                        dx -= Lx * np.rint(dx / Lx)
                        dy -= Ly * np.rint(dy / Ly)
                        dist = np.sqrt(dx * dx + dy * dy)
                        if 0.0 < dist <= radius:
                            sr = dist / radius
                            w = 2.0 * (sr - 1.0) / (radius * dist)
                            gx += w * dx
                            gy += w * dy
                    j = nxt[j]
        grad[i, 0] = pref * gx
        grad[i, 1] = pref * gy
    return grad


@njit(cache=True)
def _alignment_cells(pos, omega, head, nxt, ncx, ncy, Lx, Ly, radius, pref):
    N = pos.shape[0]
    J = np.zeros((N, 2))
    r2 = radius * radius
    for i in range(N):
        xi = pos[i, 0]
        yi = pos[i, 1]
        cx = int(xi / Lx * ncx)
        cy = int(yi / Ly * ncy)
        if cx >= ncx:
            cx = ncx - 1
        if cy >= ncy:
            cy = ncy - 1
        jx = 0.0
        jy = 0.0
        for di in range(-1, 2):
            cx2 = (cx + di) % ncx
            for dj in range(-1, 2):
                cy2 = (cy + dj) % ncy
                j = head[cx2 * ncy + cy2]
                while j >= 0:
                    dx = xi - pos[j, 0]
                    dy = yi - pos[j, 1]
                    dx -= Lx * np.rint(dx / Lx)
                    dy -= Ly * np.rint(dy / Ly)
                    if dx * dx + dy * dy <= r2:
                        jx += omega[j, 0]
                        jy += omega[j, 1]
                    j = nxt[j]
        J[i, 0] = pref * jx
        J[i, 1] = pref * jy
    return J


@njit(cache=True)
def _repulsion_direct(pos, Lx, Ly, radius, pref):
    N = pos.shape[0]
    grad = np.zeros((N, 2))
    for i in range(N):
        gx = 0.0
        gy = 0.0
        for j in range(N):
            if j == i:
                continue
            dx = pos[i, 0] - pos[j, 0]
            dy = pos[i, 1] - pos[j, 1]
            dx -= Lx * np.rint(dx / Lx)
            dy -= Ly * np.rint(dy / Ly)
            dist = np.sqrt(dx * dx + dy * dy)
            if 0.0 < dist <= radius:
                sr = dist / radius
                w = 2.0 * (sr - 1.0) / (radius * dist)
                gx += w * dx
                gy += w * dy
        grad[i, 0] = pref * gx
        grad[i, 1] = pref * gy
    return grad


@njit(cache=True)
def _alignment_direct(pos, omega, Lx, Ly, radius, pref):
    N = pos.shape[0]
    J = np.zeros((N, 2))
    r2 = radius * radius
    for i in range(N):
        jx = 0.0
        jy = 0.0
        for j in range(N):
            dx = pos[i, 0] - pos[j, 0]
            dy = pos[i, 1] - pos[j, 1]
            dx -= Lx * np.rint(dx / Lx)
            dy -= Ly * np.rint(dy / Ly)
            if dx * dx + dy * dy <= r2:
                jx += omega[j, 0]
                jy += omega[j, 1]
        J[i, 0] = pref * jx
        J[i, 1] = pref * jy
    return J


def _grid_dims(box, radius: float, N: int) -> tuple[int, int]:
    cap = max(4, int(np.sqrt(2.0 * N)) + 1)
    ncx = min(int(box[0] / radius), cap)
    ncy = min(int(box[1] / radius), cap)
    return ncx, ncy


def repulsion(pos, box, radius, pref):
    ncx, ncy = _grid_dims(box, radius, pos.shape[0])
    if ncx < 3 or ncy < 3:
        return _repulsion_direct(pos, box[0], box[1], radius, pref)
    head, nxt = _build_cells(pos, box[0], box[1], ncx, ncy)
    return _repulsion_cells(pos, head, nxt, ncx, ncy, box[0], box[1], radius, pref)


def repulsion_direct(pos, box, radius, pref):
    return _repulsion_direct(pos, box[0], box[1], radius, pref)


def alignment(pos, omega, box, radius, pref):
    ncx, ncy = _grid_dims(box, radius, pos.shape[0])
    if ncx < 3 or ncy < 3:
        return _alignment_direct(pos, omega, box[0], box[1], radius, pref)
    head, nxt = _build_cells(pos, box[0], box[1], ncx, ncy)
    return _alignment_cells(pos, omega, head, nxt, ncx, ncy, box[0], box[1], radius, pref)
