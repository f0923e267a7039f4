"""Field snapshots as plain CSV, full double precision.

Schema: header ``x,y,rho,omega_x,omega_y``, one row per cell in row-major
order (x outer, y inner), coordinates at cell centers.  Values are written
with repr (shortest round-trip decimal), so read(write(state)) reproduces
every float bit-exactly and any 17-significant-digit reader agrees to 1 ulp.
Cells with no orientation information carry NaN in the omega columns.
"""

from __future__ import annotations

import csv

import numpy as np

from ..errors import ConfigError
from ..solver.grid import BC_PERIODIC, FieldState, GridSpec

SNAPSHOT_HEADER = ("x", "y", "rho", "omega_x", "omega_y")


def write_snapshot(state: FieldState, grid: GridSpec, path: str) -> None:
    nx, ny = state.rho.shape
    if (nx, ny) != (grid.nx, grid.ny):
        raise ConfigError("state and grid shapes differ")
    om = state.omega()
    xs = grid.x_centers()
    ys = grid.y_centers()
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(SNAPSHOT_HEADER)
        for i in range(nx):
            for j in range(ny):
                writer.writerow([repr(xs[i]), repr(ys[j]), repr(state.rho[i, j]),
                                 repr(om[i, j, 0]), repr(om[i, j, 1])])


def read_snapshot(path: str) -> tuple[FieldState, GridSpec]:
    """Rebuild the field and its grid geometry (bc defaults to periodic)."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != SNAPSHOT_HEADER:
            raise ConfigError(f"bad snapshot header in {path}: {header}")
        rows = []
        for k, row in enumerate(reader):
            if len(row) != 5:
                raise ConfigError(f"malformed row {k + 2} in {path}: {row}")
            try:
                rows.append([float(v) for v in row])
            except ValueError as exc:
                raise ConfigError(f"malformed row {k + 2} in {path}: {exc}") from exc
    data = np.asarray(rows)
    if data.size == 0:
        raise ConfigError(f"empty snapshot {path}")
    xs = np.unique(data[:, 0])
    ys = np.unique(data[:, 1])
    nx, ny = len(xs), len(ys)
    if nx * ny != data.shape[0]:
        raise ConfigError(
            f"{path}: {data.shape[0]} rows do not fill a {nx}x{ny} grid")
    dx = xs[1] - xs[0] if nx > 1 else 2.0 * xs[0]
    dy = ys[1] - ys[0] if ny > 1 else 2.0 * ys[0]
    grid = GridSpec(nx, ny, float(dx * nx), float(dy * ny), BC_PERIODIC)

    rho = data[:, 2].reshape(nx, ny)
    ox = data[:, 3].reshape(nx, ny)
    oy = data[:, 4].reshape(nx, ny)
    missing = ~(np.isfinite(ox) & np.isfinite(oy))
    ox = np.where(missing, 0.0, ox)
    oy = np.where(missing, 0.0, oy)
    mom = np.stack([rho * ox, rho * oy], axis=-1)
    state = FieldState(rho, mom, missing=missing if missing.any() else None)
    return state, grid
