"""Grid-refinement study on the vortex data (fixed boundary values).

Runs the solver at dx = 0.25, 0.125, ... halving ``levels - 1`` times with a
fixed dt, then measures L1 errors of (rho, cos theta) between each grid and
the next finer one (restricted conservatively), and reports the observed
orders.  The scheme is first order: the orders land close to 1.
"""

from __future__ import annotations

import time

from ..errors import InstabilityError
from ..solver.grid import BC_DIRICHLET, GridSpec
from ..solver.params import HydroParams
from ..solver.scheme import run_fields
from .errors import ErrorReport, l1_relative_error, restrict_half
from .presets import build_initial_state, hydro_for


def convergence_study(levels: int = 4, base_nx: int = 40, dt: float = 0.001,
                      T: float = 1.0, box: float = 10.0,
                      hydro: HydroParams | None = None,
                      backend: str | None = None) -> ErrorReport:
    if levels < 3:
        raise ValueError("a refinement study needs at least 3 levels")
    if hydro is None:
        hydro = hydro_for(d=0.1, F0=1.0)

    t0 = time.perf_counter()
    finals = []
    grids = []
    for level in range(levels):
        nx = base_nx * 2**level
        grid = GridSpec(nx, nx, box, box, BC_DIRICHLET)
        state0 = build_initial_state("vortex", grid)
        try:
            result = run_fields(state0, grid, hydro, T, dt=dt, backend=backend)
        except InstabilityError as exc:
            raise InstabilityError(
                f"convergence study unstable at level {level} (nx={nx}): {exc}",
                step=exc.step, time=exc.time) from exc
        finals.append(result.snapshots[-1])
        grids.append(grid)

    report = ErrorReport()
    for level in range(levels - 1):
        ref = restrict_half(finals[level + 1])
        report.dx.append(grids[level].dx)
        report.err_rho.append(l1_relative_error(finals[level], ref, "rho"))
        report.err_cos.append(l1_relative_error(finals[level], ref, "cos_theta"))
    report.runtime_seconds = time.perf_counter() - t0
    return report
