"""Micro-macro matching on the Riemann problem.

For each scaling parameter epsilon, particle realizations are accumulated
one by one; after each new realization the cumulative deposit is compared
against the macroscopic solution on the same grid in relative L1 (density
and wrapped angle).  The errors shrink both with the number of averages and,
more importantly, with epsilon -> 0.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ..particles.deposit import _bin_counts, _fields_from_sums
from ..particles.model import ibm_run
from ..solver.grid import FieldState
from ..solver.scheme import run_fields
from .config import ExperimentConfig
from .errors import l1_relative_error
from .presets import build_initial_state, riemann_mass, sample_riemann_particles


@dataclass(frozen=True)
class MicroMacroRow:
    eps: float
    realizations: int
    err_rho: float
    err_theta: float


def sohr_reference(config: ExperimentConfig, backend: str | None = None) -> FieldState:
    state0 = build_initial_state("riemann", config.grid)
    result = run_fields(state0, config.grid, config.hydro, config.T,
                        dt=config.dt, backend=backend)
    return result.snapshots[-1]


def micro_macro_compare(config: ExperimentConfig,
                        backend: str | None = None) -> list[MicroMacroRow]:
    """The error table behind the averages-vs-epsilon comparison figure."""
    grid = config.grid
    box = (grid.Lx, grid.Ly)
    mass = riemann_mass(box)
    reference = sohr_reference(config, backend=backend)
    ibm = config.ibm
    shape = (grid.nx, grid.ny)

    rows: list[MicroMacroRow] = []
    for eps in config.eps_list:
        params = replace(ibm, epsilon=eps, dt=None)
        counts = np.zeros(shape, dtype=np.int64)
        sx = np.zeros(shape)
        sy = np.zeros(shape)
        for r in range(config.realizations):
            rng = np.random.Generator(np.random.PCG64(
                np.random.SeedSequence([config.seed, int(eps * 1e6), r])))
            state0 = sample_riemann_particles(rng, params.N, box, d=params.d)
            final = ibm_run(state0, params, config.T, rng, backend=backend)[-1]
            c, x, y = _bin_counts(final, grid)
            counts += c
            sx += x
            sy += y
            mean = _fields_from_sums(counts, sx, sy, (r + 1) * params.N,
                                     grid, mass, config.T)
            rows.append(MicroMacroRow(
                eps=eps, realizations=r + 1,
                err_rho=l1_relative_error(mean, reference, "rho"),
                err_theta=l1_relative_error(mean, reference, "theta")))
    return rows


def final_errors(rows: list[MicroMacroRow]) -> dict[float, MicroMacroRow]:
    """The fully averaged row per epsilon."""
    out: dict[float, MicroMacroRow] = {}
    for row in rows:
        best = out.get(row.eps)
        if best is None or row.realizations > best.realizations:
            out[row.eps] = row
    return out
