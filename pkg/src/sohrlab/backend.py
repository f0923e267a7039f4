"""Backend selection for the hot numeric kernels.

Every performance-critical inner loop (flux sweeps, particle neighbor loops)
exists twice: a numba ``@njit`` version and a pure-numpy version with
identical semantics.  The active implementation is chosen by the
``SOHRLAB_BACKEND`` environment variable:

* ``SOHRLAB_BACKEND=numba`` (default when numba imports cleanly)
* ``SOHRLAB_BACKEND=numpy`` forces the vectorized fallback

Public entry points also accept an explicit ``backend=`` argument which
overrides the environment; ``benchmarks/bench_backends.py`` uses that to time
both paths against each other.
"""

from __future__ import annotations

import os

from .errors import ConfigError

ENV_VAR = "SOHRLAB_BACKEND"
_VALID = ("numba", "numpy")

try:
    import numba  # noqa: F401

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def resolve(backend: str | None = None) -> str:
    """Return the backend name to use: explicit argument > env var > default."""
    choice = backend or os.environ.get(ENV_VAR)
    if choice is None:
        return "numba" if HAVE_NUMBA else "numpy"
    choice = choice.lower()
    if choice not in _VALID:
        raise ConfigError(f"unknown backend {choice!r}; expected one of {_VALID}")
    if choice == "numba" and not HAVE_NUMBA:
        raise ConfigError("backend 'numba' requested but numba is not importable")
    return choice
