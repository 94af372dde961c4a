"""Kernel backend selection.

The numerical hot paths (slit-plane amplitude evaluation, the Newton solver
for graph-type congruences, and shear/rotation assembly) exist twice: a
compiled Cython extension (_speedups) and a pure-Python/numpy twin
(python_backend).  The compiled one is preferred when present; set
NULLCONG_BACKEND=python to force the fallback, or NULLCONG_BACKEND=compiled
to require the extension (ImportError if it was not built).

Both expose the same surface; tests assert their outputs agree.
"""
from __future__ import annotations

import os

from . import python_backend

_choice = os.environ.get("NULLCONG_BACKEND", "").strip().lower()

if _choice == "python":
    _impl = python_backend
elif _choice in ("", "compiled"):
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "NULLCONG_BACKEND=compiled but the nullcong._core._speedups "
                "extension is not built; reinstall with Cython available"
            )
        _impl = python_backend
else:
    raise ValueError(
        f"NULLCONG_BACKEND={_choice!r} not understood; use 'python' or 'compiled'"
    )

BACKEND: str = _impl.BACKEND

g_scalar = _impl.g_scalar
g_prime_scalar = _impl.g_prime_scalar
g_many = _impl.g_many
g_prime_many = _impl.g_prime_many
cr_newton_chain = _impl.cr_newton_chain
cr_newton_seeded = _impl.cr_newton_seeded
shear_twist_raw = _impl.shear_twist_raw

# Newton status codes (shared constants, defined once in the python twin)
OK = python_backend.OK
NO_CONVERGENCE = python_backend.NO_CONVERGENCE
SLIT = python_backend.SLIT
CHART_DEGENERATE = python_backend.CHART_DEGENERATE
DIVERGED = python_backend.DIVERGED

__all__ = [
    "BACKEND",
    "g_scalar",
    "g_prime_scalar",
    "g_many",
    "g_prime_many",
    "cr_newton_chain",
    "cr_newton_seeded",
    "shear_twist_raw",
    "OK",
    "NO_CONVERGENCE",
    "SLIT",
    "CHART_DEGENERATE",
    "DIVERGED",
]
