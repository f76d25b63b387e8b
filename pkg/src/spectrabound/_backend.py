"""Kernel selection: compiled extension if importable, else pure Python.

Set ``SPECTRABOUND_PURE=1`` to force the fallback. Power iteration on
large matrices always uses the numpy path, whose BLAS mat-vec beats the
compiled scalar loop past roughly 130 rows.
"""

from __future__ import annotations

import os

from . import _pykernels

BACKEND = "python"

if os.environ.get("SPECTRABOUND_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _impl

        BACKEND = "cython"
    except ImportError:  # extension not built
        _impl = _pykernels
else:
    _impl = _pykernels

# measured crossover of the compiled loop against numpy mat-vec
DENSE_CROSSOVER = 128


def power_iterate(B, tol, max_iter):
    if B.shape[0] >= DENSE_CROSSOVER:
        return _pykernels.power_iterate(B, tol, max_iter)
    return _impl.power_iterate(B, tol, max_iter)


bfs_distances = _impl.bfs_distances
enumerate_bipartite = _impl.enumerate_bipartite

__all__ = ["BACKEND", "power_iterate", "bfs_distances", "enumerate_bipartite"]
