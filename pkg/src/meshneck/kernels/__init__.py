"""Kernel backend selection.

The hot inner loops (Dijkstra, loop search, BFS, dual-graph flood fill) live
in :mod:`._graph` as plain array functions.  By default they are compiled
with numba's ``@njit`` (nogil, cached); setting ``MESHNECK_BACKEND=numpy``
runs the same source uncompiled.  ``MESHNECK_BACKEND=numba`` makes a missing
numba installation a hard error instead of a silent fallback.

Both backends execute identical arithmetic in identical order, so results
are bit-equal; ``benchmarks/bench_backends.py`` compares their speed.
"""

import logging
import os
from types import SimpleNamespace

from . import _graph

logger = logging.getLogger(__name__)

KERNEL_NAMES = (
    "dijkstra",
    "lasso_search",
    "bfs_hops",
    "flood_strips",
    "face_components",
    "vertex_components",
)

_backends = {}


def get_backend(name):
    """Return a namespace of kernels for ``name`` ("numba" or "numpy")."""
    if name in _backends:
        return _backends[name]
    if name == "numpy":
        ns = SimpleNamespace(
            name="numpy", **{k: getattr(_graph, k) for k in KERNEL_NAMES}
        )
    elif name == "numba":
        from numba import njit

        ns = SimpleNamespace(
            name="numba",
            **{
                k: njit(cache=True, nogil=True)(getattr(_graph, k))
                for k in KERNEL_NAMES
            },
        )
    else:
        raise ValueError(f"unknown kernel backend {name!r}")
    _backends[name] = ns
    return ns


def _select_default():
    requested = os.environ.get("MESHNECK_BACKEND", "").strip().lower()
    if requested == "numpy":
        return get_backend("numpy")
    if requested == "numba":
        return get_backend("numba")
    if requested:
        raise ValueError(
            f"MESHNECK_BACKEND={requested!r}: expected 'numba' or 'numpy'"
        )
    try:
        return get_backend("numba")
    except ImportError:
        logger.warning("numba unavailable, falling back to numpy kernels")
        return get_backend("numpy")


active = _select_default()
backend_name = active.name

dijkstra = active.dijkstra
lasso_search = active.lasso_search
bfs_hops = active.bfs_hops
flood_strips = active.flood_strips
face_components = active.face_components
vertex_components = active.vertex_components


def warmup():
    """Force JIT compilation of every kernel on a toy graph (no-op for the
    numpy backend).  Call before wall-clock measurements."""
    import numpy as np

    indptr = np.array([0, 2, 4, 6], dtype=np.int64)
    indices = np.array([1, 2, 0, 2, 0, 1], dtype=np.int64)
    weights = np.ones(6)
    src = np.array([0], dtype=np.int64)
    init = np.zeros(1)
    forb = np.zeros(3, dtype=np.uint8)
    no_targets = np.zeros(0, dtype=np.uint8)
    dijkstra(indptr, indices, weights, src, init, forb, no_targets)
    closing = np.full(3, np.inf)
    closing[2] = 1.0
    lasso_search(indptr, indices, weights, src, init, forb, closing)
    bfs_hops(indptr, indices, 0, 2)
    vertex_components(indptr, indices, forb)
    # two faces glued along shared edge 0
    face_adj = np.array([[1, -1, -1], [0, -1, -1]], dtype=np.int64)
    face_edge = np.zeros((2, 3), dtype=np.int64)
    blocked = np.zeros(1, dtype=np.uint8)
    face_components(face_adj, face_edge, blocked)
    flood_strips(
        face_adj,
        face_edge,
        blocked,
        np.array([0], dtype=np.int64),
        np.array([0], dtype=np.int64),
    )
