"""Shortest-path machinery over the mesh edge graph.

Distances are graph distances along mesh edges (Euclidean edge lengths), not
exact surface geodesics.  Ties between equal tentative distances are broken
toward the lower vertex index, both in the priority queue and in every
farthest-vertex argmax, which makes all searches deterministic across runs
and platforms.
"""

from dataclasses import dataclass, field

import numpy as np

from . import kernels

_NO_TARGETS = np.zeros(0, dtype=np.uint8)


@dataclass(frozen=True)
class PathOnMesh:
    """Simple walk along mesh edges: ordered vertices and summed length."""

    vertices: np.ndarray
    length: float

    def __len__(self):
        return len(self.vertices)

    def __post_init__(self):
        if self.vertices.flags.owndata:
            self.vertices.flags.writeable = False


@dataclass
class ShortestPathTree:
    source: int
    dist: np.ndarray
    parent: np.ndarray
    leaves: frozenset = field(default=None)

    def __post_init__(self):
        if self.leaves is None:
            reachable = np.isfinite(self.dist)
            has_child = np.zeros(len(self.dist), dtype=bool)
            kids = self.parent[self.parent >= 0]
            has_child[kids] = True
            self.leaves = frozenset(
                np.nonzero(reachable & ~has_child)[0].tolist()
            )


def _forbidden_mask(mesh, forbidden):
    mask = np.zeros(mesh.n_vertices, dtype=np.uint8)
    if forbidden is not None:
        idx = np.asarray(list(forbidden) if not isinstance(forbidden, np.ndarray)
                         else forbidden, dtype=np.int64)
        mask[idx] = 1
    return mask


def dijkstra(mesh, source, forbidden=None):
    """Exact shortest-path tree from ``source`` avoiding ``forbidden``."""
    if not 0 <= source < mesh.n_vertices:
        raise IndexError(f"source vertex {source} out of range")
    mask = _forbidden_mask(mesh, forbidden)
    if mask[source]:
        raise ValueError("source vertex is forbidden")
    dist, parent, _ = kernels.dijkstra(
        mesh.adj_indptr,
        mesh.adj_indices,
        mesh.adj_weights,
        np.array([source], dtype=np.int64),
        np.zeros(1),
        mask,
        _NO_TARGETS,
    )
    return ShortestPathTree(source=source, dist=dist, parent=parent)


def multi_source_search(mesh, sources, forbidden=None, targets=None):
    """Dijkstra from a seed set (all at distance 0).

    When ``targets`` is given, stops at the first settled target (the
    nearest by the deterministic order) and returns it as ``hit``.
    Returns (dist, parent, hit).
    """
    mask = _forbidden_mask(mesh, forbidden)
    src = np.asarray(sources, dtype=np.int64)
    tmask = _NO_TARGETS
    if targets is not None:
        tmask = np.zeros(mesh.n_vertices, dtype=np.uint8)
        tmask[np.asarray(list(targets), dtype=np.int64)] = 1
    dist, parent, hit = kernels.dijkstra(
        mesh.adj_indptr,
        mesh.adj_indices,
        mesh.adj_weights,
        src,
        np.zeros(len(src)),
        mask,
        tmask,
    )
    return dist, parent, int(hit)


def walk_to_root(parent, v):
    """Vertices from ``v`` back to its tree root (inclusive)."""
    chain = [int(v)]
    p = parent[v]
    while p >= 0:
        chain.append(int(p))
        p = parent[p]
    return chain


def _path_from_parents(mesh, parent, s, t, dist_t):
    chain = walk_to_root(parent, t)
    chain.reverse()
    if chain[0] != s:
        return None
    return PathOnMesh(np.array(chain, dtype=np.int64), float(dist_t))


def shortest_path(mesh, s, t, forbidden=None):
    """Exact shortest s-t path avoiding ``forbidden``, or None.

    The search terminates as soon as ``t`` is settled.
    """
    for v in (s, t):
        if not 0 <= v < mesh.n_vertices:
            raise IndexError(f"vertex {v} out of range")
    mask = _forbidden_mask(mesh, forbidden)
    if mask[s] or mask[t]:
        raise ValueError("endpoint vertex is forbidden")
    if s == t:
        return PathOnMesh(np.array([s], dtype=np.int64), 0.0)
    tmask = np.zeros(mesh.n_vertices, dtype=np.uint8)
    tmask[t] = 1
    dist, parent, hit = kernels.dijkstra(
        mesh.adj_indptr,
        mesh.adj_indices,
        mesh.adj_weights,
        np.array([s], dtype=np.int64),
        np.zeros(1),
        mask,
        tmask,
    )
    if hit != t:
        return None
    return _path_from_parents(mesh, parent, s, t, dist[t])


def farthest_vertex(dist):
    """Argmax of a distance field; ties resolve to the lowest index."""
    finite = np.where(np.isfinite(dist), dist, -np.inf)
    return int(np.argmax(finite))


def approx_diameter(mesh, seed=0):
    """Two-sweep diameter approximation.

    Returns (u, v, tree_u): u is the farthest vertex from ``seed``, v the
    farthest from u; dist_u(v) is at least half the true graph diameter.
    """
    tree_s = dijkstra(mesh, seed)
    u = farthest_vertex(tree_s.dist)
    tree_u = dijkstra(mesh, u)
    v = farthest_vertex(tree_u.dist)
    return u, v, tree_u
