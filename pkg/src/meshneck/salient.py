"""Salient points: local maxima of the distance field from the diameter
endpoint u, with hop-radius de-duplication.

A vertex x is a candidate when every mesh neighbor is strictly closer to u;
exact distance ties are resolved by vertex index (the lower index wins), so
plateau regions on symmetric meshes still contribute one representative and
the farthest vertex v is always a member.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels


@dataclass
class SalientSet:
    """Ordered salient vertices (descending distance from ``source_u``)."""

    points: list
    source_u: int
    r_filter: int


def _order(points, dist):
    return sorted(points, key=lambda p: (-dist[p], p))


def candidate_salient(mesh, tree_u):
    """All vertices that win the local-maximum comparison against each
    mesh neighbor (strict, index tie-break), in descending distance order."""
    dist = tree_u.dist
    indptr = mesh.adj_indptr
    nbrs = mesh.adj_indices
    owners = np.repeat(
        np.arange(mesh.n_vertices, dtype=np.int64), np.diff(indptr)
    )
    d_own = dist[owners]
    d_nbr = dist[nbrs]
    beaten = (d_nbr < d_own) | ((d_nbr == d_own) & (nbrs > owners))
    wins = np.ones(mesh.n_vertices, dtype=bool)
    if len(beaten):
        starts = np.minimum(indptr[:-1], len(beaten) - 1)
        np.logical_and.reduceat(beaten, starts, out=wins[: len(starts)])
    wins[np.diff(indptr) == 0] = False
    wins[~np.isfinite(dist)] = False
    wins[tree_u.source] = False
    points = _order(np.nonzero(wins)[0].tolist(), dist)
    return SalientSet(points=points, source_u=tree_u.source, r_filter=0)


def filter_salient(mesh, cands, tree_u, r):
    """Drop candidates that lose to another candidate within ``r`` hops.

    A candidate x survives iff every other candidate y in its r-hop BFS ball
    satisfies dist(y) < dist(x), or dist(y) == dist(x) with x < y.  Removal
    is evaluated against the full original candidate set (not sequentially),
    so the result is order-independent and shrinks monotonically with r.
    """
    if r < 0:
        raise ValueError("hop radius must be >= 0")
    dist = tree_u.dist
    if r == 0 or len(cands.points) <= 1:
        return SalientSet(
            points=_order(cands.points, dist),
            source_u=cands.source_u,
            r_filter=r,
        )
    is_cand = np.zeros(mesh.n_vertices, dtype=bool)
    is_cand[cands.points] = True
    survivors = []
    for x in cands.points:
        alive = True
        ball, count = kernels.bfs_hops(mesh.adj_indptr, mesh.adj_indices, x, r)
        for k in range(count):
            y = int(ball[k])
            if y == x or not is_cand[y]:
                continue
            if dist[y] > dist[x] or (dist[y] == dist[x] and y < x):
                alive = False
                break
        if alive:
            survivors.append(x)
    return SalientSet(
        points=_order(survivors, dist), source_u=cands.source_u, r_filter=r
    )


def salient_to_json(mesh, sset, tree_u):
    """JSON-friendly export: vertex index, position, distance from u."""
    return [
        {
            "vertex": int(p),
            "position": [float(c) for c in mesh.vertices[p]],
            "distance_from_u": float(tree_u.dist[p]),
        }
        for p in sset.points
    ]
