"""Skeleton of shortest paths spanning the salient points.

Two builders: the default greedy variant connects salient points in their
stored order to the nearest vertex of the skeleton built so far; the Prim
variant always attaches the globally nearest remaining point, which bounds
its total weight by the metric-closure MST (hence 2x the optimal Steiner
tree).  Both produce a tree of :class:`PathOnMesh` objects whose first path
connects the diametrical pair.
"""

from dataclasses import dataclass

import numpy as np

from .errors import MeshError
from .paths import PathOnMesh, multi_source_search, shortest_path, walk_to_root


@dataclass
class Skeleton:
    paths: list
    attach_order: list  # (salient vertex, attachment vertex) pairs
    covered_vertices: set

    @property
    def total_length(self):
        return float(sum(p.length for p in self.paths))


def _attach(mesh, covered, tip):
    """Shortest path from the current skeleton to ``tip``.

    A multi-source search seeded on every skeleton vertex touches the
    skeleton exactly at the claiming root, so the returned path needs no
    truncation to keep the union a tree.
    """
    dist, parent, hit = multi_source_search(
        mesh, sorted(covered), targets=(tip,)
    )
    if hit != tip:
        return None
    chain = walk_to_root(parent, tip)  # tip ... attachment root
    chain.reverse()
    return PathOnMesh(np.array(chain, dtype=np.int64), float(dist[tip]))


def build_skeleton_greedy(mesh, u, v, salient):
    """Skeleton rooted at the u-v shortest path; remaining salient points
    attach in the set's stored order (descending distance from u)."""
    first = shortest_path(mesh, u, v)
    if first is None:
        raise MeshError("diametrical pair is disconnected")
    paths = [first]
    covered = set(int(x) for x in first.vertices)
    attach_order = [(int(v), int(u))]
    for s in salient.points:
        s = int(s)
        if s in covered:
            continue
        branch = _attach(mesh, covered, s)
        if branch is None:
            continue
        paths.append(branch)
        attach_order.append((s, int(branch.vertices[0])))
        covered.update(int(x) for x in branch.vertices)
    return Skeleton(paths=paths, attach_order=attach_order,
                    covered_vertices=covered)


def build_skeleton_prim(mesh, salient):
    """Prim-style skeleton over the salient set.

    Each iteration runs one multi-source search from the whole tree and
    attaches the nearest remaining salient point, so the tree is never
    heavier than the MST of the pairwise-graph-distance complete graph.
    """
    terminals = [int(p) for p in salient.points]
    if len(terminals) < 2:
        raise MeshError("need at least two salient points")
    covered = {terminals[0]}
    remaining = set(terminals[1:])
    paths = []
    attach_order = []
    while remaining:
        dist, parent, hit = multi_source_search(
            mesh, sorted(covered), targets=remaining
        )
        if hit < 0:
            raise MeshError("salient point unreachable from skeleton")
        chain = walk_to_root(parent, hit)
        chain.reverse()
        branch = PathOnMesh(np.array(chain, dtype=np.int64), float(dist[hit]))
        paths.append(branch)
        attach_order.append((hit, int(branch.vertices[0])))
        covered.update(int(x) for x in branch.vertices)
        remaining.discard(hit)
    return Skeleton(paths=paths, attach_order=attach_order,
                    covered_vertices=covered)


def skeleton_to_json(skel):
    return {
        "paths": [
            {"vertices": [int(v) for v in p.vertices], "length": float(p.length)}
            for p in skel.paths
        ],
        "attach_order": [[int(a), int(b)] for a, b in skel.attach_order],
        "total_length": skel.total_length,
    }
