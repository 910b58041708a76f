"""Loop ("lasso") generation along skeleton paths.

For an interior vertex v of a base path, the two path edges at v split v's
rotational neighbor fan into two arcs.  The loop through v is the shortest
connection from one arc to the other that avoids every path vertex, closed
by the two fan edges at v; forbidding the path vertices is what keeps the
loop from crossing the path.  Loops generated from the same path are
mutually non-crossing (tested, not assumed).
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .paths import walk_to_root


@dataclass
class Cycle:
    """Closed edge-simple vertex loop anchored at a base-path vertex.

    ``vertices`` stores the loop without repeating the first vertex; only
    ``base_vertex`` lies on the generating path.  ``satisfies_lasso_bound``
    records whether the loop is shorter than the far path endpoint distance
    (diagnostic only; the search does not enforce it).
    """

    base_vertex: int
    base_path_id: int
    position: int
    vertices: np.ndarray
    length: float
    satisfies_lasso_bound: bool = False

    def edge_ids(self, mesh):
        return mesh.loop_edge_ids(self.vertices)


@dataclass
class CycleFamily:
    path_id: int
    path: object  # PathOnMesh
    cycles: list
    skipped_positions: list


def _fan_arcs(mesh, v, p_prev, p_next):
    """Split v's cyclic neighbor fan at the two path edges.

    Returns (arc_a, arc_b, weights_a, weights_b): arc_a follows p_next in
    rotational order, arc_b follows p_prev; the weight arrays carry the
    closing edge lengths v->neighbor.
    """
    lo = mesh.adj_indptr[v]
    hi = mesh.adj_indptr[v + 1]
    ring = mesh.adj_indices[lo:hi]
    wts = mesh.adj_weights[lo:hi]
    deg = hi - lo
    i_prev = i_next = -1
    for k in range(deg):
        if ring[k] == p_prev:
            i_prev = k
        elif ring[k] == p_next:
            i_next = k
    if i_prev < 0 or i_next < 0:
        raise ValueError("path vertices are not mesh-adjacent")
    arc_a, wts_a = [], []
    k = (i_next + 1) % deg
    while k != i_prev:
        arc_a.append(int(ring[k]))
        wts_a.append(float(wts[k]))
        k = (k + 1) % deg
    arc_b, wts_b = [], []
    k = (i_prev + 1) % deg
    while k != i_next:
        arc_b.append(int(ring[k]))
        wts_b.append(float(wts[k]))
        k = (k + 1) % deg
    return arc_a, arc_b, wts_a, wts_b


def _path_mask_and_cumlen(mesh, path):
    mask = np.zeros(mesh.n_vertices, dtype=np.uint8)
    mask[path.vertices] = 1
    deltas = np.linalg.norm(
        np.diff(mesh.vertices[path.vertices], axis=0), axis=1
    )
    cum = np.concatenate([[0.0], np.cumsum(deltas)])
    return mask, cum


def lasso_at(mesh, path, v_pos, path_id=-1, _mask=None, _cum=None):
    """Shortest loop through path vertex ``v_pos`` around the path, or None.

    ``v_pos`` must be an interior position.  Returns None when one fan arc
    is empty (e.g. next to a cap tip) or the two arcs are disconnected once
    all path vertices are forbidden.
    """
    verts = path.vertices
    if not 0 < v_pos < len(verts) - 1:
        raise ValueError("v_pos must be an interior position of the path")
    if _mask is None:
        _mask, _cum = _path_mask_and_cumlen(mesh, path)
    v = int(verts[v_pos])
    p_prev = int(verts[v_pos - 1])
    p_next = int(verts[v_pos + 1])
    arc_a, arc_b, wts_a, wts_b = _fan_arcs(mesh, v, p_prev, p_next)

    sources, init = [], []
    for x, w in zip(arc_a, wts_a):
        if not _mask[x]:
            sources.append(x)
            init.append(w)
    closing = np.full(mesh.n_vertices, np.inf)
    any_target = False
    for y, w in zip(arc_b, wts_b):
        if not _mask[y]:
            closing[y] = w
            any_target = True
    if not sources or not any_target:
        return None

    dist, parent, best_v, best_total = kernels.lasso_search(
        mesh.adj_indptr,
        mesh.adj_indices,
        mesh.adj_weights,
        np.array(sources, dtype=np.int64),
        np.array(init),
        _mask,
        closing,
    )
    if best_v < 0:
        return None
    arc = walk_to_root(parent, best_v)  # best_v ... source x
    arc.reverse()
    loop = np.array([v] + arc, dtype=np.int64)
    d_start = float(_cum[v_pos])
    d_end = float(_cum[-1] - _cum[v_pos])
    return Cycle(
        base_vertex=v,
        base_path_id=path_id,
        position=int(v_pos),
        vertices=loop,
        length=float(best_total),
        satisfies_lasso_bound=bool(best_total < max(d_start, d_end)),
    )


def cycles_along_path(mesh, path, path_id=0):
    """Ordered loop family for every interior position of ``path``."""
    if len(path.vertices) < 3:
        raise ValueError("path must have at least 3 vertices")
    mask, cum = _path_mask_and_cumlen(mesh, path)
    cycles = []
    skipped = []
    for pos in range(1, len(path.vertices) - 1):
        cyc = lasso_at(mesh, path, pos, path_id=path_id, _mask=mask, _cum=cum)
        if cyc is None:
            skipped.append(pos)
        else:
            cycles.append(cyc)
    return CycleFamily(
        path_id=path_id, path=path, cycles=cycles, skipped_positions=skipped
    )


def cycles_cross(mesh, cyc_a, cyc_b):
    """Transversal-crossing test for two loops.

    Removing loop A's vertices must leave loop B's remaining vertices in a
    single connected component (loops may touch, not cross).  Symmetric
    check under exchange is the caller's choice; crossing is symmetric in
    practice and tests check both orders.
    """
    removed = np.zeros(mesh.n_vertices, dtype=np.uint8)
    removed[cyc_a.vertices] = 1
    b_rest = [int(x) for x in cyc_b.vertices if not removed[x]]
    if not b_rest:
        return False
    labels, _ = kernels.vertex_components(
        mesh.adj_indptr, mesh.adj_indices, removed
    )
    comps = {int(labels[x]) for x in b_rest}
    return len(comps) > 1


def family_to_json(family):
    return {
        "path_id": int(family.path_id),
        "path_vertices": [int(v) for v in family.path.vertices],
        "skipped_positions": [int(p) for p in family.skipped_positions],
        "cycles": [
            {
                "position": int(c.position),
                "base_vertex": int(c.base_vertex),
                "vertices": [int(v) for v in c.vertices],
                "length": float(c.length),
                "satisfies_lasso_bound": bool(c.satisfies_lasso_bound),
            }
            for c in family.cycles
        ],
    }
