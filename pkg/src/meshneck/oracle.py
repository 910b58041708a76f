"""Brute-force references: direct flood-fill areas, exhaustive small-mesh
cycle search, and the sleeve-verified collar search.

Everything here trades speed for independence from the pipeline's prefix-sum
and skeleton machinery, so results can be diffed against it.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .cycles import Cycle, lasso_at
from .errors import MeshError, SeparationError
from .paths import approx_diameter, shortest_path
from .tightness import TightnessRecord


def region_area_floodfill(mesh, cycle_or_loop):
    """Areas of the two regions bounded by a vertex loop.

    Direct dual-graph flood fill with the loop edges blocked; raises
    :class:`SeparationError` unless exactly two components result.  Returns
    (area_a, area_b, labels) with side a = the component of face 0.
    """
    loop = getattr(cycle_or_loop, "vertices", cycle_or_loop)
    eids = mesh.loop_edge_ids(loop)
    if len(set(eids.tolist())) != len(eids):
        raise SeparationError("walk repeats an edge; not a simple loop")
    blocked = np.zeros(mesh.n_edges, dtype=np.uint8)
    blocked[eids] = 1
    labels, n_comp = kernels.face_components(
        mesh.face_adj, mesh.face_edge_ids, blocked
    )
    if int(n_comp) != 2:
        raise SeparationError(
            f"loop splits the surface into {int(n_comp)} regions, expected 2"
        )
    areas = mesh.face_areas
    area_a = math.fsum(areas[np.nonzero(labels == 0)[0]].tolist())
    area_b = math.fsum(areas[np.nonzero(labels == 1)[0]].tolist())
    return area_a, area_b, labels


def side_area_of(mesh, cycle_or_loop, face):
    """Flood-fill area of the side containing ``face``."""
    area_a, area_b, labels = region_area_floodfill(mesh, cycle_or_loop)
    return area_a if labels[face] == 0 else area_b


def loop_tightness(mesh, loop):
    """Tightness of an explicit vertex loop via flood fill, or None if the
    loop does not separate."""
    try:
        area_a, area_b, _ = region_area_floodfill(mesh, loop)
    except SeparationError:
        return None
    length = float(
        math.fsum(mesh.edge_lengths[mesh.loop_edge_ids(loop)].tolist())
    )
    return min(area_a, area_b) / (length * length)


@dataclass
class OracleResult:
    record: TightnessRecord
    complete: bool  # enumeration finished / sleeve verified
    evaluated: int = 0


def _record_for_loop(mesh, loop, tightness):
    loop = np.asarray(loop, dtype=np.int64)
    length = float(
        math.fsum(mesh.edge_lengths[mesh.loop_edge_ids(loop)].tolist())
    )
    area_a, area_b, _ = region_area_floodfill(mesh, loop)
    cyc = Cycle(
        base_vertex=int(loop.min()),
        base_path_id=-1,
        position=-1,
        vertices=loop,
        length=length,
    )
    return TightnessRecord(
        cycle=cyc,
        area_side_u=area_a,
        area_side_other=area_b,
        tightness=float(tightness),
    )


def brute_force_best_cycle(mesh, max_cycle_edges, node_budget=5_000_000):
    """Maximum-tightness edge-simple separating cycle, by enumeration.

    Canonical DFS (cycles start at their minimum vertex, orientation fixed
    by second-vs-last comparison) over all simple cycles with at most
    ``max_cycle_edges`` edges, with two admissible prunes: a partial walk
    longer than the current search cap dies, and the cap shrinks as better
    cycles are found since tightness <= (total_area/2) / length**2.  Length
    caps grow geometrically so short high-tightness cycles are found before
    long walks are explored.  ``complete`` is False if ``node_budget`` DFS
    expansions were exhausted.
    """
    n = mesh.n_vertices
    if n > 300:
        raise MeshError("brute force is desk-scale only (<= 300 vertices)")
    half_area = mesh.total_area / 2.0
    pos = mesh.vertices
    indptr = mesh.adj_indptr
    nbrs = mesh.adj_indices
    wts = mesh.adj_weights

    # start vertices ordered by shortest incident edge: tight necks live
    # where edges are short, and an early good cycle prunes everything else
    min_inc = np.full(n, np.inf)
    for v in range(n):
        seg = wts[indptr[v]:indptr[v + 1]]
        if len(seg):
            min_inc[v] = seg.min()
    start_order = sorted(range(n), key=lambda v: (min_inc[v], v))

    best_t = -1.0
    best_loop = None
    evaluated = 0
    expansions = 0
    complete = True

    min_len = float(mesh.edge_lengths.min())
    max_len = float(mesh.edge_lengths.max()) * max_cycle_edges
    on_path = np.zeros(n, dtype=bool)

    def evaluate(loop, length):
        nonlocal best_t, best_loop, evaluated
        evaluated += 1
        t = loop_tightness_fast(loop, length)
        if t is not None and t > best_t:
            best_t = t
            best_loop = list(loop)

    def loop_tightness_fast(loop, length):
        if half_area / (length * length) <= best_t:
            return None
        eids = mesh.loop_edge_ids(loop)
        if len(set(eids.tolist())) != len(eids):
            return None
        blocked = np.zeros(mesh.n_edges, dtype=np.uint8)
        blocked[eids] = 1
        labels, n_comp = kernels.face_components(
            mesh.face_adj, mesh.face_edge_ids, blocked
        )
        if int(n_comp) != 2:
            return None
        areas = mesh.face_areas
        area_a = math.fsum(areas[np.nonzero(labels == 0)[0]].tolist())
        return min(area_a, mesh.total_area - area_a) / (length * length)

    cap = 3.0 * min_len
    prev_cap = 0.0
    while True:
        for s in start_order:
            if expansions > node_budget:
                complete = False
                break
            path = []

            def dfs(v, length, depth):
                nonlocal expansions, complete
                if expansions > node_budget:
                    complete = False
                    return
                expansions += 1
                path.append(v)
                on_path[v] = True
                for e in range(indptr[v], indptr[v + 1]):
                    w = int(nbrs[e])
                    step = wts[e]
                    total = length + step
                    if w == s:
                        if depth >= 2 and path[1] < v:
                            if prev_cap < total <= cap:
                                if half_area / (total * total) > best_t:
                                    evaluate(path, total)
                        continue
                    if w < s or on_path[w] or depth + 2 > max_cycle_edges:
                        continue
                    ret = float(np.linalg.norm(pos[w] - pos[s]))
                    lb = total + ret
                    if lb > cap:
                        continue
                    if best_t > 0 and half_area / (lb * lb) <= best_t:
                        continue
                    dfs(w, total, depth + 1)
                path.pop()
                on_path[v] = False

            dfs(s, 0.0, 0)
        if not complete:
            break
        # stop once nothing longer can beat the best found so far
        if best_t > 0 and half_area / (cap * cap) <= best_t:
            break
        if cap >= max_len:
            break
        prev_cap = cap
        cap = min(cap * 2.0, max_len)

    if best_loop is None:
        return OracleResult(record=None, complete=complete, evaluated=evaluated)
    return OracleResult(
        record=_record_for_loop(mesh, best_loop, best_t),
        complete=complete,
        evaluated=evaluated,
    )


def euler_characteristic_of_faces(mesh, face_indices):
    """V - E + F over a face subset (with multiplicity-free V and E)."""
    faces = mesh.faces[face_indices]
    n_v = len(np.unique(faces))
    eids = np.unique(mesh.face_edge_ids[face_indices])
    return int(n_v - len(eids) + len(face_indices))


def _sleeve_between(mesh, path_verts, cyc_a, cyc_b):
    """Faces strictly between two non-crossing loops of the same path, or
    None when the region is not an annulus bounded by exactly those loops."""
    eids_a = cyc_a.edge_ids(mesh)
    eids_b = cyc_b.edge_ids(mesh)
    blocked = np.zeros(mesh.n_edges, dtype=np.uint8)
    blocked[eids_a] = 1
    blocked[eids_b] = 1
    seed_faces = []
    seed_labels = []
    bounds = [0, cyc_a.position, cyc_b.position, len(path_verts) - 1]
    for r in range(3):
        for k in range(bounds[r], bounds[r + 1]):
            eid = mesh.edge_id(int(path_verts[k]), int(path_verts[k + 1]))
            for f in mesh.edge_faces[eid]:
                if f >= 0:
                    seed_faces.append(int(f))
                    seed_labels.append(r)
    labels, status, _ = kernels.flood_strips(
        mesh.face_adj,
        mesh.face_edge_ids,
        blocked,
        np.array(seed_faces, dtype=np.int64),
        np.array(seed_labels, dtype=np.int64),
    )
    if status != 0 or (labels == -1).any():
        return None
    sleeve = np.nonzero(labels == 1)[0]
    if len(sleeve) == 0:
        return None
    if euler_characteristic_of_faces(mesh, sleeve) != 0:
        return None
    # boundary edges (one incident face inside) must all lie on the loops
    inside = np.zeros(mesh.n_faces + 1, dtype=bool)
    inside[sleeve] = True
    barrier = set(eids_a.tolist()) | set(eids_b.tolist())
    for eid in np.unique(mesh.face_edge_ids[sleeve]):
        fa, fb = mesh.edge_faces[eid]
        if inside[fa] != inside[fb] and int(eid) not in barrier:
            return None
    return sleeve


def exhaustive_collar(mesh, budget=8, rng_seed=0, max_window=3):
    """Best verified lasso over sampled shortest paths.

    Implements the polynomial scheme at desk scale: sample (s, t) endpoint
    pairs (the approximate diametrical pair first, then seeded random
    pairs), take the shortest path, build the lasso at every interior
    vertex, and score a position only when a surrounding pair of lassos
    bounds a genuine sleeve (Euler characteristic 0, boundary covered by
    the two loops).  Falls back to the best unverified lasso with
    ``complete=False`` when no sleeve exists within budget.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    rng = np.random.default_rng(rng_seed)
    u, v, _ = approx_diameter(mesh)
    pairs = [(u, v)]
    while len(pairs) < budget:
        s, t = rng.integers(0, mesh.n_vertices, size=2)
        if s != t:
            pairs.append((int(s), int(t)))

    best_verified = None  # (tightness, loop)
    best_any = None
    evaluated = 0
    for s, t in pairs:
        path = shortest_path(mesh, s, t)
        if path is None or len(path.vertices) < 5:
            continue
        interior = range(1, len(path.vertices) - 1)
        lassos = {}
        tight = {}
        for p in interior:
            cyc = lasso_at(mesh, path, p)
            if cyc is None:
                continue
            lassos[p] = cyc
            t_val = loop_tightness(mesh, cyc.vertices)
            if t_val is None:
                continue
            tight[p] = t_val
            evaluated += 1
            if best_any is None or t_val > best_any[0]:
                best_any = (t_val, cyc.vertices)
        for p in sorted(tight, key=lambda q: -tight[q]):
            if best_verified is not None and tight[p] <= best_verified[0]:
                break
            ok = False
            for w in range(1, max_window + 1):
                i, j = p - w, p + w
                if i not in lassos or j not in lassos:
                    continue
                sleeve = _sleeve_between(
                    mesh, path.vertices, lassos[i], lassos[j]
                )
                if sleeve is not None:
                    ok = True
                    break
            if ok:
                if best_verified is None or tight[p] > best_verified[0]:
                    best_verified = (tight[p], lassos[p].vertices)
                break

    if best_verified is not None:
        t_val, loop = best_verified
        return OracleResult(
            record=_record_for_loop(mesh, loop, t_val),
            complete=True,
            evaluated=evaluated,
        )
    if best_any is not None:
        t_val, loop = best_any
        return OracleResult(
            record=_record_for_loop(mesh, loop, t_val),
            complete=False,
            evaluated=evaluated,
        )
    return OracleResult(record=None, complete=False, evaluated=evaluated)
