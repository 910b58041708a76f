"""Tightness scoring and neck-cut selection.

Side areas come from inter-loop strips: one labeled dual-graph BFS, blocked
by every loop edge in the family and seeded from the faces along the base
path, splits the surface into the end caps and the strips between
consecutive loops; prefix sums then give each loop's side area.  Tightness
is min(side areas) / length**2, the isoperimetric score; cuts are threshold
survivors that are windowed local maxima within their family.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import SeparationError


@dataclass
class TightnessRecord:
    cycle: object  # cycles.Cycle
    area_side_u: float
    area_side_other: float
    tightness: float


@dataclass
class NeckCut:
    record: TightnessRecord
    rank: int
    window: int


SPHERE_BASELINE = 1.0 / (2.0 * math.pi)  # hemisphere cut tightness


def default_threshold(epsilon=0.15):
    """Selection threshold: the sphere baseline minus a discretization
    tolerance."""
    return SPHERE_BASELINE * (1.0 - epsilon)


def _resolve_pockets(mesh, labels, blocked, cycle_edge_sets, strip_of_pocket):
    """Assign faces no seed could reach (loops pinching off pockets).

    A pocket bounded by loops i-1 and i belongs to strip i; one bounded by a
    single loop sits just past it, on the side opposite its labeled
    neighbor.  Iterates until stable; leftover faces mean the family does
    not partition the surface.
    """
    n_faces = mesh.n_faces
    face_edge = mesh.face_edge_ids
    face_adj = mesh.face_adj
    edge_owner = {}
    for ci, eids in enumerate(cycle_edge_sets):
        for e in eids:
            edge_owner.setdefault(int(e), set()).add(ci)

    progress = True
    while progress:
        progress = False
        unclaimed = np.nonzero(labels == -1)[0]
        if len(unclaimed) == 0:
            return
        seen = set()
        for f0 in unclaimed:
            f0 = int(f0)
            if f0 in seen or labels[f0] != -1:
                continue
            comp = [f0]
            seen.add(f0)
            stack = [f0]
            bound_cycles = set()
            outside_labels = set()
            while stack:
                f = stack.pop()
                for k in range(3):
                    g = int(face_adj[f, k])
                    eid = int(face_edge[f, k])
                    if blocked[eid]:
                        bound_cycles.update(edge_owner.get(eid, ()))
                        if g >= 0 and labels[g] != -1:
                            outside_labels.add(int(labels[g]))
                        continue
                    if g >= 0 and labels[g] == -1 and g not in seen:
                        seen.add(g)
                        comp.append(g)
                        stack.append(g)
            label = strip_of_pocket(bound_cycles, outside_labels)
            if label is not None:
                for f in comp:
                    labels[f] = label
                progress = True
    if (labels == -1).any():
        raise SeparationError(
            "family loops do not partition the surface into strips"
        )


def strip_areas(mesh, family):
    """Areas of the regions delimited by a loop family along its path.

    Returns an array of m+1 strips for m loops: the cap before the first
    loop, each inter-loop strip, and the cap after the last loop.  Raises
    :class:`SeparationError` when the flood fill meets itself across loops
    (crossing loops) or faces remain unassignable.
    """
    cycles = family.cycles
    path_verts = [int(v) for v in family.path.vertices]
    if not cycles:
        return np.array([mesh.total_area])

    edge_sets = [c.edge_ids(mesh) for c in cycles]
    # collapse runs of identical loops: they bound zero-area strips and
    # would otherwise make seeding ambiguous
    uniq_idx = [0]
    for i in range(1, len(cycles)):
        prev = edge_sets[uniq_idx[-1]]
        cur = edge_sets[i]
        if len(prev) != len(cur) or set(prev.tolist()) != set(cur.tolist()):
            uniq_idx.append(i)
    dup_of = []  # for each cycle, its unique-barrier index
    u = -1
    for i in range(len(cycles)):
        if u + 1 < len(uniq_idx) and uniq_idx[u + 1] == i:
            u += 1
        dup_of.append(u)

    uniq_edge_sets = [edge_sets[i] for i in uniq_idx]
    blocked = np.zeros(mesh.n_edges, dtype=np.uint8)
    for eids in uniq_edge_sets:
        blocked[eids] = 1

    # seed label r with the faces flanking the path edges of segment r
    # (between the base vertices of unique loops r-1 and r)
    positions = [cycles[i].position for i in uniq_idx]
    bounds = [0] + positions + [len(path_verts) - 1]
    seed_faces = []
    seed_labels = []
    for r in range(len(positions) + 1):
        for k in range(bounds[r], bounds[r + 1]):
            eid = mesh.edge_id(path_verts[k], path_verts[k + 1])
            for f in mesh.edge_faces[eid]:
                if f >= 0:
                    seed_faces.append(int(f))
                    seed_labels.append(r)
    labels, status, where = kernels.flood_strips(
        mesh.face_adj,
        mesh.face_edge_ids,
        blocked,
        np.array(seed_faces, dtype=np.int64),
        np.array(seed_labels, dtype=np.int64),
    )
    labels = labels.copy()
    if status != 0:
        raise SeparationError(
            f"loop family strips leak into each other near face {int(where)}: "
            "loops cross or do not separate"
        )

    if (labels == -1).any():
        def strip_of_pocket(bound_cycles, outside_labels):
            if len(bound_cycles) == 2:
                lo, hi = sorted(bound_cycles)
                if hi == lo + 1:
                    return hi
                return None
            if len(bound_cycles) == 1 and outside_labels:
                (c,) = bound_cycles
                other = min(outside_labels)
                return c + 1 if other <= c else c
            return None

        _resolve_pockets(mesh, labels, blocked, uniq_edge_sets, strip_of_pocket)

    uniq_strips = []
    areas = mesh.face_areas
    for r in range(len(positions) + 1):
        members = np.nonzero(labels == r)[0]
        uniq_strips.append(math.fsum(areas[members].tolist()))

    # re-expand to one strip per original gap; duplicates contribute zero
    strips = [uniq_strips[0]]
    for i in range(1, len(cycles)):
        if dup_of[i] == dup_of[i - 1]:
            strips.append(0.0)
        else:
            strips.append(uniq_strips[dup_of[i]])
    strips.append(uniq_strips[-1])

    total = math.fsum(strips)
    if not math.isclose(total, mesh.total_area, rel_tol=1e-9):
        raise SeparationError(
            f"strip areas sum to {total!r}, expected {mesh.total_area!r}"
        )
    return np.array(strips)


def side_areas(strips):
    """Per-loop area on the path-start side: prefix sums of the strips."""
    strips = np.asarray(strips)
    return np.cumsum(strips[:-1])


def score(cycle, area_side_u, total_area):
    """Tightness of one loop given its path-start side area."""
    if cycle.length <= 0.0:
        raise ValueError("zero-length cycle")
    other = total_area - area_side_u
    tight = min(area_side_u, other) / (cycle.length * cycle.length)
    return TightnessRecord(
        cycle=cycle,
        area_side_u=float(area_side_u),
        area_side_other=float(other),
        tightness=float(tight),
    )


def score_family(mesh, family):
    """Strip areas + prefix sums + scores for a whole family."""
    strips = strip_areas(mesh, family)
    sides = side_areas(strips)
    records = [
        score(c, sides[i], mesh.total_area)
        for i, c in enumerate(family.cycles)
    ]
    return records, strips


def _same_loop(rec_a, rec_b):
    va = rec_a.cycle.vertices
    vb = rec_b.cycle.vertices
    return len(va) == len(vb) and set(va.tolist()) == set(vb.tolist())


def select_cuts(family_records, threshold, window):
    """Threshold + windowed-local-maximum selection.

    ``family_records`` is a list of per-family record lists (position
    order).  Within a family, a threshold survivor is kept when its
    tightness is maximal among survivors within ``window`` consecutive
    family positions (symmetric window, ties toward the lower position).
    Runs of identical loops collapse to their lowest-position member first,
    so a plateau counts as one maximum.  Returns cuts ranked globally by
    descending tightness.
    """
    if window < 1:
        raise ValueError("window must be >= 1")
    half = window // 2
    chosen = []
    for fam in family_records:
        survivors = [r for r in fam if r.tightness >= threshold]
        if not survivors:
            continue
        collapsed = [survivors[0]]
        for r in survivors[1:]:
            if not _same_loop(collapsed[-1], r):
                collapsed.append(r)
        for i, r in enumerate(collapsed):
            best = True
            for o in collapsed:
                if o is r or abs(o.cycle.position - r.cycle.position) > half:
                    continue
                if o.tightness > r.tightness or (
                    o.tightness == r.tightness
                    and o.cycle.position < r.cycle.position
                ):
                    best = False
                    break
            if best:
                chosen.append(r)
    chosen.sort(
        key=lambda r: (-r.tightness, r.cycle.base_path_id, r.cycle.position)
    )
    return [
        NeckCut(record=r, rank=i + 1, window=window)
        for i, r in enumerate(chosen)
    ]


def cut_to_json(cut):
    r = cut.record
    c = r.cycle
    return {
        "path_id": int(c.base_path_id),
        "position": int(c.position),
        "vertex_loop": [int(v) for v in c.vertices],
        "length": float(c.length),
        "area_min_side": float(min(r.area_side_u, r.area_side_other)),
        "area_other_side": float(max(r.area_side_u, r.area_side_other)),
        "tightness": float(r.tightness),
        "rank": int(cut.rank),
    }
