"""Triangulated surface mesh: adjacency, measures, validation.

The :class:`Mesh` is immutable after construction and safe to share across
worker threads.  Vertex indices everywhere are 0-based positions in input
order.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import MeshError

logger = logging.getLogger(__name__)


@dataclass
class ValidationReport:
    vertex_count: int
    edge_count: int
    face_count: int
    euler_characteristic: int
    is_manifold: bool
    is_connected: bool
    is_genus_zero: bool
    defects: list = field(default_factory=list)

    def summary(self):
        status = "genus-zero closed surface" if self.is_genus_zero else "REJECTED"
        head = (
            f"V={self.vertex_count} E={self.edge_count} F={self.face_count} "
            f"chi={self.euler_characteristic}: {status}"
        )
        if self.defects:
            head += "\n  " + "\n  ".join(self.defects)
        return head


class Mesh:
    """Immutable triangle mesh with cyclically ordered vertex adjacency.

    Parameters
    ----------
    vertices : (V, 3) float array, model units.
    faces : (F, 3) int array of vertex indices; a globally consistent
        winding is expected and checked.

    Notes
    -----
    Construction precomputes, as locked numpy arrays:

    - CSR vertex adjacency (``adj_indptr``, ``adj_indices``) whose per-vertex
      slice is in rotational order around the vertex, consistent with face
      orientation, plus parallel edge lengths (``adj_weights``) and edge ids
      (``adj_edge_ids``);
    - the unique edge table ``edges`` (E, 2) with ``edge_lengths``, and
      ``edge_faces`` (E, 2) = (face containing directed (a, b), face
      containing (b, a)) for the canonical a < b orientation;
    - per-face areas and the face dual graph ``face_adj`` / ``face_edge_ids``.

    Topological defects (boundary edges, non-manifold fans, inconsistent
    winding) are recorded rather than raised so that :func:`validate` can
    report them; zero-length edges are a hard error because they break
    shortest-path tie-breaking.
    """

    def __init__(self, vertices, faces):
        vertices = np.ascontiguousarray(vertices, dtype=np.float64)
        faces = np.ascontiguousarray(faces, dtype=np.int64)
        if vertices.ndim != 2 or vertices.shape[1] != 3:
            raise MeshError("vertices must be an (V, 3) array")
        if faces.ndim != 2 or faces.shape[1] != 3:
            raise MeshError("faces must be an (F, 3) array of vertex triples")
        n_verts = vertices.shape[0]
        if faces.size and (faces.min() < 0 or faces.max() >= n_verts):
            raise MeshError("face refers to an out-of-range vertex index")
        if ((faces[:, 0] == faces[:, 1]) | (faces[:, 1] == faces[:, 2])
                | (faces[:, 2] == faces[:, 0])).any():
            raise MeshError("face with a repeated vertex")

        self.vertices = vertices
        self.faces = faces
        self._defects = []

        self._build_edges()
        self._build_face_geometry()
        self._build_adjacency()
        self._build_dual()

        for arr in (
            self.vertices, self.faces, self.edges, self.edge_lengths,
            self.face_areas, self.adj_indptr, self.adj_indices,
            self.adj_weights, self.adj_edge_ids, self.face_adj,
            self.face_edge_ids, self.edge_faces,
        ):
            arr.flags.writeable = False

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    def _build_edges(self):
        f = self.faces
        directed = np.concatenate([f[:, [0, 1]], f[:, [1, 2]], f[:, [2, 0]]])
        und = np.sort(directed, axis=1)
        edges, inverse, counts = np.unique(
            und, axis=0, return_inverse=True, return_counts=True
        )
        self.edges = edges
        self._directed_edge_id = inverse  # slot k*F+f -> edge id
        n_bad = int((counts != 2).sum())
        if n_bad:
            n_boundary = int((counts == 1).sum())
            if n_boundary:
                self._defects.append(
                    f"{n_boundary} boundary edge(s): surface is not closed"
                )
            if n_bad > n_boundary:
                self._defects.append(
                    f"{n_bad - n_boundary} non-manifold edge(s) "
                    "(shared by more than two faces)"
                )
        self._edge_manifold = n_bad == 0

        vec = self.vertices[edges[:, 1]] - self.vertices[edges[:, 0]]
        self.edge_lengths = np.linalg.norm(vec, axis=1)
        if (self.edge_lengths == 0.0).any():
            raise MeshError("zero-length edge")

        # winding consistency: each undirected edge must occur once per
        # direction.  Count "canonical direction" occurrences per edge.
        forward = directed[:, 0] < directed[:, 1]
        fwd_count = np.bincount(inverse[forward], minlength=len(edges))
        occ = counts
        consistent = (occ != 2) | (fwd_count == 1)
        self._oriented = bool(consistent.all())
        if not self._oriented:
            self._defects.append(
                f"{int((~consistent).sum())} edge(s) with inconsistent face winding"
            )

    def _build_face_geometry(self):
        v = self.vertices
        f = self.faces
        cross = np.cross(v[f[:, 1]] - v[f[:, 0]], v[f[:, 2]] - v[f[:, 0]])
        self.face_areas = 0.5 * np.linalg.norm(cross, axis=1)
        n_degenerate = int((self.face_areas == 0.0).sum())
        if n_degenerate:
            self._defects.append(f"{n_degenerate} zero-area (degenerate) face(s)")
            logger.warning("mesh has %d degenerate faces", n_degenerate)
        self.total_area = math.fsum(self.face_areas.tolist())

    def _build_adjacency(self):
        n = self.vertices.shape[0]
        faces = self.faces.tolist()
        succ = [dict() for _ in range(n)]
        ok = self._edge_manifold and self._oriented
        for a, b, c in faces:
            for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
                if y in succ[x]:
                    ok = False
                succ[x][y] = z

        # ground-truth neighbor sets from the edge table; the successor
        # chains above may be lossy on non-manifold input
        nbr_sets = [set() for _ in range(n)]
        for a, b in self.edges.tolist():
            nbr_sets[a].add(b)
            nbr_sets[b].add(a)

        indptr = np.zeros(n + 1, dtype=np.int64)
        order = []
        cyclic_ok = ok
        broken_fans = 0
        for v in range(n):
            nbrs = nbr_sets[v]
            if not nbrs:
                indptr[v + 1] = indptr[v]
                continue
            ring = []
            if ok:
                chain = succ[v]
                starts = set(chain) - set(chain.values())
                start = min(starts) if starts else min(chain)
                cur = start
                while cur in chain and len(ring) < len(chain):
                    ring.append(cur)
                    cur = chain[cur]
                if len(ring) != len(nbrs) or (not starts and cur != start):
                    cyclic_ok = False
                    broken_fans += 1
                    ring = sorted(nbrs)
            else:
                ring = sorted(nbrs)
            order.extend(ring)
            indptr[v + 1] = indptr[v] + len(ring)

        if broken_fans:
            self._defects.append(
                f"{broken_fans} vertex fan(s) do not close into a single cycle"
            )
        self._vertex_manifold = cyclic_ok

        self.adj_indptr = indptr
        self.adj_indices = np.array(order, dtype=np.int64)
        owners = np.repeat(np.arange(n, dtype=np.int64), np.diff(indptr))
        vec = self.vertices[self.adj_indices] - self.vertices[owners]
        self.adj_weights = np.linalg.norm(vec, axis=1)

        edge_key = {}
        for eid, (a, b) in enumerate(self.edges.tolist()):
            edge_key[(a, b)] = eid
        adj_eids = np.empty(len(order), dtype=np.int64)
        owners_list = owners.tolist()
        for k, nb in enumerate(order):
            a = owners_list[k]
            adj_eids[k] = edge_key[(a, nb) if a < nb else (nb, a)]
        self.adj_edge_ids = adj_eids
        self._edge_key = edge_key

    def _build_dual(self):
        n_faces = self.faces.shape[0]
        n_edges = self.edges.shape[0]
        face_adj = np.full((n_faces, 3), -1, dtype=np.int64)
        face_eids = np.empty((n_faces, 3), dtype=np.int64)
        edge_faces = np.full((n_edges, 2), -1, dtype=np.int64)
        dir_ids = self._directed_edge_id
        faces = self.faces
        # slot k of face f is the directed edge (faces[f,k], faces[f,(k+1)%3])
        for k in range(3):
            block = dir_ids[k * n_faces:(k + 1) * n_faces]
            face_eids[:, k] = block
            a = faces[:, k]
            b = faces[:, (k + 1) % 3]
            fwd = a < b
            edge_faces[block[fwd], 0] = np.nonzero(fwd)[0]
            edge_faces[block[~fwd], 1] = np.nonzero(~fwd)[0]
        # neighbor across each slot: the other face of that edge
        for k in range(3):
            eids = face_eids[:, k]
            both = edge_faces[eids]
            here = np.arange(n_faces)
            other = np.where(both[:, 0] == here, both[:, 1], both[:, 0])
            face_adj[:, k] = other
        self.face_adj = face_adj
        self.face_edge_ids = face_eids
        self.edge_faces = edge_faces
        del self._directed_edge_id

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------

    @property
    def n_vertices(self):
        return self.vertices.shape[0]

    @property
    def n_edges(self):
        return self.edges.shape[0]

    @property
    def n_faces(self):
        return self.faces.shape[0]

    def degree(self, v):
        return int(self.adj_indptr[v + 1] - self.adj_indptr[v])

    def cyclic_neighbors(self, v):
        """Neighbors of ``v`` in rotational order around ``v``."""
        if not 0 <= v < self.n_vertices:
            raise IndexError(f"vertex index {v} out of range")
        return self.adj_indices[self.adj_indptr[v]:self.adj_indptr[v + 1]]

    def face_area(self, face):
        if not 0 <= face < self.n_faces:
            raise IndexError(f"face index {face} out of range")
        return float(self.face_areas[face])

    def edge_id(self, a, b):
        """Edge id of the undirected edge (a, b); KeyError if absent."""
        return self._edge_key[(a, b) if a < b else (b, a)]

    def loop_edge_ids(self, loop):
        """Edge ids traversed by a closed vertex loop (last connects to first)."""
        loop = [int(v) for v in loop]
        key = self._edge_key
        out = np.empty(len(loop), dtype=np.int64)
        for i, a in enumerate(loop):
            b = loop[(i + 1) % len(loop)]
            out[i] = key[(a, b) if a < b else (b, a)]
        return out

    def path_edge_ids(self, path):
        """Edge ids traversed by an open vertex walk."""
        path = [int(v) for v in path]
        key = self._edge_key
        out = np.empty(max(len(path) - 1, 0), dtype=np.int64)
        for i in range(len(path) - 1):
            a, b = path[i], path[i + 1]
            out[i] = key[(a, b) if a < b else (b, a)]
        return out


def validate(mesh):
    """Structural report for a mesh; never raises.

    ``is_genus_zero`` is equivalent to manifold and connected and Euler
    characteristic 2, which is what every pipeline entry point requires.
    """
    n_v, n_e, n_f = mesh.n_vertices, mesh.n_edges, mesh.n_faces
    euler = n_v - n_e + n_f
    defects = list(mesh._defects)

    removed = np.zeros(n_v, dtype=np.uint8)
    _, n_comp = kernels.vertex_components(
        mesh.adj_indptr, mesh.adj_indices, removed
    )
    is_connected = int(n_comp) == 1
    if not is_connected:
        defects.append(f"{int(n_comp)} connected components")

    is_manifold = mesh._edge_manifold and mesh._oriented and mesh._vertex_manifold
    is_genus_zero = is_manifold and is_connected and euler == 2
    if is_manifold and is_connected and euler != 2:
        defects.append(f"Euler characteristic {euler} != 2 (genus > 0)")

    return ValidationReport(
        vertex_count=n_v,
        edge_count=n_e,
        face_count=n_f,
        euler_characteristic=euler,
        is_manifold=is_manifold,
        is_connected=is_connected,
        is_genus_zero=is_genus_zero,
        defects=defects,
    )
