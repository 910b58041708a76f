"""Backend parity and kernel-level oracles."""

import numpy as np
import pytest

from meshneck import kernels, synthetic

NO_TARGETS = np.zeros(0, dtype=np.uint8)


def _csr(mesh):
    return mesh.adj_indptr, mesh.adj_indices, mesh.adj_weights


def bellman_ford(mesh, source, forbidden=frozenset()):
    """Independent relaxation oracle (edge list, no priority queue)."""
    n = mesh.n_vertices
    dist = np.full(n, np.inf)
    dist[source] = 0.0
    edges = mesh.edges.tolist()
    lens = mesh.edge_lengths.tolist()
    changed = True
    while changed:
        changed = False
        for (a, b), w in zip(edges, lens):
            if a in forbidden or b in forbidden:
                continue
            if dist[a] + w < dist[b]:
                dist[b] = dist[a] + w
                changed = True
            if dist[b] + w < dist[a]:
                dist[a] = dist[b] + w
                changed = True
    return dist


def test_dijkstra_matches_bellman_ford_oracle():
    mesh = synthetic.icosphere_frequency(10)  # 1002 vertices
    assert mesh.n_vertices == 1002
    forb = np.zeros(mesh.n_vertices, dtype=np.uint8)
    src = np.array([3], dtype=np.int64)
    dist, parent, _ = kernels.dijkstra(
        *_csr(mesh), src, np.zeros(1), forb, NO_TARGETS
    )
    oracle = bellman_ford(mesh, 3)
    assert np.allclose(dist, oracle, rtol=0, atol=1e-12)


def test_dijkstra_with_forbidden_matches_oracle(sphere2):
    forbidden = {5, 17, 40, 41, 99}
    forb = np.zeros(sphere2.n_vertices, dtype=np.uint8)
    forb[list(forbidden)] = 1
    dist, _, _ = kernels.dijkstra(
        *_csr(sphere2), np.array([0], dtype=np.int64), np.zeros(1), forb,
        NO_TARGETS,
    )
    oracle = bellman_ford(sphere2, 0, frozenset(forbidden))
    finite = np.isfinite(oracle)
    assert np.allclose(dist[finite], oracle[finite], rtol=0, atol=1e-12)
    assert np.array_equal(np.isfinite(dist), finite)


def test_dijkstra_edge_lipschitz_property(cyl16):
    dist, _, _ = kernels.dijkstra(
        *_csr(cyl16), np.array([2], dtype=np.int64), np.zeros(1),
        np.zeros(cyl16.n_vertices, dtype=np.uint8), NO_TARGETS,
    )
    a = cyl16.edges[:, 0]
    b = cyl16.edges[:, 1]
    assert (np.abs(dist[a] - dist[b]) <= cyl16.edge_lengths + 1e-12).all()


def test_dijkstra_parent_tree_consistent(sphere2):
    dist, parent, _ = kernels.dijkstra(
        *_csr(sphere2), np.array([11], dtype=np.int64), np.zeros(1),
        np.zeros(sphere2.n_vertices, dtype=np.uint8), NO_TARGETS,
    )
    for v in range(sphere2.n_vertices):
        p = parent[v]
        if p < 0:
            continue
        w = np.linalg.norm(sphere2.vertices[v] - sphere2.vertices[p])
        assert dist[v] == pytest.approx(dist[p] + w, abs=1e-12)


def test_early_target_stops_consistently(sphere2):
    target = 101
    tmask = np.zeros(sphere2.n_vertices, dtype=np.uint8)
    tmask[target] = 1
    d1, _, hit = kernels.dijkstra(
        *_csr(sphere2), np.array([0], dtype=np.int64), np.zeros(1),
        np.zeros(sphere2.n_vertices, dtype=np.uint8), tmask,
    )
    assert hit == target
    d2, _, _ = kernels.dijkstra(
        *_csr(sphere2), np.array([0], dtype=np.int64), np.zeros(1),
        np.zeros(sphere2.n_vertices, dtype=np.uint8), NO_TARGETS,
    )
    assert d1[target] == d2[target]


def test_bfs_hops_matches_manual_oracle(sphere2):
    src, r = 7, 4
    visited, count = kernels.bfs_hops(
        sphere2.adj_indptr, sphere2.adj_indices, src, r
    )
    got = set(visited[:count].tolist())
    frontier = {src}
    seen = {src}
    for _ in range(r):
        nxt = set()
        for v in frontier:
            nxt.update(sphere2.cyclic_neighbors(v).tolist())
        frontier = nxt - seen
        seen |= frontier
    assert got == seen


def test_vertex_components_split_by_ring(cyl16):
    # forbidding a full circumferential ring disconnects top from bottom
    ring = list(range(6 * 16, 7 * 16))
    removed = np.zeros(cyl16.n_vertices, dtype=np.uint8)
    removed[ring] = 1
    labels, n_comp = kernels.vertex_components(
        cyl16.adj_indptr, cyl16.adj_indices, removed
    )
    assert int(n_comp) == 2
    assert labels[0] != labels[cyl16.n_vertices - 1]


def test_face_components_whole_mesh(sphere2):
    blocked = np.zeros(sphere2.n_edges, dtype=np.uint8)
    labels, n_comp = kernels.face_components(
        sphere2.face_adj, sphere2.face_edge_ids, blocked
    )
    assert int(n_comp) == 1
    assert (labels == 0).all()


@pytest.mark.parametrize("kernel_name", list(kernels.KERNEL_NAMES))
def test_backends_bit_equal(kernel_name, dumbbell12):
    try:
        nb = kernels.get_backend("numba")
    except ImportError:
        pytest.skip("numba unavailable")
    py = kernels.get_backend("numpy")
    mesh = dumbbell12
    forb = np.zeros(mesh.n_vertices, dtype=np.uint8)
    forb[50:60] = 1
    args = {
        "dijkstra": (
            *_csr(mesh), np.array([0, 3], dtype=np.int64), np.array([0.0, 0.1]),
            forb, NO_TARGETS,
        ),
        "lasso_search": None,
        "bfs_hops": (mesh.adj_indptr, mesh.adj_indices, 5, 6),
        "flood_strips": None,
        "face_components": None,
        "vertex_components": (mesh.adj_indptr, mesh.adj_indices, forb),
    }[kernel_name]
    if kernel_name == "lasso_search":
        closing = np.full(mesh.n_vertices, np.inf)
        closing[100] = 0.3
        closing[101] = 0.2
        args = (
            *_csr(mesh), np.array([0, 3], dtype=np.int64), np.array([0.0, 0.1]),
            forb, closing,
        )
    elif kernel_name in ("flood_strips", "face_components"):
        blocked = np.zeros(mesh.n_edges, dtype=np.uint8)
        blocked[mesh.loop_edge_ids(mesh.cyclic_neighbors(10))] = 1
        if kernel_name == "face_components":
            args = (mesh.face_adj, mesh.face_edge_ids, blocked)
        else:
            args = (
                mesh.face_adj, mesh.face_edge_ids, blocked,
                np.array([0, mesh.n_faces - 1], dtype=np.int64),
                np.array([0, 1], dtype=np.int64),
            )
    got_nb = nb.__dict__[kernel_name](*args)
    got_py = py.__dict__[kernel_name](*args)
    for a, b in zip(got_nb, got_py):
        assert np.array_equal(np.asarray(a), np.asarray(b))
