"""Graph search kernels over CSR mesh adjacency.

Every function here is written against plain numpy arrays so the same source
compiles under numba's nopython mode and also runs as ordinary Python (the
fallback backend).  Keep them self-contained: no calls into other module
functions, no dicts, no object-mode constructs.

Conventions:
- adjacency is CSR: ``indptr`` (V+1, int64), ``indices`` (int64), parallel
  ``weights`` (float64) holding edge lengths;
- boolean sets are uint8 masks;
- priority queues order lexicographically by (distance, vertex index), which
  is the package-wide deterministic tie-breaking rule.
"""

import numpy as np

INF = np.inf


def dijkstra(indptr, indices, weights, sources, init_dists, forbidden, target_mask):
    """Multi-source Dijkstra with forbidden vertices.

    ``sources``/``init_dists`` seed the queue (a classic single-source run
    passes one source with distance 0).  ``forbidden`` vertices are never
    entered or expanded.  If ``target_mask`` is non-empty, the search stops
    as soon as a masked vertex is settled, and that vertex is returned as
    ``hit`` (else -1).

    Returns (dist, parent, hit); parent is -1 for sources and unreached
    vertices.
    """
    n = indptr.shape[0] - 1
    dist = np.full(n, INF)
    parent = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.uint8)
    has_targets = target_mask.shape[0] > 0

    cap = indices.shape[0] + sources.shape[0] + 1
    heap_d = np.empty(cap)
    heap_v = np.empty(cap, dtype=np.int64)
    size = 0

    for k in range(sources.shape[0]):
        s = sources[k]
        d0 = init_dists[k]
        if forbidden[s] != 0:
            continue
        if d0 < dist[s]:
            dist[s] = d0
            i = size
            heap_d[i] = d0
            heap_v[i] = s
            size += 1
            while i > 0:
                p = (i - 1) >> 1
                if heap_d[p] > heap_d[i] or (
                    heap_d[p] == heap_d[i] and heap_v[p] > heap_v[i]
                ):
                    td = heap_d[p]; tv = heap_v[p]
                    heap_d[p] = heap_d[i]; heap_v[p] = heap_v[i]
                    heap_d[i] = td; heap_v[i] = tv
                    i = p
                else:
                    break

    hit = np.int64(-1)
    while size > 0:
        d = heap_d[0]
        v = heap_v[0]
        size -= 1
        heap_d[0] = heap_d[size]
        heap_v[0] = heap_v[size]
        i = 0
        while True:
            l = 2 * i + 1
            m = i
            if l < size and (
                heap_d[l] < heap_d[m]
                or (heap_d[l] == heap_d[m] and heap_v[l] < heap_v[m])
            ):
                m = l
            r = l + 1
            if r < size and (
                heap_d[r] < heap_d[m]
                or (heap_d[r] == heap_d[m] and heap_v[r] < heap_v[m])
            ):
                m = r
            if m == i:
                break
            td = heap_d[m]; tv = heap_v[m]
            heap_d[m] = heap_d[i]; heap_v[m] = heap_v[i]
            heap_d[i] = td; heap_v[i] = tv
            i = m

        if done[v] != 0:
            continue
        done[v] = 1
        if has_targets and target_mask[v] != 0:
            hit = v
            break
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if done[w] != 0 or forbidden[w] != 0:
                continue
            nd = d + weights[e]
            if nd < dist[w]:
                dist[w] = nd
                parent[w] = v
                i = size
                heap_d[i] = nd
                heap_v[i] = w
                size += 1
                while i > 0:
                    p = (i - 1) >> 1
                    if heap_d[p] > heap_d[i] or (
                        heap_d[p] == heap_d[i] and heap_v[p] > heap_v[i]
                    ):
                        td = heap_d[p]; tv = heap_v[p]
                        heap_d[p] = heap_d[i]; heap_v[p] = heap_v[i]
                        heap_d[i] = td; heap_v[i] = tv
                        i = p
                    else:
                        break
    return dist, parent, hit


def lasso_search(indptr, indices, weights, sources, init_dists, forbidden, closing):
    """Shortest open arc between two neighbor fans of a loop base vertex.

    Seeds the queue with ``sources`` at ``init_dists`` (the edge length from
    the base vertex) and scores every settled vertex ``y`` with finite
    ``closing[y]`` (the edge length back to the base vertex) as a closed-loop
    candidate of total length dist[y] + closing[y].  Terminates once the heap
    minimum can no longer improve the best total.

    Returns (dist, parent, best_vertex, best_total); best_vertex is -1 when
    the two fans are disconnected in the forbidden-reduced graph.
    """
    n = indptr.shape[0] - 1
    dist = np.full(n, INF)
    parent = np.full(n, -1, dtype=np.int64)
    done = np.zeros(n, dtype=np.uint8)

    cap = indices.shape[0] + sources.shape[0] + 1
    heap_d = np.empty(cap)
    heap_v = np.empty(cap, dtype=np.int64)
    size = 0

    for k in range(sources.shape[0]):
        s = sources[k]
        d0 = init_dists[k]
        if forbidden[s] != 0:
            continue
        if d0 < dist[s]:
            dist[s] = d0
            i = size
            heap_d[i] = d0
            heap_v[i] = s
            size += 1
            while i > 0:
                p = (i - 1) >> 1
                if heap_d[p] > heap_d[i] or (
                    heap_d[p] == heap_d[i] and heap_v[p] > heap_v[i]
                ):
                    td = heap_d[p]; tv = heap_v[p]
                    heap_d[p] = heap_d[i]; heap_v[p] = heap_v[i]
                    heap_d[i] = td; heap_v[i] = tv
                    i = p
                else:
                    break

    best_v = np.int64(-1)
    best_total = INF
    while size > 0:
        d = heap_d[0]
        v = heap_v[0]
        size -= 1
        heap_d[0] = heap_d[size]
        heap_v[0] = heap_v[size]
        i = 0
        while True:
            l = 2 * i + 1
            m = i
            if l < size and (
                heap_d[l] < heap_d[m]
                or (heap_d[l] == heap_d[m] and heap_v[l] < heap_v[m])
            ):
                m = l
            r = l + 1
            if r < size and (
                heap_d[r] < heap_d[m]
                or (heap_d[r] == heap_d[m] and heap_v[r] < heap_v[m])
            ):
                m = r
            if m == i:
                break
            td = heap_d[m]; tv = heap_v[m]
            heap_d[m] = heap_d[i]; heap_v[m] = heap_v[i]
            heap_d[i] = td; heap_v[i] = tv
            i = m

        if d >= best_total:
            break
        if done[v] != 0:
            continue
        done[v] = 1
        if closing[v] < INF:
            total = d + closing[v]
            if total < best_total or (total == best_total and v < best_v):
                best_total = total
                best_v = v
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if done[w] != 0 or forbidden[w] != 0:
                continue
            nd = d + weights[e]
            if nd < dist[w]:
                dist[w] = nd
                parent[w] = v
                i = size
                heap_d[i] = nd
                heap_v[i] = w
                size += 1
                while i > 0:
                    p = (i - 1) >> 1
                    if heap_d[p] > heap_d[i] or (
                        heap_d[p] == heap_d[i] and heap_v[p] > heap_v[i]
                    ):
                        td = heap_d[p]; tv = heap_v[p]
                        heap_d[p] = heap_d[i]; heap_v[p] = heap_v[i]
                        heap_d[i] = td; heap_v[i] = tv
                        i = p
                    else:
                        break
    return dist, parent, best_v, best_total


def bfs_hops(indptr, indices, source, max_hops):
    """Hop-limited BFS. Returns (visited, count): visited[:count] are the
    vertices within ``max_hops`` edges of ``source``, in settle order."""
    n = indptr.shape[0] - 1
    seen = np.zeros(n, dtype=np.uint8)
    queue = np.full(n, -1, dtype=np.int64)
    hops = np.zeros(n, dtype=np.int64)
    queue[0] = source
    hops[0] = 0
    seen[source] = 1
    head = 0
    tail = 1
    while head < tail:
        v = queue[head]
        h = hops[head]
        head += 1
        if h == max_hops:
            continue
        for e in range(indptr[v], indptr[v + 1]):
            w = indices[e]
            if seen[w] == 0:
                seen[w] = 1
                queue[tail] = w
                hops[tail] = h + 1
                tail += 1
    return queue, tail


def flood_strips(face_adj, face_edge, blocked, seed_faces, seed_labels):
    """Label faces by multi-seed BFS that never crosses a blocked edge.

    Returns (labels, status, where): labels[f] = -1 for unreached faces;
    status 0 = clean, 1 = two different labels met across an unblocked edge
    (``where`` = offending face), 2 = two seeds with different labels on the
    same face.
    """
    n_faces = face_adj.shape[0]
    labels = np.full(n_faces, -1, dtype=np.int64)
    queue = np.empty(n_faces, dtype=np.int64)
    tail = 0
    for k in range(seed_faces.shape[0]):
        f = seed_faces[k]
        lab = seed_labels[k]
        if labels[f] == -1:
            labels[f] = lab
            queue[tail] = f
            tail += 1
        elif labels[f] != lab:
            return labels, np.int64(2), f
    head = 0
    while head < tail:
        f = queue[head]
        head += 1
        lab = labels[f]
        for k in range(3):
            g = face_adj[f, k]
            if g < 0:
                continue
            if blocked[face_edge[f, k]] != 0:
                continue
            if labels[g] == -1:
                labels[g] = lab
                queue[tail] = g
                tail += 1
            elif labels[g] != lab:
                return labels, np.int64(1), g
    return labels, np.int64(0), np.int64(-1)


def face_components(face_adj, face_edge, blocked):
    """Connected components of the face dual graph with blocked edges removed.

    Returns (labels, n_components); component ids follow first-face order.
    """
    n_faces = face_adj.shape[0]
    labels = np.full(n_faces, -1, dtype=np.int64)
    queue = np.empty(n_faces, dtype=np.int64)
    n_comp = np.int64(0)
    for f0 in range(n_faces):
        if labels[f0] != -1:
            continue
        labels[f0] = n_comp
        queue[0] = f0
        head = 0
        tail = 1
        while head < tail:
            f = queue[head]
            head += 1
            for k in range(3):
                g = face_adj[f, k]
                if g < 0:
                    continue
                if blocked[face_edge[f, k]] != 0:
                    continue
                if labels[g] == -1:
                    labels[g] = n_comp
                    queue[tail] = g
                    tail += 1
        n_comp += 1
    return labels, n_comp


def vertex_components(indptr, indices, removed):
    """Connected components of the vertex graph after deleting ``removed``
    vertices. Removed vertices get label -1."""
    n = indptr.shape[0] - 1
    labels = np.full(n, -1, dtype=np.int64)
    queue = np.empty(n, dtype=np.int64)
    n_comp = np.int64(0)
    for v0 in range(n):
        if removed[v0] != 0 or labels[v0] != -1:
            continue
        labels[v0] = n_comp
        queue[0] = v0
        head = 0
        tail = 1
        while head < tail:
            v = queue[head]
            head += 1
            for e in range(indptr[v], indptr[v + 1]):
                w = indices[e]
                if removed[w] != 0 or labels[w] != -1:
                    continue
                labels[w] = n_comp
                queue[tail] = w
                tail += 1
        n_comp += 1
    return labels, n_comp
