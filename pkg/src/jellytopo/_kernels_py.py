"""Pure-Python kernel implementations.

Fallback backend used when the compiled extension is unavailable. Every
function here must stay observably identical to its twin in
``_speedups.pyx``: same signatures, same outputs bit for bit, including
the float arithmetic order in the weighted-attachment loop. The
equivalence suite in tests/test_kernels.py holds the two backends to
that contract.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_TWO_NEG53 = 2.0 ** -53


def _splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state, returning (new_state, output)."""
    state = (state + _GOLDEN) & _MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return state, z ^ (z >> 31)


def bfs_distances(indptr: np.ndarray, indices: np.ndarray, sources: np.ndarray) -> np.ndarray:
    """Hop distances from the source set; -1 marks unreachable nodes."""
    n = len(indptr) - 1
    ptr = indptr.tolist()
    idx = indices.tolist()
    dist = [-1] * n
    queue = [0] * n
    tail = 0
    for s in sources.tolist():
        if dist[s] < 0:
            dist[s] = 0
            queue[tail] = s
            tail += 1
    head = 0
    while head < tail:
        u = queue[head]
        head += 1
        du1 = dist[u] + 1
        for k in range(ptr[u], ptr[u + 1]):
            v = idx[k]
            if dist[v] < 0:
                dist[v] = du1
                queue[tail] = v
                tail += 1
    return np.asarray(dist, dtype=np.int32)


def distance_histogram(
    indptr: np.ndarray, indices: np.ndarray, sources: np.ndarray
) -> tuple[np.ndarray, int]:
    """Histogram of hop distances over ordered pairs (s, v), s in sources, v reached.

    Returns (hist, pairs) where hist[d] counts pairs at distance d >= 1 and
    pairs == hist.sum(). Distances are capped at 511 (far beyond any graph
    this toolkit touches).
    """
    n = len(indptr) - 1
    ptr = indptr.tolist()
    idx = indices.tolist()
    hist = [0] * 512
    stamp = [-1] * n
    dist = [0] * n
    queue = [0] * n
    pairs = 0
    for si, s in enumerate(sources.tolist()):
        stamp[s] = si
        dist[s] = 0
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            d1 = dist[u] + 1
            for k in range(ptr[u], ptr[u + 1]):
                v = idx[k]
                if stamp[v] != si:
                    stamp[v] = si
                    dist[v] = d1
                    queue[tail] = v
                    tail += 1
                    hist[d1 if d1 < 512 else 511] += 1
                    pairs += 1
    out = np.asarray(hist, dtype=np.int64)
    top = int(np.max(np.nonzero(out)[0])) if pairs else 0
    return out[: top + 1], pairs


def component_labels(indptr: np.ndarray, indices: np.ndarray) -> np.ndarray:
    """Label nodes by connected component, labels assigned in node order."""
    n = len(indptr) - 1
    ptr = indptr.tolist()
    idx = indices.tolist()
    labels = [-1] * n
    queue = [0] * n
    next_label = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = next_label
        queue[0] = s
        head, tail = 0, 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(ptr[u], ptr[u + 1]):
                v = idx[k]
                if labels[v] < 0:
                    labels[v] = next_label
                    queue[tail] = v
                    tail += 1
        next_label += 1
    return np.asarray(labels, dtype=np.int32)


def triangle_counts(indptr: np.ndarray, indices_sorted: np.ndarray) -> np.ndarray:
    """Per-node triangle membership counts. Rows must be sorted ascending.

    Each edge (u, v) with u < v contributes one credit to every common
    neighbor w, so a triangle credits each of its corners exactly once.
    """
    n = len(indptr) - 1
    ptr = indptr.tolist()
    idx = indices_sorted.tolist()
    tri = [0] * n
    for u in range(n):
        u_lo, u_hi = ptr[u], ptr[u + 1]
        for k in range(u_lo, u_hi):
            v = idx[k]
            if v <= u:
                continue
            i, j = u_lo, ptr[v]
            j_hi = ptr[v + 1]
            while i < u_hi and j < j_hi:
                a = idx[i]
                b = idx[j]
                if a < b:
                    i += 1
                elif b < a:
                    j += 1
                else:
                    tri[a] += 1
                    i += 1
                    j += 1
    return np.asarray(tri, dtype=np.int64)


def pa_event_degrees(n: int, events: int, alpha: float, seed: int) -> np.ndarray:
    """Simulate rich-gets-richer attachment events over n initially cold nodes.

    Each event picks one node with probability proportional to
    (1 + degree)^alpha and increments its degree. Uses an internal
    splitmix64 stream so results are reproducible across backends.
    """
    deg = [0] * n
    weight = [1.0] * n
    tree = [0.0] * (n + 1)
    # O(n) Fenwick build for uniform unit weights
    for i in range(1, n + 1):
        tree[i] += 1.0
        j = i + (i & -i)
        if j <= n:
            tree[j] += tree[i]
    total = float(n)
    top_bit = 1
    while top_bit * 2 <= n:
        top_bit *= 2
    state = seed & _MASK64
    for _ in range(events):
        state, z = _splitmix64(state)
        r = (z >> 11) * _TWO_NEG53 * total
        # Fenwick descend: smallest index with prefix sum >= r
        node = 0
        bit = top_bit
        while bit:
            nxt = node + bit
            if nxt <= n and tree[nxt] < r:
                r -= tree[nxt]
                node = nxt
            bit >>= 1
        if node >= n:
            node = n - 1
        deg[node] += 1
        new_w = float(1 + deg[node]) ** alpha
        delta = new_w - weight[node]
        weight[node] = new_w
        pos = node + 1
        while pos <= n:
            tree[pos] += delta
            pos += pos & -pos
        total += delta
    return np.asarray(deg, dtype=np.int64)
