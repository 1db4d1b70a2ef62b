# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels for the hot graph loops.

Twin of ``jellytopo._kernels_py``; the dispatcher in ``jellytopo.kernels``
prefers this module when the extension built. Outputs must match the
pure-Python backend bit for bit (see tests/test_kernels.py).
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport pow as c_pow

cnp.import_array()


cdef inline unsigned long long _mix64(unsigned long long z) nogil:
    z = (z ^ (z >> 30)) * <unsigned long long>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <unsigned long long>0x94D049BB133111EB
    return z ^ (z >> 31)


def bfs_distances(cnp.int64_t[::1] indptr, cnp.int32_t[::1] indices, cnp.int32_t[::1] sources):
    """Hop distances from the source set; -1 marks unreachable nodes."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    dist_arr = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] dist = dist_arr
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef Py_ssize_t head = 0, tail = 0, i, k
    cdef cnp.int32_t u, v, du1
    for i in range(sources.shape[0]):
        u = sources[i]
        if dist[u] < 0:
            dist[u] = 0
            queue[tail] = u
            tail += 1
    while head < tail:
        u = queue[head]
        head += 1
        du1 = dist[u] + 1
        for k in range(indptr[u], indptr[u + 1]):
            v = indices[k]
            if dist[v] < 0:
                dist[v] = du1
                queue[tail] = v
                tail += 1
    return dist_arr


def distance_histogram(cnp.int64_t[::1] indptr, cnp.int32_t[::1] indices, cnp.int32_t[::1] sources):
    """Histogram of hop distances over ordered pairs (s, v); see python twin."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    hist_arr = np.zeros(512, dtype=np.int64)
    stamp_arr = np.full(n, -1, dtype=np.int64)
    dist_arr = np.zeros(n, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int64_t[::1] hist = hist_arr
    cdef cnp.int64_t[::1] stamp = stamp_arr
    cdef cnp.int32_t[::1] dist = dist_arr
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef Py_ssize_t si, head, tail, k
    cdef cnp.int32_t s, u, v, d1
    cdef cnp.int64_t pairs = 0
    for si in range(sources.shape[0]):
        s = sources[si]
        stamp[s] = si
        dist[s] = 0
        queue[0] = s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            d1 = dist[u] + 1
            for k in range(indptr[u], indptr[u + 1]):
                v = indices[k]
                if stamp[v] != si:
                    stamp[v] = si
                    dist[v] = d1
                    queue[tail] = v
                    tail += 1
                    hist[d1 if d1 < 512 else 511] += 1
                    pairs += 1
    cdef Py_ssize_t top = 0
    if pairs > 0:
        for k in range(512):
            if hist[k] > 0:
                top = k
    return hist_arr[: top + 1], int(pairs)


def component_labels(cnp.int64_t[::1] indptr, cnp.int32_t[::1] indices):
    """Label nodes by connected component, labels assigned in node order."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    labels_arr = np.full(n, -1, dtype=np.int32)
    queue_arr = np.empty(n, dtype=np.int32)
    cdef cnp.int32_t[::1] labels = labels_arr
    cdef cnp.int32_t[::1] queue = queue_arr
    cdef Py_ssize_t s, head, tail, k
    cdef cnp.int32_t u, v, next_label = 0
    for s in range(n):
        if labels[s] >= 0:
            continue
        labels[s] = next_label
        queue[0] = <cnp.int32_t> s
        head = 0
        tail = 1
        while head < tail:
            u = queue[head]
            head += 1
            for k in range(indptr[u], indptr[u + 1]):
                v = indices[k]
                if labels[v] < 0:
                    labels[v] = next_label
                    queue[tail] = v
                    tail += 1
        next_label += 1
    return labels_arr


def triangle_counts(cnp.int64_t[::1] indptr, cnp.int32_t[::1] indices_sorted):
    """Per-node triangle membership counts. Rows must be sorted ascending."""
    cdef Py_ssize_t n = indptr.shape[0] - 1
    tri_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] tri = tri_arr
    cdef Py_ssize_t u, k, i, j, u_lo, u_hi, j_hi
    cdef cnp.int32_t v, a, b
    for u in range(n):
        u_lo = indptr[u]
        u_hi = indptr[u + 1]
        for k in range(u_lo, u_hi):
            v = indices_sorted[k]
            if v <= u:
                continue
            i = u_lo
            j = indptr[v]
            j_hi = indptr[v + 1]
            while i < u_hi and j < j_hi:
                a = indices_sorted[i]
                b = indices_sorted[j]
                if a < b:
                    i += 1
                elif b < a:
                    j += 1
                else:
                    tri[a] += 1
                    i += 1
                    j += 1
    return tri_arr


def pa_event_degrees(Py_ssize_t n, Py_ssize_t events, double alpha, unsigned long long seed):
    """Rich-gets-richer attachment events; twin of the python implementation."""
    deg_arr = np.zeros(n, dtype=np.int64)
    weight_arr = np.ones(n, dtype=np.float64)
    tree_arr = np.zeros(n + 1, dtype=np.float64)
    cdef cnp.int64_t[::1] deg = deg_arr
    cdef cnp.float64_t[::1] weight = weight_arr
    cdef cnp.float64_t[::1] tree = tree_arr
    cdef Py_ssize_t i, j, node, nxt, pos, bit, top_bit
    cdef double total, r, new_w, delta
    cdef unsigned long long state, z
    for i in range(1, n + 1):
        tree[i] += 1.0
        j = i + (i & -i)
        if j <= n:
            tree[j] += tree[i]
    total = <double> n
    top_bit = 1
    while top_bit * 2 <= n:
        top_bit *= 2
    state = seed
    for _ in range(events):
        state += <unsigned long long>0x9E3779B97F4A7C15
        z = _mix64(state)
        r = <double>(z >> 11) * (2.0 ** -53) * total
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
        new_w = c_pow(<double>(1 + deg[node]), alpha)
        delta = new_w - weight[node]
        weight[node] = new_w
        pos = node + 1
        while pos <= n:
            tree[pos] += delta
            pos += pos & (-pos)
        total += delta
    return deg_arr
