# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the hot loops.

Must stay bit-identical to ``pyref.py``: same edge order (CSR order,
neighbor above row vertex) and same lexicographic clique order.
"""

import numpy as np


cdef inline long long _intersect_size(const int[:] ind,
                                      Py_ssize_t i, Py_ssize_t iend,
                                      Py_ssize_t j, Py_ssize_t jend) nogil:
    cdef long long c = 0
    while i < iend and j < jend:
        if ind[i] < ind[j]:
            i += 1
        elif ind[i] > ind[j]:
            j += 1
        else:
            c += 1
            i += 1
            j += 1
    return c


def edge_embeddedness_all(indptr, indices):
    """Common-neighbor count for every edge, in canonical edge order."""
    cdef const long long[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int[:] ind = np.ascontiguousarray(indices, dtype=np.int32)
    cdef Py_ssize_t n = ip.shape[0] - 1
    out = np.empty(ind.shape[0] // 2, dtype=np.int64)
    cdef long long[:] o = out
    cdef Py_ssize_t u, i, t = 0
    cdef int v
    with nogil:
        for u in range(n):
            for i in range(ip[u], ip[u + 1]):
                v = ind[i]
                if v > u:
                    o[t] = _intersect_size(ind, ip[u], ip[u + 1],
                                           ip[v], ip[v + 1])
                    t += 1
    return out


def enumerate_cliques(indptr, indices, int k):
    """All complete vertex k-subsets, one row per clique, rows sorted."""
    cdef const long long[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int[:] ind = np.ascontiguousarray(indices, dtype=np.int32)
    cdef Py_ssize_t n = ip.shape[0] - 1
    if k == 1:
        return np.arange(n, dtype=np.int32).reshape(n, 1)
    if k > 64:
        raise ValueError("clique size too large")

    cdef Py_ssize_t maxd = 0, u
    for u in range(n):
        if ip[u + 1] - ip[u] > maxd:
            maxd = ip[u + 1] - ip[u]

    cand_arr = np.empty((k, max(maxd, 1)), dtype=np.int32)
    pos_arr = np.zeros(k, dtype=np.int64)
    clen_arr = np.zeros(k, dtype=np.int64)
    cur_arr = np.zeros(k, dtype=np.int32)
    cdef int[:, :] cand = cand_arr
    cdef long long[:] pos = pos_arr
    cdef long long[:] clen = clen_arr
    cdef int[:] cur = cur_arr

    cdef Py_ssize_t cap = 1024
    out_arr = np.empty((cap, k), dtype=np.int32)
    cdef int[:, :] out = out_arr
    cdef Py_ssize_t count = 0

    cdef Py_ssize_t i, j, a, b, m, level
    cdef int v, w

    for u in range(n):
        m = 0
        for i in range(ip[u], ip[u + 1]):
            if ind[i] > u:
                cand[1, m] = ind[i]
                m += 1
        if m < k - 1:
            continue
        cur[0] = <int> u
        level = 1
        pos[1] = 0
        clen[1] = m
        while level >= 1:
            if pos[level] >= clen[level]:
                level -= 1
                continue
            v = cand[level, pos[level]]
            pos[level] += 1
            if level == k - 1:
                if count == cap:
                    cap *= 2
                    new_arr = np.empty((cap, k), dtype=np.int32)
                    new_arr[:count] = out_arr
                    out_arr = new_arr
                    out = out_arr
                for j in range(level):
                    out[count, j] = cur[j]
                out[count, level] = v
                count += 1
                continue
            # next-level candidates: remaining ones adjacent to v (merge scan)
            a = pos[level]
            b = ip[v]
            m = 0
            while a < clen[level] and b < ip[v + 1]:
                w = cand[level, a]
                if w < ind[b]:
                    a += 1
                elif w > ind[b]:
                    b += 1
                else:
                    cand[level + 1, m] = w
                    m += 1
                    a += 1
                    b += 1
            if m >= k - level - 1:
                cur[level] = v
                level += 1
                pos[level] = 0
                clen[level] = m
    return out_arr[:count].copy()


def common_neighbor_counts(indptr, indices, cliques):
    """|N(v1) ∩ ... ∩ N(vk)| for each clique row."""
    cdef const long long[:] ip = np.ascontiguousarray(indptr, dtype=np.int64)
    cdef const int[:] ind = np.ascontiguousarray(indices, dtype=np.int32)
    cdef const int[:, :] cl = np.ascontiguousarray(cliques, dtype=np.int32)
    cdef Py_ssize_t m = cl.shape[0], k = cl.shape[1]
    cdef Py_ssize_t n = ip.shape[0] - 1

    cdef Py_ssize_t maxd = 0, u
    for u in range(n):
        if ip[u + 1] - ip[u] > maxd:
            maxd = ip[u + 1] - ip[u]

    buf_a = np.empty(max(maxd, 1), dtype=np.int32)
    buf_b = np.empty(max(maxd, 1), dtype=np.int32)
    cdef int[:] a = buf_a
    cdef int[:] b = buf_b
    cdef int[:] tmp
    out = np.empty(m, dtype=np.int64)
    cdef long long[:] o = out

    cdef Py_ssize_t i, j, t, la, lb, p, q
    cdef int v
    with nogil:
        for i in range(m):
            v = cl[i, 0]
            la = ip[v + 1] - ip[v]
            for t in range(la):
                a[t] = ind[ip[v] + t]
            for j in range(1, k):
                v = cl[i, j]
                p = 0
                q = ip[v]
                lb = 0
                while p < la and q < ip[v + 1]:
                    if a[p] < ind[q]:
                        p += 1
                    elif a[p] > ind[q]:
                        q += 1
                    else:
                        b[lb] = a[p]
                        lb += 1
                        p += 1
                        q += 1
                tmp = a
                a = b
                b = tmp
                la = lb
                if la == 0:
                    break
            o[i] = la
    return out
