"""Pure-Python reference kernels.

These are the fallback implementations of the hot loops (whole-graph
embeddedness scans and clique enumeration). The compiled twin in
``_native.pyx`` must produce bit-identical output, including ordering:

* edges are visited in CSR order, keeping only neighbors above the row
  vertex, so edge t is the t-th pair (u, v) with u < v;
* cliques are emitted in lexicographic order of their sorted vertex
  tuples.
"""

from __future__ import annotations

import numpy as np


def _adjacency_sets(indptr, indices):
    n = len(indptr) - 1
    idx = indices.tolist()
    ptr = indptr.tolist()
    return [set(idx[ptr[u]:ptr[u + 1]]) for u in range(n)], idx, ptr


def edge_embeddedness_all(indptr, indices):
    """Common-neighbor count for every edge, in canonical edge order."""
    sets, idx, ptr = _adjacency_sets(indptr, indices)
    out = np.empty(len(indices) // 2, dtype=np.int64)
    t = 0
    for u in range(len(sets)):
        su = sets[u]
        for i in range(ptr[u], ptr[u + 1]):
            v = idx[i]
            if v > u:
                out[t] = len(su & sets[v])
                t += 1
    return out


def enumerate_cliques(indptr, indices, k):
    """All complete vertex k-subsets, one row per clique, rows sorted."""
    n = len(indptr) - 1
    if k == 1:
        return np.arange(n, dtype=np.int32).reshape(n, 1)
    sets, idx, ptr = _adjacency_sets(indptr, indices)
    rows: list[tuple[int, ...]] = []
    cur = [0] * k

    def extend(cand, depth):
        last = depth + 1 == k
        for i, v in enumerate(cand):
            cur[depth] = v
            if last:
                rows.append(tuple(cur))
            else:
                sv = sets[v]
                nxt = [w for w in cand[i + 1:] if w in sv]
                if len(nxt) >= k - depth - 1:
                    extend(nxt, depth + 1)

    for u in range(n):
        cur[0] = u
        cand = [v for v in idx[ptr[u]:ptr[u + 1]] if v > u]
        if len(cand) >= k - 1:
            extend(cand, 1)
    out = np.array(rows, dtype=np.int32)
    return out.reshape(len(rows), k)


def common_neighbor_counts(indptr, indices, cliques):
    """|N(v1) ∩ ... ∩ N(vk)| for each clique row."""
    sets, _, _ = _adjacency_sets(indptr, indices)
    m = cliques.shape[0]
    out = np.empty(m, dtype=np.int64)
    rows = cliques.tolist()
    for i, row in enumerate(rows):
        acc = sets[row[0]]
        for v in row[1:]:
            acc = acc & sets[v]
            if not acc:
                break
        out[i] = len(acc)
    return out
