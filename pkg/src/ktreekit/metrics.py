"""Structural statistics: degree, edge embeddedness, h-clique
embeddedness, and contact-strength aggregation.

The whole-graph scans run through the kernel layer (compiled when
available); everything here is read-only over an immutable graph.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .graph_core import Graph, Histogram

# h-clique enumeration is exponential in h; refuse silly requests
# unless the caller raises the cap explicitly.
DEFAULT_CLIQUE_EMBEDDEDNESS_CAP = 5


@dataclass(frozen=True)
class EmbeddednessRecord:
    """One edge with its common-neighbor count and contact strength."""

    u: int
    v: int
    emb: int
    weight: int | None = None


def degree_distribution(g: Graph) -> Histogram:
    return Histogram.from_values(g.degrees())


def edge_embeddedness(g: Graph, u: int, v: int) -> int:
    """Number of common neighbors of the endpoints of edge {u, v}.

    Together with u, v those neighbors form the edge's d-triangle.
    """
    if not g.has_edge(u, v):
        raise ValueError(f"no edge {{{u},{v}}} in graph")
    return len(g.neighbors(u) & g.neighbors(v))


def edge_embeddedness_arrays(g: Graph
                             ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(us, vs, emb) for every edge in canonical order (u < v)."""
    indptr, indices = g.csr()
    emb = _kernels.edge_embeddedness_all(indptr, indices)
    degs = np.diff(indptr)
    us_all = np.repeat(np.arange(g.n, dtype=np.int32), degs)
    mask = indices > us_all
    return us_all[mask], indices[mask], emb


def embeddedness_distribution(g: Graph) -> Histogram:
    """Histogram of common-neighbor counts over all edges (zeros
    included)."""
    _, _, emb = edge_embeddedness_arrays(g)
    return Histogram.from_values(emb)


def embeddedness_records(g: Graph) -> list[EmbeddednessRecord]:
    """Per-edge records; convenient at desk scale, avoid on huge graphs."""
    us, vs, emb = edge_embeddedness_arrays(g)
    weighted = g.has_weights
    return [
        EmbeddednessRecord(int(u), int(v), int(e),
                           g.weight(int(u), int(v)) if weighted else None)
        for u, v, e in zip(us, vs, emb)
    ]


def enumerate_h_cliques(g: Graph, h: int) -> np.ndarray:
    """(M, h) array of all complete vertex h-subsets, rows sorted."""
    if h < 1:
        raise ValueError(f"h must be positive, got {h}")
    indptr, indices = g.csr()
    return _kernels.enumerate_cliques(indptr, indices, h)


def clique_embeddedness_distribution(
        g: Graph, h: int,
        cap: int = DEFAULT_CLIQUE_EMBEDDEDNESS_CAP) -> Histogram:
    """Histogram of |common neighborhood| over all h-cliques.

    h=2 reproduces embeddedness_distribution exactly. Enumeration cost
    grows combinatorially with h, hence the cap.
    """
    if h < 2:
        raise ValueError(f"h must be at least 2, got {h}")
    if h > cap:
        raise ValueError(
            f"h={h} exceeds the cap {cap}; enumerating h-cliques is "
            f"combinatorially explosive, raise cap only deliberately")
    indptr, indices = g.csr()
    cliques = _kernels.enumerate_cliques(indptr, indices, h)
    if cliques.shape[0] == 0:
        return Histogram({})
    counts = _kernels.common_neighbor_counts(indptr, indices, cliques)
    return Histogram.from_values(counts)


def contact_strength_by_embeddedness(
        g: Graph, missing_as_zero: bool = True
) -> dict[int, tuple[float, int]]:
    """Mean contact strength (edge weight) grouped by embeddedness.

    Returns {emb: (mean weight, edge count)} ascending in emb. Edges
    with no weight record count as weight 0 (a silent tie) by default;
    with missing_as_zero=False they are excluded from the means.
    """
    us, vs, emb = edge_embeddedness_arrays(g)
    n_missing = 0
    sums: dict[int, int] = {}
    cnts: dict[int, int] = {}
    weights = g._weights
    for u, v, e in zip(us.tolist(), vs.tolist(), emb.tolist()):
        w = weights.get((u, v))
        if w is None:
            n_missing += 1
            if not missing_as_zero:
                continue
            w = 0
        sums[e] = sums.get(e, 0) + w
        cnts[e] = cnts.get(e, 0) + 1
    if n_missing:
        warnings.warn(
            f"{n_missing} of {len(emb)} edges carry no weight; "
            + ("treated as weight 0" if missing_as_zero else "excluded"),
            stacklevel=2)
    return {e: (sums[e] / cnts[e], cnts[e]) for e in sorted(cnts)}


def write_contact_strength_csv(means: dict[int, tuple[float, int]],
                               path) -> None:
    with open(path, "w") as f:
        f.write("embeddedness,mean_weight,edge_count\n")
        for e, (mean, cnt) in means.items():
            f.write(f"{e},{mean!r},{cnt}\n")
