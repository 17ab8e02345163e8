"""Core graph representation, integer histograms, and edge-list file I/O.

Vertices are dense integers 0..n-1. Graphs are simple and undirected,
with optional non-negative integer edge weights (message counts).
Adjacency is held in hash sets while a graph is being built; analyses
use the cached CSR view, which stores every adjacency list as a sorted
integer array so the hot loops can run merge-scan intersections.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np


class EdgeListParseError(ValueError):
    """Malformed edge-list line; carries the offending line number."""

    def __init__(self, path, lineno: int, message: str):
        super().__init__(f"{path}:{lineno}: {message}")
        self.path = str(path)
        self.lineno = lineno


def _edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph on vertices 0..n-1."""

    __slots__ = ("n", "_adj", "_weights", "_m", "original_ids", "_csr_cache")

    def __init__(self, n: int):
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        self.n = n
        self._adj: list[set[int]] = [set() for _ in range(n)]
        self._weights: dict[tuple[int, int], int] = {}
        self._m = 0
        # set when vertices were relabeled from sparse external ids:
        # original_ids[new_id] = external id
        self.original_ids: np.ndarray | None = None
        self._csr_cache: tuple[np.ndarray, np.ndarray] | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range [0, {self.n})")

    def add_edge(self, u: int, v: int, weight: int | None = None) -> None:
        """Insert edge {u, v}; re-inserting is a no-op except that
        weights accumulate (duplicate weighted records sum up)."""
        if u == v:
            raise ValueError(f"self-loop rejected at vertex {u}")
        self._check_vertex(u)
        self._check_vertex(v)
        if v not in self._adj[u]:
            self._adj[u].add(v)
            self._adj[v].add(u)
            self._m += 1
            self._csr_cache = None
        if weight is not None:
            if weight < 0:
                raise ValueError(f"negative weight on edge {{{u},{v}}}")
            key = _edge_key(u, v)
            self._weights[key] = self._weights.get(key, 0) + weight

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return v in self._adj[u]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self._adj[v])

    def neighbors(self, v: int) -> set[int]:
        """Neighbor set of v (do not mutate)."""
        self._check_vertex(v)
        return self._adj[v]

    def edge_count(self) -> int:
        return self._m

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges as (u, v) with u < v, ascending in u then v."""
        for u in range(self.n):
            for v in sorted(self._adj[u]):
                if v > u:
                    yield (u, v)

    @property
    def has_weights(self) -> bool:
        return bool(self._weights)

    def weight(self, u: int, v: int) -> int:
        """Weight of an existing edge; unweighted edges count as 0."""
        if not self.has_edge(u, v):
            raise ValueError(f"no edge {{{u},{v}}}")
        return self._weights.get(_edge_key(u, v), 0)

    def degrees(self) -> np.ndarray:
        return np.fromiter((len(a) for a in self._adj), dtype=np.int64,
                           count=self.n)

    def csr(self) -> tuple[np.ndarray, np.ndarray]:
        """(indptr int64, indices int32) with each row sorted ascending."""
        if self._csr_cache is None:
            degs = self.degrees()
            indptr = np.zeros(self.n + 1, dtype=np.int64)
            np.cumsum(degs, out=indptr[1:])
            indices = np.empty(int(indptr[-1]), dtype=np.int32)
            at = 0
            for a in self._adj:
                la = len(a)
                indices[at:at + la] = sorted(a)
                at += la
            self._csr_cache = (indptr, indices)
        return self._csr_cache

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


@dataclass(frozen=True)
class Histogram:
    """Integer-valued distribution: value -> positive count."""

    counts: dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        for v, c in self.counts.items():
            if v < 0:
                raise ValueError(f"negative histogram value {v}")
            if c <= 0:
                raise ValueError(f"non-positive count {c} for value {v}")

    @classmethod
    def from_values(cls, values) -> Histogram:
        arr = np.asarray(values, dtype=np.int64)
        if arr.size == 0:
            return cls({})
        vals, cnts = np.unique(arr, return_counts=True)
        return cls({int(v): int(c) for v, c in zip(vals, cnts)})

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def values(self) -> list[int]:
        return sorted(self.counts)

    def proportions(self) -> dict[int, float]:
        t = self.total
        return {v: self.counts[v] / t for v in self.values()}

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(values, counts, proportions) ascending in value."""
        vals = np.array(self.values(), dtype=np.int64)
        cnts = np.array([self.counts[int(v)] for v in vals], dtype=np.int64)
        return vals, cnts, cnts / cnts.sum()

    def percentile_value(self, q: float) -> int:
        """Smallest value whose cumulative proportion reaches q."""
        if not self.counts:
            raise ValueError("empty histogram has no percentiles")
        if not 0 < q <= 1:
            raise ValueError(f"percentile must be in (0, 1], got {q}")
        vals, cnts, _ = self.arrays()
        cum = np.cumsum(cnts)
        i = int(np.searchsorted(cum, q * cum[-1]))
        return int(vals[min(i, len(vals) - 1)])

    def scale(self, factor: int) -> Histogram:
        """Multiply every count by a positive integer factor."""
        if factor <= 0:
            raise ValueError("scale factor must be positive")
        return Histogram({v: c * factor for v, c in self.counts.items()})

    def to_csv(self, path) -> None:
        t = self.total
        with open(path, "w") as f:
            f.write("value,count,proportion\n")
            for v in self.values():
                c = self.counts[v]
                f.write(f"{v},{c},{c / t!r}\n")

    @classmethod
    def from_csv(cls, path) -> Histogram:
        counts: dict[int, int] = {}
        with open(path) as f:
            header = f.readline().strip()
            if not header.startswith("value,count"):
                raise ValueError(f"{path}: not a histogram CSV "
                                 f"(header {header!r})")
            for lineno, line in enumerate(f, start=2):
                line = line.strip()
                if not line:
                    continue
                parts = line.split(",")
                try:
                    v, c = int(parts[0]), int(parts[1])
                except (ValueError, IndexError):
                    raise ValueError(
                        f"{path}:{lineno}: malformed histogram row "
                        f"{line!r}") from None
                counts[v] = counts.get(v, 0) + c
        return cls(counts)


def write_edge_list(g: Graph, path, comments: Iterable[str] = ()) -> None:
    """Write the edge-list text format.

    The leading ``# n=<count>`` directive preserves isolated vertices on
    round trips; extra comment lines carry run metadata. Weighted edges
    are written as ``u v w``.
    """
    with open(path, "w") as f:
        f.write(f"# n={g.n}\n")
        for c in comments:
            f.write(f"# {c}\n")
        weighted = g.has_weights
        for u, v in g.edges():
            if weighted:
                f.write(f"{u} {v} {g.weight(u, v)}\n")
            else:
                f.write(f"{u} {v}\n")


def read_edge_list(path, relabel: bool = False) -> Graph:
    """Parse an edge-list file into a Graph.

    Lines are ``u v`` or ``u v w`` with non-negative integers; ``#``
    starts a comment. Duplicate and reversed records collapse to one
    edge with their weights summed.

    With ``relabel=True``, arbitrary (sparse) external ids are mapped to
    dense 0..n-1 in sorted order; the mapping is kept on the returned
    graph's ``original_ids``. Only ids that occur on an edge survive a
    relabel, and any ``# n=`` directive is ignored.
    """
    edges: list[tuple[int, int]] = []
    weights: list[int | None] = []
    declared_n: int | None = None
    max_id = -1
    with open(path) as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("n=") and declared_n is None:
                    try:
                        declared_n = int(body[2:])
                    except ValueError:
                        raise EdgeListParseError(
                            path, lineno, f"bad n directive {body!r}")
                continue
            parts = line.split()
            if len(parts) not in (2, 3):
                raise EdgeListParseError(
                    path, lineno,
                    f"expected 'u v' or 'u v w', got {line!r}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise EdgeListParseError(
                    path, lineno, f"non-integer vertex id in {line!r}"
                ) from None
            if u < 0 or v < 0:
                raise EdgeListParseError(path, lineno,
                                         f"negative vertex id in {line!r}")
            if u == v:
                raise EdgeListParseError(path, lineno,
                                         f"self-loop {u} {v}")
            w: int | None = None
            if len(parts) == 3:
                try:
                    w = int(parts[2])
                except ValueError:
                    raise EdgeListParseError(
                        path, lineno,
                        f"weight must be a non-negative integer, got "
                        f"{parts[2]!r}") from None
                if w < 0:
                    raise EdgeListParseError(
                        path, lineno, f"negative weight {w}")
            edges.append((u, v))
            weights.append(w)
            max_id = max(max_id, u, v)

    id_map: np.ndarray | None = None
    if relabel:
        ids = sorted({x for e in edges for x in e})
        remap = {orig: i for i, orig in enumerate(ids)}
        edges = [(remap[u], remap[v]) for u, v in edges]
        id_map = np.array(ids, dtype=np.int64)
        n = len(ids)
    else:
        n = max_id + 1
        if declared_n is not None:
            if declared_n < n:
                raise EdgeListParseError(
                    path, 1, f"n directive {declared_n} smaller than "
                    f"largest vertex id {max_id}")
            n = declared_n

    g = Graph(n)
    for (u, v), w in zip(edges, weights):
        g.add_edge(u, v, weight=w)
    g.original_ids = id_map
    return g


def write_id_map(g: Graph, path) -> None:
    """CSV mapping dense ids back to the external ids they replaced."""
    if g.original_ids is None:
        raise ValueError("graph has no relabeling id map")
    with open(path, "w") as f:
        f.write("new_id,original_id\n")
        for i, orig in enumerate(g.original_ids.tolist()):
            f.write(f"{i},{orig}\n")
