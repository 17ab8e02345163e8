"""Seeded random-graph generators.

Covers the pure random k-tree process, the mixed-size variant, random
partial k-trees (k-tree minus r uniformly removed edges), and the
preferential-attachment baseline. Every generator is deterministic for
a fixed seed: one PCG64 stream per run (RNG_ID names the algorithm for
run manifests), consumed in a fixed order.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from itertools import combinations
from typing import Union

import numpy as np

from .graph_core import Graph

RNG_ID = "numpy-PCG64"

# Per-vertex bookkeeping of the mixed registry costs O(2^k2) in the
# worst case, so keep the top clique size bounded.
MAX_MIXED_K2 = 16


class CliqueRegistry:
    """Append-only store of the k-cliques of a growing k-tree.

    Cliques are rows of a preallocated integer array (each row sorted
    ascending), so uniform selection is plain row indexing. k-tree
    growth never destroys a clique, which is what makes append-only
    storage exact.
    """

    __slots__ = ("k", "_rows", "_size")

    def __init__(self, k: int, capacity: int):
        self.k = k
        self._rows = np.empty((capacity, k), dtype=np.int32)
        self._size = 0

    def __len__(self) -> int:
        return self._size

    @property
    def cliques(self) -> np.ndarray:
        """(len, k) view of all registered cliques."""
        return self._rows[:self._size]

    def clique(self, i: int) -> tuple[int, ...]:
        if not 0 <= i < self._size:
            raise IndexError(f"clique index {i} out of range")
        return tuple(int(x) for x in self._rows[i])

    def as_tuples(self) -> list[tuple[int, ...]]:
        return [tuple(int(x) for x in row) for row in self.cliques]


def _seed_clique(g: Graph, k: int) -> None:
    for u in range(k):
        for v in range(u + 1, k):
            g.add_edge(u, v)


def _grow_k_tree(g: Graph, k: int, n: int,
                 rng: np.random.Generator) -> CliqueRegistry:
    registry = CliqueRegistry(k, (n - k) * k + 1)
    rows = registry._rows
    rows[0] = np.arange(k, dtype=np.int32)
    size = 1
    if n > k:
        # count of cliques when vertex k+t is added is 1 + t*k
        highs = 1 + k * np.arange(n - k, dtype=np.int64)
        picks = rng.integers(0, highs)
        for t in range(n - k):
            v = k + t
            chosen = rows[picks[t]]
            for u in chosen.tolist():
                g.add_edge(u, int(v))
            # k new cliques: drop one vertex of the chosen clique, add v
            # (v is the largest id, so rows stay sorted)
            for j in range(k):
                row = rows[size + j]
                row[:j] = chosen[:j]
                row[j:k - 1] = chosen[j + 1:]
                row[k - 1] = v
            size += k
    registry._size = size
    return registry


def gen_k_tree(k: int, n: int, seed: int
               ) -> tuple[Graph, CliqueRegistry, list[int]]:
    """Random k-tree on n vertices.

    Starts from the complete graph on 0..k-1 and attaches each new
    vertex to a k-clique drawn uniformly from all k-cliques built so
    far. Returns the graph, the clique registry ((n-k)k + 1 entries),
    and the vertex birth order (identical to id order; the reverse is a
    perfect elimination ordering).
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if n < k:
        raise ValueError(f"need n >= k, got n={n}, k={k}")
    rng = np.random.default_rng(seed)
    g = Graph(n)
    _seed_clique(g, k)
    registry = _grow_k_tree(g, k, n, rng)
    return g, registry, list(range(n))


class MixedCliqueRegistry:
    """Complete per-size clique registries of a mixed k-tree, stored
    implicitly.

    Materializing every clique of every size in [k1, k2] costs up to
    2^k2 entries per vertex, which is gigabytes at n=1e5, k2=12.
    Instead each attachment event is recorded once, together with
    per-size cumulative counts of the cliques it created; uniform
    selection draws a global index, locates the event by bisection, and
    unranks the subset inside the event. Any clique of size j decomposes
    uniquely as {v} u S with v its youngest vertex and S a (j-1)-subset
    of v's attachment clique, so the implicit enumeration is exact and
    duplicate-free.
    """

    def __init__(self, k1: int, k2: int):
        self.k1 = k1
        self.k2 = k2
        # events[0] is the seed k2-clique; events[t] = (v, attachment)
        self._events: list[tuple[int, tuple[int, ...]] | None] = [None]
        self._cum: dict[int, list[int]] = {
            j: [math.comb(k2, j)] for j in range(k1, k2 + 1)
        }
        self._comb_cache: dict[tuple[int, int], list[tuple[int, ...]]] = {}

    def _combs(self, m: int, r: int) -> list[tuple[int, ...]]:
        key = (m, r)
        out = self._comb_cache.get(key)
        if out is None:
            out = list(combinations(range(m), r))
            self._comb_cache[key] = out
        return out

    def record(self, v: int, attachment: tuple[int, ...]) -> None:
        self._events.append((v, attachment))
        m = len(attachment)
        for j in range(self.k1, self.k2 + 1):
            created = math.comb(m, j - 1) if j - 1 <= m else 0
            cum = self._cum[j]
            cum.append(cum[-1] + created)

    def count(self, j: int) -> int:
        """Number of j-cliques currently in the graph."""
        return self._cum[j][-1]

    def decode(self, j: int, index: int) -> tuple[int, ...]:
        """The index-th j-clique in registry order (sorted tuple)."""
        cum = self._cum[j]
        if not 0 <= index < cum[-1]:
            raise IndexError(f"clique index {index} out of range")
        e = bisect_right(cum, index)
        within = index - (cum[e - 1] if e > 0 else 0)
        if e == 0:
            return self._combs(self.k2, j)[within]
        v, attachment = self._events[e]
        picks = self._combs(len(attachment), j - 1)[within]
        return tuple(attachment[i] for i in picks) + (v,)

    def select(self, j: int, rng: np.random.Generator) -> tuple[int, ...]:
        return self.decode(j, int(rng.integers(self.count(j))))

    def cliques_of_size(self, j: int) -> list[tuple[int, ...]]:
        """Materialize the full size-j list (test/diagnostic use)."""
        return [self.decode(j, i) for i in range(self.count(j))]


def gen_mixed_k_tree(k1: int, k2: int, probs, n: int, seed: int,
                     with_registry: bool = False):
    """Mixed random k-tree: the attachment clique size of each added
    vertex is drawn from probs over [k1, k2].

    The seed graph is a k2-clique. Per-vertex size draws are
    independent of the past. Returns the Graph, or (Graph,
    MixedCliqueRegistry) when with_registry is set.
    """
    if k1 < 2:
        raise ValueError(f"k1 must be at least 2, got {k1}")
    if k2 <= k1:
        raise ValueError(f"need k1 < k2, got k1={k1}, k2={k2}")
    if k2 > MAX_MIXED_K2:
        raise ValueError(f"k2={k2} exceeds the supported cap {MAX_MIXED_K2}")
    if n < k2:
        raise ValueError(f"need n >= k2, got n={n}, k2={k2}")
    p = np.asarray(probs, dtype=np.float64)
    if p.shape != (k2 - k1 + 1,):
        raise ValueError(
            f"probs must have one entry per size in [{k1}, {k2}], "
            f"got {p.shape[0] if p.ndim == 1 else p.shape}")
    if np.any(p < 0):
        raise ValueError("probs must be non-negative")
    if abs(p.sum() - 1.0) > 1e-9:
        raise ValueError(f"probs must sum to 1, got {p.sum()!r}")

    rng = np.random.default_rng(seed)
    g = Graph(n)
    _seed_clique(g, k2)
    registry = MixedCliqueRegistry(k1, k2)
    if n > k2:
        draws = rng.choice(np.arange(k1, k2 + 1), size=n - k2, p=p)
        for t in range(n - k2):
            v = k2 + t
            ki = int(draws[t])
            attachment = registry.select(ki, rng)
            for u in attachment:
                g.add_edge(u, v)
            registry.record(v, attachment)
    if with_registry:
        return g, registry
    return g


def gen_partial_k_tree(k: int, n: int, r: int, seed: int) -> Graph:
    """Random partial k-tree: a random k-tree with r edges removed
    uniformly at random, without replacement.

    r=0 reproduces gen_k_tree(k, n, seed) bit for bit.
    """
    full = k * (n - k) + k * (k - 1) // 2
    if not 0 <= r <= full:
        raise ValueError(f"r must be in [0, {full}], got {r}")
    rng = np.random.default_rng(seed)
    g = Graph(n)
    _seed_clique(g, k)
    _grow_k_tree(g, k, n, rng)
    if r == 0:
        return g
    edges = list(g.edges())
    # Fisher-Yates prefix: positions 0..r-1 become the removed sample
    for i in range(r):
        j = int(rng.integers(i, len(edges)))
        edges[i], edges[j] = edges[j], edges[i]
    out = Graph(n)
    for u, v in edges[r:]:
        out.add_edge(u, v)
    return out


def gen_ba(m: int, n: int, seed: int) -> Graph:
    """Preferential-attachment baseline.

    Seeded with the complete graph on m+1 vertices; each later vertex
    connects to m distinct existing vertices, each drawn with
    probability proportional to its current degree (duplicate draws are
    rejected and redrawn). Final edge count: m(m+1)/2 + m(n-m-1).
    """
    if m < 1:
        raise ValueError(f"m must be at least 1, got {m}")
    if n <= m:
        raise ValueError(f"need n > m, got n={n}, m={m}")
    if n < m + 1:
        raise ValueError(f"need n >= m+1, got n={n}, m={m}")
    rng = np.random.default_rng(seed)
    g = Graph(n)
    # degree-proportional sampling via the repeated-endpoints list
    targets: list[int] = []
    for u in range(m + 1):
        for v in range(u + 1, m + 1):
            g.add_edge(u, v)
        targets.extend([u] * m)
    for v in range(m + 1, n):
        chosen: set[int] = set()
        while len(chosen) < m:
            w = targets[int(rng.integers(len(targets)))]
            chosen.add(w)
        for u in sorted(chosen):
            g.add_edge(u, v)
            targets.append(u)
        targets.extend([v] * m)
    return g


@dataclass(frozen=True)
class KTreeSpec:
    k: int
    n: int
    seed: int

    def describe(self) -> str:
        return f"model=ktree k={self.k} n={self.n} seed={self.seed}"

    def build(self) -> Graph:
        g, _, _ = gen_k_tree(self.k, self.n, self.seed)
        return g


@dataclass(frozen=True)
class MixedKTreeSpec:
    k1: int
    k2: int
    probs: tuple[float, ...]
    n: int
    seed: int

    def describe(self) -> str:
        ps = ",".join(repr(p) for p in self.probs)
        return (f"model=mixed k1={self.k1} k2={self.k2} probs={ps} "
                f"n={self.n} seed={self.seed}")

    def build(self) -> Graph:
        return gen_mixed_k_tree(self.k1, self.k2, self.probs, self.n,
                                self.seed)


@dataclass(frozen=True)
class PartialKTreeSpec:
    k: int
    n: int
    r: int
    seed: int

    def describe(self) -> str:
        return (f"model=partial k={self.k} n={self.n} r={self.r} "
                f"seed={self.seed}")

    def build(self) -> Graph:
        return gen_partial_k_tree(self.k, self.n, self.r, self.seed)


@dataclass(frozen=True)
class BASpec:
    m: int
    n: int
    seed: int

    def describe(self) -> str:
        return f"model=ba m={self.m} n={self.n} seed={self.seed}"

    def build(self) -> Graph:
        return gen_ba(self.m, self.n, self.seed)


ModelSpec = Union[KTreeSpec, MixedKTreeSpec, PartialKTreeSpec, BASpec]


def generate(spec: ModelSpec) -> Graph:
    """Build the graph described by a model spec (dispatch helper)."""
    return spec.build()
