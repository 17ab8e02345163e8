"""Metropolis-Hastings random-walk sampling of large graphs.

From the current vertex v a uniform neighbor w is proposed and accepted
with probability min(1, deg(v)/deg(w)); rejected proposals keep the
walker in place and the repeat visit is recorded, which is what gives
the chain its uniform stationary distribution over vertices (the
"unbiased sample" property). The returned subgraph is vertex-induced on
the distinct post-burn-in visits, keeping every edge of the host graph
between them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph_core import Graph


@dataclass(frozen=True)
class WalkConfig:
    """Walk length, burn-in (defaults to 10% of steps), start vertex
    ("random" picks uniformly among non-isolated vertices), and seed."""

    steps: int
    burn_in: int | None = None
    start: int | str = "random"
    seed: int = 0

    def effective_burn_in(self) -> int:
        b = self.steps // 10 if self.burn_in is None else self.burn_in
        if b < 0:
            raise ValueError(f"burn-in must be non-negative, got {b}")
        if self.steps <= b:
            raise ValueError(
                f"steps ({self.steps}) must exceed burn-in ({b})")
        return b


def mhrw_walk(g: Graph, cfg: WalkConfig) -> tuple[np.ndarray, Graph]:
    """Run the walk; returns (visit sequence, induced subgraph).

    The visit sequence has steps+1 entries including the start and
    every self-transition. The walk stays inside the start vertex's
    connected component. The subgraph is relabeled to dense ids with
    original_ids mapping back to host-graph vertices.
    """
    burn = cfg.effective_burn_in()
    rng = np.random.default_rng(cfg.seed)
    degs = g.degrees()
    if cfg.start == "random":
        alive = np.flatnonzero(degs > 0)
        if alive.size == 0:
            raise ValueError("graph has no edges to walk on")
        start = int(alive[int(rng.integers(alive.size))])
    else:
        start = int(cfg.start)
        if not 0 <= start < g.n:
            raise ValueError(f"start vertex {start} out of range")
        if degs[start] == 0:
            raise ValueError(f"start vertex {start} is isolated")

    nbrs = [sorted(g.neighbors(v)) for v in range(g.n)]
    deg = degs.tolist()
    u_prop = rng.random(cfg.steps)
    u_acc = rng.random(cfg.steps)
    visits = np.empty(cfg.steps + 1, dtype=np.int64)
    v = start
    visits[0] = v
    for t in range(cfg.steps):
        nv = nbrs[v]
        w = nv[int(u_prop[t] * len(nv))]
        # accept with min(1, deg(v)/deg(w)); stay put otherwise
        if deg[v] >= deg[w] or u_acc[t] * deg[w] < deg[v]:
            v = w
        visits[t + 1] = v

    kept = np.unique(visits[burn:])
    remap = {int(orig): i for i, orig in enumerate(kept)}
    sub = Graph(len(kept))
    kept_set = set(remap)
    for orig in kept.tolist():
        for w in g.neighbors(orig):
            if w > orig and w in kept_set:
                sub.add_edge(remap[orig], remap[w])
    sub.original_ids = kept.astype(np.int64)
    return visits, sub
