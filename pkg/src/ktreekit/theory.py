"""Closed-form k-tree structure oracles.

Exact counting identities and limit curves for the random k-tree
process: clique counts, per-edge clique membership, the single-step
triangle probability, asymptotic embeddedness exponents, and the
stationary coefficient curve beta_d used as a reference against
empirical histograms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class KTreeConstants:
    """Constants of the k-tree growth recursion."""

    k: int

    def __post_init__(self):
        if self.k < 2:
            raise ValueError(f"k must be at least 2, got {self.k}")

    @property
    def a_k(self) -> int:
        return self.k - 2

    @property
    def b_k(self) -> int:
        return (self.k - 1) * (self.k - 3)

    def c_k(self, n: int) -> float:
        """Finite-size normalizer; tends to k as n grows."""
        return self.k - (self.k * self.k - 1) / n


def clique_count(k: int, n: int) -> int:
    """Number of k-cliques in a k-tree on n vertices: (n-k)k + 1.

    The seed clique contributes one; every added vertex creates exactly
    k new k-cliques.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    if n < k:
        raise ValueError(f"need n >= k, got n={n}, k={k}")
    return (n - k) * k + 1


def cliques_containing_edge(k: int, emb: int) -> int:
    """Number of k-cliques through an edge with the given embeddedness.

    An edge is born inside k-1 k-cliques and gains k-2 more for every
    later common neighbor: (k-1) + (k-2)(emb - (k-1)).
    """
    if k <= 2:
        raise ValueError(f"k must exceed 2, got {k}")
    if emb < k - 1:
        raise ValueError(
            f"embeddedness below k-1 is impossible for a grown edge "
            f"(emb={emb}, k={k})")
    return (k - 1) + (k - 2) * (emb - (k - 1))


def triangle_prob(k: int, d: int, n: int) -> float:
    """Probability that the next added vertex completes a triangle with
    a fixed edge of embeddedness d in a k-tree on n vertices.

    Computed as the exact ratio cliques_containing_edge / clique_count;
    the numerator equals (k-2)d - b_k and the denominator equals
    c_k(n) * n exactly, so this is the closed-form rate as well.
    """
    if n <= k:
        raise ValueError(f"need n > k, got n={n}, k={k}")
    return cliques_containing_edge(k, d) / clique_count(k, n)


def embeddedness_exponent(k: int, h: int = 2) -> float:
    """Asymptotic tail exponent of h-clique embeddedness: 1 + k/(k-h).

    h=2 is the per-edge case.
    """
    if h < 2:
        raise ValueError(f"h must be at least 2, got {h}")
    if h >= k:
        raise ValueError(f"need h < k, got h={h}, k={k}")
    return 1.0 + k / (k - h)


def beta_d(k: int, d) -> float | np.ndarray:
    """Stationary embeddedness coefficient beta_d (up to normalization).

    beta_d = Gamma(d - b_k/a_k) / Gamma(d - b_k/a_k + k/a_k + 1),
    evaluated through log-gamma differences so it stays finite for d up
    to 1e6 and beyond. Accepts a scalar or an array of d values; every
    d must be at least k-1.
    """
    if k <= 2:
        raise ValueError(f"k must exceed 2, got {k}")
    c = KTreeConstants(k)
    r = c.b_k / c.a_k
    s = k / c.a_k + 1.0
    arr = np.asarray(d, dtype=np.float64)
    if np.any(arr < k - 1):
        raise ValueError(f"d must be at least k-1={k - 1}")
    if arr.ndim == 0:
        x = float(arr)
        return math.exp(math.lgamma(x - r) - math.lgamma(x - r + s))
    out = np.empty(arr.shape, dtype=np.float64)
    flat_in = arr.ravel()
    flat_out = out.ravel()
    for i in range(flat_in.size):
        x = flat_in[i]
        flat_out[i] = math.exp(math.lgamma(x - r) - math.lgamma(x - r + s))
    return out


def beta_recursion_factor(k: int, d: int) -> float:
    """One step of the beta recursion:
    beta_d / beta_{d-1} = (a_k(d-1) - b_k) / (a_k d - b_k + k)."""
    c = KTreeConstants(k)
    if d <= k - 1:
        raise ValueError(f"recursion applies for d > k-1, got d={d}")
    return (c.a_k * (d - 1) - c.b_k) / (c.a_k * d - c.b_k + k)


def two_tree_law(d: int) -> float:
    """Embeddedness law of random 2-trees: 3^(-d)."""
    if d < 1:
        raise ValueError(f"d must be at least 1, got {d}")
    return 3.0 ** (-d)


def reference_curve(k: int, dmax: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(d, beta_d, d^-alpha) for d = k-1 .. dmax, for plotting against
    empirical embeddedness histograms."""
    if dmax < k - 1:
        raise ValueError(f"dmax must be at least k-1={k - 1}")
    ds = np.arange(k - 1, dmax + 1, dtype=np.int64)
    betas = beta_d(k, ds)
    alpha = embeddedness_exponent(k)
    return ds, betas, ds.astype(np.float64) ** (-alpha)
