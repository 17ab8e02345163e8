"""Kernel selection: compiled extension when available, pure Python otherwise.

Set KTREEKIT_PURE=1 to force the pure-Python kernels (used by the
benchmark and for debugging). ``IMPL`` names the active implementation.
"""

from __future__ import annotations

import os

from . import pyref

if os.environ.get("KTREEKIT_PURE"):
    _impl = pyref
    IMPL = "python"
else:
    try:
        from . import _native as _impl  # type: ignore[no-redef]

        IMPL = "cython"
    except ImportError:
        _impl = pyref
        IMPL = "python"

edge_embeddedness_all = _impl.edge_embeddedness_all
enumerate_cliques = _impl.enumerate_cliques
common_neighbor_counts = _impl.common_neighbor_counts

__all__ = [
    "IMPL",
    "common_neighbor_counts",
    "edge_embeddedness_all",
    "enumerate_cliques",
    "pyref",
]
