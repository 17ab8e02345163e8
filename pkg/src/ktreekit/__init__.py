"""Random k-tree graph models and higher-order structure analysis.

Generators for random k-trees, mixed k-trees, random partial k-trees,
and a preferential-attachment baseline; edge and clique embeddedness
metrics; k-clique community detection; distribution-law fitting; and a
CLI with end-to-end reproduction pipelines.
"""

from importlib import metadata as _metadata

try:
    __version__ = _metadata.version("ktreekit")
except _metadata.PackageNotFoundError:
    __version__ = "0.0.0+local"

from ._kernels import IMPL as KERNEL_IMPL
from .communities import (CommunityCover, community_size_distribution,
                          enumerate_k_cliques, k_clique_communities)
from .fitting import (PowerLawFit, Regime, RegimeFit, fit_power_law,
                      fit_two_regime, geometric_ratio)
from .generators import (RNG_ID, BASpec, CliqueRegistry, KTreeSpec,
                         MixedCliqueRegistry, MixedKTreeSpec, ModelSpec,
                         PartialKTreeSpec, gen_ba, gen_k_tree,
                         gen_mixed_k_tree, gen_partial_k_tree, generate)
from .graph_core import (EdgeListParseError, Graph, Histogram,
                         read_edge_list, write_edge_list)
from .metrics import (EmbeddednessRecord, clique_embeddedness_distribution,
                      contact_strength_by_embeddedness, degree_distribution,
                      edge_embeddedness, embeddedness_distribution,
                      embeddedness_records)
from .sampling import WalkConfig, mhrw_walk
from .theory import (KTreeConstants, beta_d, clique_count,
                     cliques_containing_edge, embeddedness_exponent,
                     triangle_prob, two_tree_law)

__all__ = [
    "BASpec", "CliqueRegistry", "CommunityCover", "EdgeListParseError",
    "EmbeddednessRecord", "Graph", "Histogram", "KERNEL_IMPL",
    "KTreeConstants", "KTreeSpec", "MixedCliqueRegistry", "MixedKTreeSpec",
    "ModelSpec", "PartialKTreeSpec", "PowerLawFit", "RNG_ID", "Regime",
    "RegimeFit", "WalkConfig", "beta_d", "clique_count",
    "clique_embeddedness_distribution", "cliques_containing_edge",
    "community_size_distribution", "contact_strength_by_embeddedness",
    "degree_distribution", "edge_embeddedness", "embeddedness_distribution",
    "embeddedness_exponent", "embeddedness_records", "enumerate_k_cliques",
    "fit_power_law", "fit_two_regime", "gen_ba", "gen_k_tree",
    "gen_mixed_k_tree", "gen_partial_k_tree", "generate", "geometric_ratio",
    "k_clique_communities", "mhrw_walk", "read_edge_list", "triangle_prob",
    "two_tree_law", "write_edge_list",
]
