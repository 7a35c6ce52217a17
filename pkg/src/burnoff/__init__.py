"""Exact and simulated length distributions of burn-off chip-firing games."""

from .bijection import SpanningTree, config_to_tree, tree_to_config
from .chips import (
    Configuration,
    ConfigurationError,
    GameResult,
    burn,
    fire,
    is_legal,
    is_recurrent_reachable,
    relax,
    reverse_fire,
    seed_and_relax,
)
from .enumeration import (
    LengthDistribution,
    count_length_ell_pairs,
    count_length_zero_pairs,
    count_R,
    distribution_analytic,
    distribution_oracle,
    enumerate_R_bruteforce,
)
from .graph import (
    ConeGraph,
    Graph,
    GraphError,
    ScaleError,
    cone,
    enumerate_rooted_subtrees,
    enumerate_spanning_trees,
    tree_count,
    tree_count_minus_edge,
)
from .markov import chain_init, chain_step, run_simulation, visitation_uniformity

__version__ = "0.1.0"
