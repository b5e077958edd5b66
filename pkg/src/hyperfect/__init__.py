"""hyperfect: exact verification of perfectness notions for k-uniform hypergraphs."""

from .core import (
    BudgetExceededError,
    Graph,
    KHypergraph,
    KhgParseError,
    are_isomorphic,
    complete_bipartite_graph,
    complete_graph,
    complete_hypergraph,
    cycle_graph,
    empty_graph,
    empty_hypergraph,
    enumerate_hypergraphs,
    graph_of,
    iso_classes,
    parse_khg,
    path_graph,
    petersen_graph,
    random_hypergraph,
    to_khg,
)

__version__ = "0.1.0"
