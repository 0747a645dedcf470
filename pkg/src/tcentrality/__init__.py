"""Target-oriented medial centralities on directed multigraphs, with an axiom harness."""

from .centrality import (
    MEASURES,
    CentralityVector,
    Measure,
    betweenness,
    compute,
    expected_visits,
    pagerank,
    random_walk_betweenness,
    stress,
)
from .graph import MultiDigraph, TargetedGraph, WeightVector
from .textformat import format_graph, parse_graph, read_graph

__all__ = [
    "MEASURES",
    "CentralityVector",
    "Measure",
    "MultiDigraph",
    "TargetedGraph",
    "WeightVector",
    "betweenness",
    "compute",
    "expected_visits",
    "format_graph",
    "pagerank",
    "parse_graph",
    "random_walk_betweenness",
    "read_graph",
    "stress",
]
