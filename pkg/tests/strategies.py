from hypothesis import strategies as st

from tcentrality.graph import MultiDigraph, TargetedGraph, WeightVector


@st.composite
def targeted_graphs(draw, max_nodes=6, max_multiplicity=3, positive_weight=True):
    """Small graphs in which every node reaches ``t``; stranded nodes get an edge to ``t``."""
    n = draw(st.integers(1, max_nodes))
    nodes = ["t"] + [f"n{i}" for i in range(1, n)]
    pair = st.tuples(st.sampled_from(nodes), st.sampled_from(nodes))
    edges = draw(st.dictionaries(pair, st.integers(1, max_multiplicity), max_size=3 * n))
    graph = MultiDigraph(nodes, edges)
    reach = graph.reaching("t")
    for v in nodes:
        if v not in reach:
            edges[(v, "t")] = edges.get((v, "t"), 0) + 1
    weight = st.floats(0, 5, allow_nan=False).map(lambda x: round(x, 3))
    weights = draw(st.dictionaries(st.sampled_from(nodes), weight, max_size=n))
    if positive_weight and not any(weights.values()):
        weights[draw(st.sampled_from(nodes))] = 1.0
    return TargetedGraph(MultiDigraph(nodes, edges), "t", WeightVector(weights))
