import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tcentrality import shapes
from tcentrality.centrality import (
    Measure,
    betweenness,
    compute,
    expected_visits,
    pagerank,
    random_walk_betweenness,
    stress,
    transition_matrix,
)
from tcentrality.errors import InvalidDecay
from tcentrality.graph import TargetedGraph

from .strategies import targeted_graphs

EXACT = 1e-12


def close(vector, expected, tol=EXACT):
    assert set(vector) == set(expected)
    for v, x in expected.items():
        assert vector[v] == pytest.approx(x, abs=tol), v


def test_betweenness_twin_sources():
    close(betweenness(shapes.twin_sources_graph()), {"s1": 1, "s2": 2, "v1": 1, "v2": 2, "v3": 3})


def test_stress_twin_sources():
    # s2 reaches the target along two parallel copies, each weighted 2
    close(stress(shapes.twin_sources_graph()), {"s1": 1, "s2": 4, "v1": 1, "v2": 4, "v3": 5})


def test_betweenness_shortcut_triangle():
    close(betweenness(shapes.shortcut_triangle_graph()), {"s": 1, "v": 0, "t": 1})


def test_rwb_shortcut_triangle_and_reversal():
    assert random_walk_betweenness(shapes.shortcut_triangle_graph())["v"] == pytest.approx(0.5, abs=EXACT)
    assert random_walk_betweenness(shapes.shortcut_triangle_reversed())["v"] == pytest.approx(2 / 3, abs=EXACT)


def test_rwb_two_source_fan():
    close(random_walk_betweenness(shapes.two_source_fan_graph()), {"s1": 1, "s2": 1, "v1": 1, "v2": 0.5, "t": 2})


def test_pagerank_two_source_fan_half_decay():
    # mass reaching t: s1 -> t gives 1/4, and each of s1 -> v1, s2 -> v1, s2 -> v2 forwards 1/8
    close(pagerank(shapes.two_source_fan_graph(), 0.5), {"s1": 1, "s2": 1, "v1": 0.5, "v2": 0.25, "t": 0.625})


@pytest.mark.parametrize("k", [1, 2, 5, 10])
def test_baselines(k):
    g = shapes.baseline_graph(k)
    close(stress(g), {"s": k, "t": k})
    close(betweenness(g), {"s": 1, "t": 1})
    close(random_walk_betweenness(g), {"s": 1, "t": 1})
    close(pagerank(g, 0.85), {"s": 1, "t": 0.85})


def test_target_outgoing_edges_ignored_by_walks():
    g = shapes.shortcut_triangle_graph()
    order, p = transition_matrix(g)
    assert not p[order.index("t")].any()
    assert np.allclose(p.sum(axis=1)[[i for i, v in enumerate(order) if v != "t"]], 1)


def test_self_loop_increases_visits():
    g = TargetedGraph.build([("s", "s"), ("s", "t")], weights={"s": 1})
    close(random_walk_betweenness(g), {"s": 2, "t": 1})


def test_decay_bounds():
    g = shapes.baseline_graph(1)
    with pytest.raises(InvalidDecay):
        expected_visits(g, 1.5)
    with pytest.raises(InvalidDecay):
        pagerank(g, 1.0)
    with pytest.raises(InvalidDecay):
        Measure("pagerank")
    with pytest.raises(ValueError):
        Measure("rwb", 0.5)
    with pytest.raises(ValueError):
        Measure("closeness")


def test_zero_decay_returns_weights():
    g = shapes.two_source_fan_graph()
    close(pagerank(g, 0.0), {"s1": 1, "s2": 1, "v1": 0, "v2": 0, "t": 0})


def test_compute_dispatch_and_labels():
    g = shapes.diamond_graph()
    assert compute(g, "betweenness")["a"] == pytest.approx(0.5)
    assert Measure("pagerank", 0.5).label == "pagerank(a=0.5)"
    assert Measure("rwb").random_walk and not Measure("stress").random_walk


def test_zero_weight_graph_is_all_zero():
    g = shapes.diamond_graph().with_weights({})
    for name in ("stress", "betweenness", "rwb"):
        assert all(x == 0 for x in compute(g, name).values())


@settings(max_examples=60, deadline=None)
@given(targeted_graphs(), st.sampled_from(["stress", "betweenness", "rwb"]))
def test_values_nonnegative_and_source_lower_bound(g, name):
    f = compute(g, name)
    for v in g.nodes:
        assert f[v] >= 0
    if name != "stress":
        # every source lies on all its own paths and is visited at least once
        for v, b in g.weights.items():
            assert f[v] >= b - 1e-9


@settings(max_examples=60, deadline=None)
@given(targeted_graphs())
def test_target_value_is_total_weight_for_betweenness_and_rwb(g):
    total = g.weights.total()
    assert betweenness(g)["t"] == pytest.approx(total, abs=1e-9)
    assert random_walk_betweenness(g)["t"] == pytest.approx(total, abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(targeted_graphs(), st.floats(0, 0.99))
def test_pagerank_monotone_in_decay(g, a):
    low, high = pagerank(g, a * 0.5), pagerank(g, a)
    for v in g.nodes:
        assert low[v] <= high[v] + 1e-9
