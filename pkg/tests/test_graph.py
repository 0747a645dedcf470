import pytest
from hypothesis import given

from tcentrality import shapes
from tcentrality.errors import (
    InvalidMerge,
    MissingEdge,
    NotInClass,
    RedirectTarget,
    SwapFromTarget,
    TargetMismatch,
    UnknownNode,
)
from tcentrality.graph import (
    MultiDigraph,
    TargetedGraph,
    WeightVector,
    are_out_twins,
    edge_swap,
    graph_equality,
    graph_sum,
    merge_nodes,
    multiply_out_edges,
    redirect_node,
    remove_edges,
    rename_node,
    reverse,
    shortest_path_counts,
    validate_class,
)

from .strategies import targeted_graphs


class TestWeightVector:
    def test_missing_nodes_read_as_zero(self):
        assert WeightVector({"a": 2})["b"] == 0

    def test_zero_entries_are_dropped(self):
        assert WeightVector({"a": 0, "b": 1}) == WeightVector({"b": 1})
        assert len(WeightVector({"a": 0})) == 0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            WeightVector({"a": -1})

    def test_arithmetic(self):
        b = WeightVector({"a": 1, "b": 2}) + {"b": 1, "c": 4}
        assert b == WeightVector({"a": 1, "b": 3, "c": 4})
        assert 2 * WeightVector.unit("a", 1.5) == WeightVector({"a": 3})
        assert b.total() == 8


class TestMultiDigraph:
    def test_pairs_accumulate(self):
        g = MultiDigraph(["a", "b"], [("a", "b"), ("a", "b"), (("b", "a"), 3)])
        assert g.multiplicity("a", "b") == 2
        assert g.multiplicity("b", "a") == 3
        assert g.out_degree("a") == 2
        assert g.in_degree("a") == 3
        assert g.total_multiplicity() == 5

    def test_edge_endpoints_become_nodes(self):
        assert MultiDigraph(edges=[("x", "y")]).nodes == {"x", "y"}

    def test_self_loops(self):
        g = MultiDigraph(edges=[(("a", "a"), 2)])
        assert g.successors("a") == {"a": 2}
        assert g.predecessors("a") == {"a": 2}

    def test_unknown_node(self):
        with pytest.raises(UnknownNode):
            MultiDigraph(["a"]).successors("z")

    def test_reachability(self):
        g = MultiDigraph(edges=[("a", "b"), ("b", "c"), ("d", "c")])
        assert g.reaching("c") == {"a", "b", "c", "d"}
        assert g.reachable_from("a") == {"a", "b", "c"}


class TestClass:
    def test_single_target_graph(self):
        g = TargetedGraph(MultiDigraph(["t"]), "t")
        assert validate_class(g)

    def test_stranded_node_rejected(self):
        with pytest.raises(NotInClass) as exc:
            TargetedGraph.build([("a", "t"), ("t", "b")])
        assert exc.value.node == "b"

    def test_target_may_be_a_sink(self):
        g = TargetedGraph.build([("s", "t")])
        assert g.out_degree("t") == 0

    def test_weights_need_known_nodes(self):
        with pytest.raises(UnknownNode):
            TargetedGraph.build([("s", "t")], weights={"z": 1})

    def test_validate_class_on_plain_graph(self):
        assert not validate_class(MultiDigraph(edges=[("t", "a")]), "t")


class TestOperations:
    def test_graph_sum(self):
        left, right = shapes.twin_sources_parts()
        assert graph_equality(graph_sum(left, right), shapes.twin_sources_proxied())

    def test_graph_sum_needs_same_target(self):
        with pytest.raises(TargetMismatch):
            graph_sum(shapes.baseline_graph(1), shapes.baseline_graph(1, t="u"))

    def test_merge_moves_edges_and_weight(self):
        g = TargetedGraph.build([("a", "b"), ("b", "t"), ("a", "t")], weights={"a": 1, "b": 2})
        m = merge_nodes(g, "a", "b")
        assert m.nodes == {"b", "t"}
        assert m.multiplicity("b", "b") == 1
        assert m.multiplicity("b", "t") == 2
        assert m.weights == WeightVector({"b": 3})

    def test_merge_target_requires_retarget(self):
        g = shapes.twin_sources_redirected()
        with pytest.raises(InvalidMerge):
            merge_nodes(g, "v3", "v2")
        assert graph_equality(merge_nodes(g, "v3", "v2", retarget=True), shapes.twin_sources_proxied())

    def test_merge_into_self(self):
        with pytest.raises(InvalidMerge):
            merge_nodes(shapes.diamond_graph(), "a", "a")

    def test_redirect_twins(self):
        g = shapes.twin_sources_graph()
        assert are_out_twins(g, "v1", "v2")
        assert graph_equality(redirect_node(g, "v1", "v2"), shapes.twin_sources_redirected())

    def test_redirect_keeps_self_loop(self):
        g = TargetedGraph.build([("a", "a"), ("a", "t"), ("b", "t")])
        r = redirect_node(g, "a", "b")
        assert r.multiplicity("b", "b") == 1
        assert r.multiplicity("b", "t") == 1

    def test_redirect_parallel_twins_keep_k_edges(self):
        g = TargetedGraph.build([(("a", "t"), 3), (("b", "t"), 3)])
        assert redirect_node(g, "a", "b").multiplicity("b", "t") == 3

    def test_redirect_target_rejected(self):
        with pytest.raises(RedirectTarget):
            redirect_node(shapes.diamond_graph(), "t", "a")

    def test_reverse(self):
        g = reverse(shapes.shortcut_triangle_graph(), "s").with_weights({"t": 1})
        assert graph_equality(g, shapes.shortcut_triangle_reversed())

    def test_reverse_can_leave_class(self):
        with pytest.raises(NotInClass):
            reverse(shapes.diamond_graph(), "a")

    def test_edge_swap(self):
        g = edge_swap(shapes.two_source_fan_graph(), ("s1", "t"), ("s2", "v1"))
        assert graph_equality(g, shapes.two_source_fan_swapped())

    def test_edge_swap_same_edge_is_identity(self):
        g = shapes.baseline_graph(2)
        assert graph_equality(edge_swap(g, ("s", "t"), ("s", "t")), g)

    def test_edge_swap_errors(self):
        g = shapes.shortcut_triangle_graph()
        with pytest.raises(SwapFromTarget):
            edge_swap(g, ("t", "v"), ("s", "v"))
        with pytest.raises(MissingEdge):
            edge_swap(g, ("v", "s"), ("s", "v"))

    def test_multiply_out_edges(self):
        g = multiply_out_edges(shapes.two_source_fan_unified(), "s1", 1)
        assert g.multiplicity("s1", "v1") == 2
        assert graph_equality(multiply_out_edges(g, "s1", 0), g)

    def test_remove_edges(self):
        g = remove_edges(shapes.two_source_fan_swapped(), ("s1", "v1"))
        assert graph_equality(g, shapes.two_source_fan_unified())
        with pytest.raises(MissingEdge):
            remove_edges(g, ("s1", "v1"), 2)

    def test_remove_edges_can_leave_class(self):
        with pytest.raises(NotInClass):
            remove_edges(shapes.baseline_graph(1), ("s", "t"))

    def test_rename(self):
        g = rename_node(shapes.twin_sources_graph(), "v1", "x1")
        assert "x1" in g and "v1" not in g
        assert g.multiplicity("s1", "x1") == 1


class TestShortestPathCounts:
    def test_baseline(self):
        table = shortest_path_counts(shapes.baseline_graph(3), "s")
        assert table.sigma_total == 3
        assert table.sigma_through == {"s": 3, "t": 3}

    def test_target_source_uses_empty_path(self):
        table = shortest_path_counts(shapes.shortcut_triangle_graph(), "t")
        assert table.sigma_total == 1
        assert table.sigma_through == {"t": 1}

    def test_parallel_edges_multiply(self):
        table = shortest_path_counts(shapes.twin_sources_graph(), "s2")
        assert table.sigma_total == 2
        assert table.sigma_through["v2"] == 2

    def test_longer_route_not_counted(self):
        table = shortest_path_counts(shapes.shortcut_triangle_graph(), "s")
        assert table.sigma_total == 1
        assert "v" not in table.sigma_through


@given(targeted_graphs())
def test_sum_with_lone_target_is_identity(g):
    lone = TargetedGraph(MultiDigraph(["t"]), "t")
    assert graph_equality(graph_sum(g, lone), g)


@given(targeted_graphs())
def test_reverse_twice_is_identity(g):
    try:
        back = reverse(reverse(g, "t"), "t")
    except NotInClass:
        return
    assert graph_equality(back, g)


@given(targeted_graphs())
def test_through_counts_bounded_by_total(g):
    for s in g.nodes:
        table = shortest_path_counts(g, s)
        assert table.sigma_total >= 1
        assert table.sigma_through[s] == table.sigma_total
        assert table.sigma_through["t"] == table.sigma_total
        assert all(0 < c <= table.sigma_total for c in table.sigma_through.values())
