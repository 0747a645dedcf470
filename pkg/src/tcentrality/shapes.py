"""Small hand-built graphs with known centrality values.

They serve as fixtures and as the first candidates tried when searching for
axiom violations.
"""

from __future__ import annotations

from .graph import TargetedGraph


def baseline_graph(k: int, s: str = "s", t: str = "t", weight: float = 1) -> TargetedGraph:
    """Two nodes joined by ``k`` parallel edges ``s -> t``, unit weight on ``s``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return TargetedGraph.build({(s, t): k}, target=t, weights={s: weight})


def twin_sources_graph() -> TargetedGraph:
    """Two sources (weights 1 and 2) whose intermediaries ``v1``, ``v2`` are out-twins.

    Betweenness: s1=1, v1=1, s2=2, v2=2, v3=3.
    """
    return TargetedGraph.build(
        {("s1", "v1"): 1, ("s2", "v2"): 2, ("v2", "v3"): 1, ("v3", "v2"): 1, ("v1", "v3"): 1},
        target="v3",
        weights={"s1": 1, "s2": 2},
    )


def twin_sources_redirected() -> TargetedGraph:
    """``twin_sources_graph`` after redirecting ``v1`` into ``v2``."""
    return TargetedGraph.build(
        {("s1", "v2"): 1, ("s2", "v2"): 2, ("v2", "v3"): 1, ("v3", "v2"): 1},
        target="v3",
        weights={"s1": 1, "s2": 2},
    )


def twin_sources_proxied() -> TargetedGraph:
    """``twin_sources_redirected`` with the target merged into its only feeder ``v2``."""
    return TargetedGraph.build(
        {("s1", "v2"): 1, ("s2", "v2"): 2, ("v2", "v2"): 2},
        target="v2",
        weights={"s1": 1, "s2": 2},
    )


def twin_sources_parts() -> tuple[TargetedGraph, TargetedGraph]:
    """The two halves of ``twin_sources_proxied`` that share only the target."""
    left = TargetedGraph.build({("s1", "v2"): 1, ("v2", "v2"): 1}, target="v2", weights={"s1": 1})
    right = TargetedGraph.build({("s2", "v2"): 2, ("v2", "v2"): 1}, target="v2", weights={"s2": 2})
    return left, right


def shortcut_triangle_graph() -> TargetedGraph:
    """``s`` reaches ``t`` directly or through ``v``; ``t`` points back at ``v``.

    Betweenness with unit weight on ``s``: s=1, v=0, t=1. Random-walk visits of ``v``: 1/2.
    """
    return TargetedGraph.build(
        [("s", "v"), ("s", "t"), ("v", "t"), ("t", "v")], target="t", weights={"s": 1}
    )


def shortcut_triangle_reversed() -> TargetedGraph:
    """Edge-reversed ``shortcut_triangle_graph`` aimed at ``s`` with unit weight on ``t``.

    Random-walk visits of ``v``: 2/3.
    """
    return TargetedGraph.build(
        [("v", "s"), ("t", "s"), ("t", "v"), ("v", "t")], target="s", weights={"t": 1}
    )


def shortcut_triangle_dominated() -> TargetedGraph:
    """``shortcut_triangle_reversed`` without the edge ``v -> t`` (``v`` links ``s`` directly)."""
    return TargetedGraph.build([("v", "s"), ("t", "s"), ("t", "v")], target="s", weights={"t": 1})


def two_source_fan_graph() -> TargetedGraph:
    """Two unit sources fanning into ``v1``, ``v2`` and ``t``.

    Random-walk betweenness: s1=1, s2=1, v1=1, v2=1/2, t=2.
    """
    return TargetedGraph.build(
        [("s1", "v1"), ("s1", "t"), ("s2", "v1"), ("s2", "v2"), ("v1", "t"), ("v2", "t")],
        target="t",
        weights={"s1": 1, "s2": 1},
    )


def two_source_fan_swapped() -> TargetedGraph:
    """``two_source_fan_graph`` after swapping the ends of ``s1 -> t`` and ``s2 -> v1``."""
    return TargetedGraph.build(
        [(("s1", "v1"), 2), ("s2", "t"), ("s2", "v2"), ("v1", "t"), ("v2", "t")],
        target="t",
        weights={"s1": 1, "s2": 1},
    )


def two_source_fan_unified() -> TargetedGraph:
    """``two_source_fan_swapped`` with the doubled edge ``s1 -> v1`` reduced to one copy."""
    return TargetedGraph.build(
        [("s1", "v1"), ("s2", "t"), ("s2", "v2"), ("v1", "t"), ("v2", "t")],
        target="t",
        weights={"s1": 1, "s2": 1},
    )


def diamond_graph() -> TargetedGraph:
    """``s`` reaches ``t`` through ``a`` or ``b``; unit weight on ``s``."""
    return TargetedGraph.build(
        [("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")], target="t", weights={"s": 1}
    )
