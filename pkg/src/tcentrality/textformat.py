"""Line-oriented graph files.

::

    # comment
    target t
    node s 1.5        # weight defaults to 0
    edge s t 2        # multiplicity defaults to 1; repeated lines add up

Nodes mentioned only by ``edge`` lines get weight zero.
"""

from __future__ import annotations

import math

from .errors import (
    DuplicateTarget,
    GraphSyntaxError,
    MissingTarget,
    NegativeWeight,
    NotInClass,
    NotInClassAtLine,
    ZeroMultiplicity,
)
from .graph import MultiDigraph, TargetedGraph, WeightVector


def _weight(token: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise GraphSyntaxError(f"bad weight {token!r}", lineno) from None
    if not math.isfinite(value):
        raise GraphSyntaxError(f"weight must be finite, got {token!r}", lineno)
    if value < 0:
        raise NegativeWeight(f"negative weight {token!r}", lineno)
    return value


def _multiplicity(token: str, lineno: int) -> int:
    try:
        value = int(token)
    except ValueError:
        raise GraphSyntaxError(f"bad multiplicity {token!r}", lineno) from None
    if value == 0:
        raise ZeroMultiplicity("multiplicity must be at least 1", lineno)
    if value < 0:
        raise GraphSyntaxError(f"negative multiplicity {token!r}", lineno)
    return value


def parse_graph(text: str) -> TargetedGraph:
    target = None
    nodes: dict[str, float] = {}
    node_lines: dict[str, int] = {}
    first_seen: dict[str, int] = {}
    edges: dict[tuple[str, str], int] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, *args = line.split()
        if kind == "target":
            if len(args) != 1:
                raise GraphSyntaxError("expected 'target <id>'", lineno)
            if target is not None:
                raise DuplicateTarget(f"target already set to {target!r}", lineno)
            target = args[0]
            first_seen.setdefault(target, lineno)
        elif kind == "node":
            if len(args) not in (1, 2):
                raise GraphSyntaxError("expected 'node <id> [weight]'", lineno)
            node = args[0]
            if node in node_lines:
                raise GraphSyntaxError(f"node {node!r} already declared on line {node_lines[node]}", lineno)
            node_lines[node] = lineno
            nodes[node] = _weight(args[1], lineno) if len(args) == 2 else 0.0
            first_seen.setdefault(node, lineno)
        elif kind == "edge":
            if len(args) not in (2, 3):
                raise GraphSyntaxError("expected 'edge <u> <v> [multiplicity]'", lineno)
            u, v = args[0], args[1]
            m = _multiplicity(args[2], lineno) if len(args) == 3 else 1
            edges[(u, v)] = edges.get((u, v), 0) + m
            first_seen.setdefault(u, lineno)
            first_seen.setdefault(v, lineno)
        else:
            raise GraphSyntaxError(f"unknown directive {kind!r}", lineno)

    if target is None:
        raise MissingTarget("no 'target' line")
    graph = MultiDigraph([target, *nodes], edges)
    try:
        return TargetedGraph(graph, target, WeightVector(nodes))
    except NotInClass as exc:
        raise NotInClassAtLine(exc.node, target, first_seen.get(exc.node)) from exc


def read_graph(path) -> TargetedGraph:
    with open(path, encoding="utf-8") as fh:
        return parse_graph(fh.read())


def format_graph(g: TargetedGraph) -> str:
    """Serialize ``g``; weights use ``repr`` so parsing the output restores them exactly."""
    lines = [f"target {g.target}"]
    for v in g.sorted_nodes():
        w = float(g.weights[v])
        lines.append(f"node {v} {w!r}" if w else f"node {v}")
    for (u, v), m in sorted(g.edges.items()):
        lines.append(f"edge {u} {v} {m}" if m != 1 else f"edge {u} {v}")
    return "\n".join(lines) + "\n"
