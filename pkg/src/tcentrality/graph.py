"""Directed multigraphs with a distinguished target node.

Edges are stored as a multiplicity map ``{(u, v): m}`` with ``m >= 1``; a pair
that is absent has multiplicity zero. All graph values are immutable: every
operation returns a new graph.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import (
    InvalidMerge,
    MissingEdge,
    NotInClass,
    RedirectTarget,
    SwapFromTarget,
    TargetMismatch,
    UnknownNode,
)

NodeId = str
Edge = tuple[NodeId, NodeId]


class WeightVector(Mapping):
    """Non-negative node weights; nodes without an entry read as zero."""

    __slots__ = ("_w",)

    def __init__(self, weights: Mapping[NodeId, float] | Iterable = ()):
        w = {}
        for node, value in dict(weights).items():
            if value < 0:
                raise ValueError(f"negative weight {value!r} on node {node!r}")
            if value:
                w[node] = value
        self._w = w

    @classmethod
    def unit(cls, node: NodeId, x: float = 1) -> WeightVector:
        return cls({node: x})

    def __getitem__(self, node):
        return self._w.get(node, 0)

    def __iter__(self):
        return iter(self._w)

    def __len__(self):
        return len(self._w)

    def __contains__(self, node):
        return node in self._w

    def __add__(self, other: Mapping) -> WeightVector:
        out = dict(self._w)
        for node, value in other.items():
            out[node] = out.get(node, 0) + value
        return WeightVector(out)

    def __mul__(self, x: float) -> WeightVector:
        return WeightVector({n: v * x for n, v in self._w.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Mapping):
            return NotImplemented
        keys = set(self._w) | set(other)
        return all(self[k] == other.get(k, 0) for k in keys)

    def __hash__(self):
        return hash(frozenset(self._w.items()))

    def total(self) -> float:
        return sum(self._w.values())

    def restricted(self, nodes: Iterable[NodeId]) -> WeightVector:
        keep = set(nodes)
        return WeightVector({n: v for n, v in self._w.items() if n in keep})

    def __repr__(self):
        return f"WeightVector({dict(sorted(self._w.items()))!r})"


class MultiDigraph:
    """A node set plus an edge multiset; self-loops and parallel edges allowed."""

    __slots__ = ("_nodes", "_edges", "_out", "_in")

    def __init__(self, nodes: Iterable[NodeId] = (), edges: Mapping[Edge, int] | Iterable = ()):
        node_set = set(nodes)
        edge_map: dict[Edge, int] = {}
        items = edges.items() if isinstance(edges, Mapping) else edges
        for item in items:
            if len(item) == 2 and not isinstance(item[1], int):
                (u, v), m = item, 1
            else:
                (u, v), m = item
            if m < 0:
                raise ValueError(f"negative multiplicity on {(u, v)!r}")
            if m == 0:
                continue
            node_set.add(u)
            node_set.add(v)
            edge_map[(u, v)] = edge_map.get((u, v), 0) + m
        out: dict[NodeId, dict[NodeId, int]] = {n: {} for n in node_set}
        inc: dict[NodeId, dict[NodeId, int]] = {n: {} for n in node_set}
        for (u, v), m in edge_map.items():
            out[u][v] = m
            inc[v][u] = m
        self._nodes = frozenset(node_set)
        self._edges = edge_map
        self._out = out
        self._in = inc

    @property
    def nodes(self) -> frozenset:
        return self._nodes

    @property
    def edges(self) -> Mapping[Edge, int]:
        return MappingProxyType(self._edges)

    def __contains__(self, node) -> bool:
        return node in self._nodes

    def _require(self, *nodes):
        for n in nodes:
            if n not in self._nodes:
                raise UnknownNode(n)

    def multiplicity(self, u: NodeId, v: NodeId) -> int:
        return self._edges.get((u, v), 0)

    def successors(self, v: NodeId) -> Mapping[NodeId, int]:
        """Out-neighbours of ``v`` with multiplicities."""
        self._require(v)
        return MappingProxyType(self._out[v])

    def predecessors(self, v: NodeId) -> Mapping[NodeId, int]:
        self._require(v)
        return MappingProxyType(self._in[v])

    def out_degree(self, v: NodeId) -> int:
        return sum(self.successors(v).values())

    def in_degree(self, v: NodeId) -> int:
        return sum(self.predecessors(v).values())

    def total_multiplicity(self) -> int:
        return sum(self._edges.values())

    def reaching(self, target: NodeId) -> set:
        """Nodes from which ``target`` is reachable (``target`` included)."""
        self._require(target)
        seen = {target}
        queue = deque([target])
        while queue:
            w = queue.popleft()
            for r in self._in[w]:
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        return seen

    def reachable_from(self, source: NodeId) -> set:
        self._require(source)
        seen = {source}
        queue = deque([source])
        while queue:
            w = queue.popleft()
            for r in self._out[w]:
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        return seen

    def sorted_nodes(self) -> list:
        return sorted(self._nodes)

    def __eq__(self, other):
        if not isinstance(other, MultiDigraph):
            return NotImplemented
        return self._nodes == other._nodes and self._edges == other._edges

    def __hash__(self):
        return hash((self._nodes, frozenset(self._edges.items())))

    def __repr__(self):
        return f"MultiDigraph(nodes={sorted(self._nodes)!r}, edges={dict(sorted(self._edges.items()))!r})"


@dataclass(frozen=True, eq=False)
class TargetedGraph:
    """A multigraph in which ``target`` is reachable from every node, plus node weights.

    Construction validates class membership and raises :class:`NotInClass`
    naming an offending node otherwise.
    """

    graph: MultiDigraph
    target: NodeId
    weights: WeightVector = field(default_factory=WeightVector)

    def __post_init__(self):
        if not isinstance(self.weights, WeightVector):
            object.__setattr__(self, "weights", WeightVector(self.weights))
        if self.target not in self.graph:
            raise UnknownNode(self.target)
        for node in self.weights:
            if node not in self.graph:
                raise UnknownNode(node)
        stranded = self.graph.nodes - self.graph.reaching(self.target)
        if stranded:
            raise NotInClass(min(stranded), self.target)
        for v in self.graph.nodes:
            # implied by reachability; kept as an independent guard
            assert v == self.target or self.graph.out_degree(v) >= 1

    @classmethod
    def build(cls, edges=(), target: NodeId = "t", weights=(), nodes: Iterable[NodeId] = ()) -> TargetedGraph:
        """Convenience constructor: ``edges`` is a mapping or an iterable of pairs / (pair, m)."""
        return cls(MultiDigraph([target, *nodes], edges), target, WeightVector(weights))

    # read-only views delegated to the underlying multigraph
    @property
    def nodes(self) -> frozenset:
        return self.graph.nodes

    @property
    def edges(self) -> Mapping[Edge, int]:
        return self.graph.edges

    def __contains__(self, node) -> bool:
        return node in self.graph

    def multiplicity(self, u, v) -> int:
        return self.graph.multiplicity(u, v)

    def successors(self, v):
        return self.graph.successors(v)

    def predecessors(self, v):
        return self.graph.predecessors(v)

    def out_degree(self, v) -> int:
        return self.graph.out_degree(v)

    def in_degree(self, v) -> int:
        return self.graph.in_degree(v)

    def sorted_nodes(self) -> list:
        return self.graph.sorted_nodes()

    def with_weights(self, weights) -> TargetedGraph:
        return TargetedGraph(self.graph, self.target, WeightVector(weights))

    def with_edges(self, edges: Mapping[Edge, int], nodes: Iterable[NodeId] | None = None) -> TargetedGraph:
        node_set = self.nodes if nodes is None else nodes
        return TargetedGraph(MultiDigraph(node_set, edges), self.target, self.weights)

    def __eq__(self, other):
        if not isinstance(other, TargetedGraph):
            return NotImplemented
        return self.graph == other.graph and self.target == other.target and self.weights == other.weights

    def __hash__(self):
        return hash((self.graph, self.target, self.weights))


def validate_class(graph: MultiDigraph | TargetedGraph, target: NodeId | None = None) -> bool:
    """True iff every node reaches the target."""
    if isinstance(graph, TargetedGraph):
        target = graph.target if target is None else target
        graph = graph.graph
    if target not in graph:
        return False
    return graph.reaching(target) == set(graph.nodes)


def graph_equality(a: TargetedGraph, b: TargetedGraph) -> bool:
    return a == b


def fresh_node_id(g: TargetedGraph | MultiDigraph, prefix: str = "n") -> NodeId:
    nodes = g.nodes
    i = 0
    while f"{prefix}{i}" in nodes:
        i += 1
    return f"{prefix}{i}"


def _sum_edges(*maps: Mapping[Edge, int]) -> dict:
    out: dict[Edge, int] = {}
    for m in maps:
        for e, k in m.items():
            out[e] = out.get(e, 0) + k
    return {e: k for e, k in out.items() if k}


def add_node(g: TargetedGraph, v: NodeId, weight: float = 0) -> TargetedGraph:
    """Add an isolated node. Only valid when ``v`` is the target's sole node; otherwise
    the new node would be stranded, so prefer :func:`add_edges` with ``nodes``."""
    if v in g:
        raise ValueError(f"node {v!r} already present")
    return TargetedGraph(MultiDigraph([*g.nodes, v], g.edges), g.target, g.weights + {v: weight})


def remove_node(g: TargetedGraph, v: NodeId) -> TargetedGraph:
    g.graph._require(v)
    if v == g.target:
        raise InvalidMerge("cannot remove the target")
    edges = {(a, b): m for (a, b), m in g.edges.items() if v not in (a, b)}
    weights = {n: x for n, x in g.weights.items() if n != v}
    return TargetedGraph(MultiDigraph(g.nodes - {v}, edges), g.target, weights)


def add_edges(g: TargetedGraph, pair: Edge, multiplicity: int = 1) -> TargetedGraph:
    if multiplicity < 0:
        raise ValueError("multiplicity must be non-negative")
    nodes = set(g.nodes) | set(pair)
    return TargetedGraph(MultiDigraph(nodes, _sum_edges(g.edges, {pair: multiplicity})), g.target, g.weights)


def remove_edges(g: TargetedGraph, pair: Edge, multiplicity: int = 1) -> TargetedGraph:
    have = g.multiplicity(*pair)
    if have < multiplicity:
        raise MissingEdge(pair)
    edges = dict(g.edges)
    edges[pair] = have - multiplicity
    return g.with_edges(edges)


def graph_sum(a: TargetedGraph, b: TargetedGraph) -> TargetedGraph:
    """Union of node sets, sum of edge multisets and of weights."""
    if a.target != b.target:
        raise TargetMismatch(f"targets differ: {a.target!r} vs {b.target!r}")
    result = TargetedGraph(
        MultiDigraph(a.nodes | b.nodes, _sum_edges(a.edges, b.edges)),
        a.target,
        a.weights + b.weights,
    )
    return result


def _relabel(edges: Mapping[Edge, int], old: NodeId, new: NodeId) -> dict:
    out: dict[Edge, int] = {}
    for (x, y), m in edges.items():
        e = (new if x == old else x, new if y == old else y)
        out[e] = out.get(e, 0) + m
    return out


def _merge(g: TargetedGraph, edges: Mapping[Edge, int], v: NodeId, u: NodeId, target: NodeId) -> TargetedGraph:
    weights = {n: x for n, x in g.weights.items() if n != v}
    weights[u] = g.weights[u] + g.weights[v]
    return TargetedGraph(MultiDigraph(g.nodes - {v}, _relabel(edges, v, u)), target, weights)


def merge_nodes(g: TargetedGraph, v: NodeId, u: NodeId, *, retarget: bool = False) -> TargetedGraph:
    """Delete ``v`` and move its weight and all incident edges onto ``u``.

    Merging the target away is only allowed with ``retarget=True``, which makes
    ``u`` the new target.
    """
    g.graph._require(v, u)
    if v == u:
        raise InvalidMerge("cannot merge a node into itself")
    if v == g.target and not retarget:
        raise InvalidMerge("merging the target requires retarget=True")
    return _merge(g, g.edges, v, u, u if v == g.target else g.target)


def redirect_node(g: TargetedGraph, v: NodeId, u: NodeId) -> TargetedGraph:
    """Drop ``v``'s outgoing edges other than self-loops, then merge ``v`` into ``u``."""
    g.graph._require(v, u)
    if v == g.target:
        raise RedirectTarget("the target cannot be redirected")
    if v == u:
        raise InvalidMerge("cannot redirect a node into itself")
    # the stripped intermediate may leave the class, so only the merged result is validated
    edges = {(a, b): m for (a, b), m in g.edges.items() if not (a == v and b != v)}
    return _merge(g, edges, v, u, g.target)


def reverse(g: TargetedGraph, new_target: NodeId) -> TargetedGraph:
    """Reverse every edge (multiplicities kept) and designate ``new_target``."""
    g.graph._require(new_target)
    edges = {(b, a): m for (a, b), m in g.edges.items()}
    return TargetedGraph(MultiDigraph(g.nodes, edges), new_target, g.weights)


def are_out_twins(g: TargetedGraph, v: NodeId, u: NodeId) -> bool:
    return dict(g.successors(v)) == dict(g.successors(u))


def edge_swap(g: TargetedGraph, e1: Edge, e2: Edge) -> TargetedGraph:
    """Replace one copy each of ``(v, v')`` and ``(u, u')`` with ``(v, u')`` and ``(u, v')``."""
    (v, v2), (u, u2) = e1, e2
    g.graph._require(v, v2, u, u2)
    if g.target in (v, u):
        raise SwapFromTarget("swapped edges must not start at the target")
    for e in (e1, e2):
        if g.multiplicity(*e) < 1:
            raise MissingEdge(e)
    if e1 == e2:
        return g
    edges = dict(g.edges)
    edges[e1] -= 1
    edges[e2] -= 1
    return g.with_edges(_sum_edges(edges, {(v, u2): 1}, {(u, v2): 1}))


def multiply_out_edges(g: TargetedGraph, v: NodeId, k: int) -> TargetedGraph:
    """Add ``k`` further copies of every outgoing edge of ``v``."""
    g.graph._require(v)
    if k < 0:
        raise ValueError("k must be non-negative")
    extra = {(v, w): k * m for w, m in g.successors(v).items()}
    return g.with_edges(_sum_edges(g.edges, extra))


def rename_node(g: TargetedGraph, v: NodeId, new: NodeId) -> TargetedGraph:
    g.graph._require(v)
    if new in g:
        raise ValueError(f"node {new!r} already present")
    weights = {(new if n == v else n): x for n, x in g.weights.items()}
    target = new if g.target == v else g.target
    nodes = (g.nodes - {v}) | {new}
    return TargetedGraph(MultiDigraph(nodes, _relabel(g.edges, v, new)), target, weights)


@dataclass(frozen=True)
class PathCountTable:
    """Shortest-path counts from ``source`` to the graph's target.

    ``dist`` holds edge-count distances from the source; unreachable nodes are
    simply absent (never a sentinel number).
    """

    source: NodeId
    target: NodeId
    sigma_total: int
    sigma_through: Mapping[NodeId, int]
    dist: Mapping[NodeId, int]


def distances_to(g: MultiDigraph, target: NodeId) -> tuple[dict, dict]:
    """BFS on reversed edges: distance to ``target`` and number of shortest paths to it."""
    dist = {target: 0}
    count = {target: 1}
    order = [target]
    queue = deque([target])
    while queue:
        w = queue.popleft()
        for r, m in g.predecessors(w).items():
            if r not in dist:
                dist[r] = dist[w] + 1
                count[r] = 0
                order.append(r)
                queue.append(r)
            if dist[r] == dist[w] + 1:
                count[r] += m * count[w]
    return dist, count


def distances_from(g: MultiDigraph, source: NodeId) -> tuple[dict, dict]:
    dist = {source: 0}
    count = {source: 1}
    queue = deque([source])
    while queue:
        w = queue.popleft()
        for r, m in g.successors(w).items():
            if r not in dist:
                dist[r] = dist[w] + 1
                count[r] = 0
                queue.append(r)
            if dist[r] == dist[w] + 1:
                count[r] += m * count[w]
    return dist, count


def shortest_path_counts(g: TargetedGraph, s: NodeId, _to_target=None) -> PathCountTable:
    """Exact (arbitrary-precision) shortest-path counts from ``s`` to the target.

    A multiplicity-``m`` edge contributes ``m`` distinct paths. The count through
    ``v`` is ``(#shortest s->v) * (#shortest v->t)`` whenever ``v`` lies on a
    shortest s->t path.
    """
    g.graph._require(s)
    t = g.target
    dist_s, fwd = distances_from(g.graph, s)
    dist_t, bwd = _to_target if _to_target is not None else distances_to(g.graph, t)
    if t not in dist_s:
        return PathCountTable(s, t, 0, {}, dist_s)
    d = dist_s[t]
    through = {}
    for v, dv in dist_s.items():
        if v in dist_t and dv + dist_t[v] == d:
            through[v] = fwd[v] * bwd[v]
    return PathCountTable(s, t, fwd[t], through, dist_s)
