"""Axioms as executable graph-transformation properties.

Each ``check_*`` function takes a :class:`~tcentrality.centrality.Measure` and one
concrete instance, evaluates the measure before and after the transformation,
and returns an :class:`AxiomCheckResult`. Instances that do not meet an axiom's
hypotheses raise :class:`PreconditionUnsatisfiable`.

:func:`run_matrix` drives the checks over seeded random instances and reproduces
the axiom / measure satisfaction matrix; for every cell expected to fail it
searches for a small witness (known shapes first, then random graphs, then
exhaustive enumeration of tiny graphs).
"""

from __future__ import annotations

import itertools
import random
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from enum import Enum

from .centrality import Measure
from .errors import NotInClass, PreconditionUnsatisfiable
from .graph import (
    MultiDigraph,
    TargetedGraph,
    WeightVector,
    are_out_twins,
    edge_swap,
    fresh_node_id,
    graph_sum,
    merge_nodes,
    multiply_out_edges,
    redirect_node,
    remove_edges,
    rename_node,
    reverse,
)
from . import shapes

TOL = 1e-9
NEAR_TIE = 1e-6


class AxiomId(str, Enum):
    LOCALITY = "Locality"
    ADDITIVITY = "Additivity"
    NODE_REDIRECT = "NodeRedirect"
    TARGET_PROXY = "TargetProxy"
    SYMMETRY = "Symmetry"
    DIRECT_LINK_DOMINATION = "DirectLinkDomination"
    EDGE_SWAP = "EdgeSwap"
    EDGE_MULTIPLICATION = "EdgeMultiplication"
    BASELINE_11 = "Baseline11"
    BASELINE_KK = "BaselineKK"
    BASELINE_1A = "Baseline1A"
    ANONYMITY = "Anonymity"
    TARGET_SELF_LOOP = "TargetSelfLoop"
    NO_TARGET_OUTLET = "NoTargetOutlet"
    SIPHON = "Siphon"

    def __str__(self):
        return self.value


MATRIX_AXIOMS = (
    AxiomId.LOCALITY,
    AxiomId.ADDITIVITY,
    AxiomId.NODE_REDIRECT,
    AxiomId.TARGET_PROXY,
    AxiomId.SYMMETRY,
    AxiomId.DIRECT_LINK_DOMINATION,
    AxiomId.EDGE_SWAP,
    AxiomId.EDGE_MULTIPLICATION,
)
BASELINES = (AxiomId.BASELINE_11, AxiomId.BASELINE_KK, AxiomId.BASELINE_1A)
LEMMAS = (AxiomId.ANONYMITY, AxiomId.TARGET_SELF_LOOP, AxiomId.NO_TARGET_OUTLET, AxiomId.SIPHON)
FAMILIES = ("stress", "betweenness", "rwb", "pagerank")

_SHORTEST = {"stress", "betweenness"}
_WALK = {"rwb", "pagerank"}

# which measure families satisfy each axiom
EXPECTED = {
    AxiomId.LOCALITY: set(FAMILIES),
    AxiomId.ADDITIVITY: set(FAMILIES),
    AxiomId.NODE_REDIRECT: set(FAMILIES),
    AxiomId.TARGET_PROXY: set(FAMILIES),
    AxiomId.SYMMETRY: _SHORTEST,
    AxiomId.DIRECT_LINK_DOMINATION: _SHORTEST,
    AxiomId.EDGE_SWAP: _WALK,
    AxiomId.EDGE_MULTIPLICATION: _WALK,
}
EXPECTED_BASELINE = {
    "stress": AxiomId.BASELINE_KK,
    "betweenness": AxiomId.BASELINE_11,
    "rwb": AxiomId.BASELINE_11,
    "pagerank": AxiomId.BASELINE_1A,
}
LEMMA_FAMILIES = {
    AxiomId.ANONYMITY: set(FAMILIES),
    AxiomId.TARGET_SELF_LOOP: set(FAMILIES),
    AxiomId.NO_TARGET_OUTLET: set(FAMILIES),
    AxiomId.SIPHON: _WALK,
}


class Verdict(str, Enum):
    HOLDS = "holds"
    VIOLATED = "violated"
    INAPPLICABLE = "inapplicable"

    def __str__(self):
        return self.value


@dataclass
class Witness:
    """Everything needed to replay a violation.

    ``inputs`` are the keyword arguments of the checker; ``graphs`` holds the
    instantiated before/after graphs and ``deltas`` maps each compared node to
    ``lhs - rhs``.
    """

    inputs: dict
    graphs: dict
    deltas: dict

    @property
    def size(self) -> tuple[int, int]:
        graphs = self.graphs.values()
        return max(len(g.nodes) for g in graphs), max(g.graph.total_multiplicity() for g in graphs)


@dataclass
class AxiomCheckResult:
    axiom: AxiomId
    measure: Measure
    verdict: Verdict
    witness: Witness | None = None
    trials_run: int = 1
    inapplicable_trials: int = 0


def _scale(*weights: WeightVector) -> float:
    return max(1.0, sum(float(w.total()) for w in weights))


def _result(axiom, measure, pairs: dict, scale: float, inputs: dict, graphs: dict, tol: float) -> AxiomCheckResult:
    """``pairs`` maps node -> (lhs, rhs); the axiom holds iff all agree within ``tol * scale``."""
    deltas = {v: lhs - rhs for v, (lhs, rhs) in pairs.items()}
    if all(abs(d) <= tol * scale for d in deltas.values()):
        return AxiomCheckResult(axiom, measure, Verdict.HOLDS)
    return AxiomCheckResult(axiom, measure, Verdict.VIOLATED, Witness(inputs, graphs, deltas))


def _require(condition: bool, message: str):
    if not condition:
        raise PreconditionUnsatisfiable(message)


def check_locality(measure: Measure, g1: TargetedGraph, g2: TargetedGraph, tol: float = TOL) -> AxiomCheckResult:
    _require(g1.target == g2.target, "graphs must share the target")
    t = g1.target
    _require(g1.nodes & g2.nodes == {t}, "graphs must intersect exactly in the target")
    joined = graph_sum(g1, g2)
    f, f1, f2 = measure(joined), measure(g1), measure(g2)
    pairs = {w: (f[w], f1[w]) for w in g1.nodes - {t}}
    pairs.update({w: (f[w], f2[w]) for w in g2.nodes - {t}})
    pairs[t] = (f[t], f1[t] + f2[t])
    return _result(
        AxiomId.LOCALITY, measure, pairs, _scale(g1.weights, g2.weights),
        {"g1": g1, "g2": g2}, {"g1": g1, "g2": g2, "sum": joined}, tol,
    )


def check_additivity(measure: Measure, g: TargetedGraph, b2: WeightVector, tol: float = TOL) -> AxiomCheckResult:
    b2 = WeightVector(b2)
    _require(all(v in g for v in b2), "extra weights must live on graph nodes")
    other = g.with_weights(b2)
    both = g.with_weights(g.weights + b2)
    f, f1, f2 = measure(both), measure(g), measure(other)
    pairs = {w: (f[w], f1[w] + f2[w]) for w in g.nodes}
    return _result(
        AxiomId.ADDITIVITY, measure, pairs, _scale(g.weights, b2),
        {"g": g, "b2": b2}, {"g": g, "summed": both}, tol,
    )


def check_node_redirect(measure: Measure, g: TargetedGraph, v: str, u: str, tol: float = TOL) -> AxiomCheckResult:
    """Redirect ``u`` into its out-twin ``v``; ``v`` must absorb ``u``'s value."""
    _require(v in g and u in g and v != u, "need two distinct nodes")
    _require(g.target not in (v, u), "twins must not be the target")
    _require(are_out_twins(g, v, u), "nodes are not out-twins")
    after = redirect_node(g, u, v)
    f, f2 = measure(g), measure(after)
    pairs = {w: (f2[w], f[w]) for w in g.nodes - {v, u}}
    pairs[v] = (f2[v], f[v] + f[u])
    return _result(
        AxiomId.NODE_REDIRECT, measure, pairs, _scale(g.weights),
        {"g": g, "v": v, "u": u}, {"g": g, "redirected": after}, tol,
    )


def check_target_proxy(measure: Measure, g: TargetedGraph, v: str, tol: float = TOL) -> AxiomCheckResult:
    t = g.target
    _require(v in g and v != t, "proxy must be a non-target node")
    _require(dict(g.predecessors(t)) == {v: 1}, "target must have exactly one incoming edge, from the proxy")
    _require(dict(g.successors(v)) == {t: 1}, "proxy's only outgoing edge must lead to the target")
    _require(g.weights[t] == 0, "target weight must be zero")
    after = merge_nodes(g, t, v, retarget=True)
    f, f2 = measure(g), measure(after)
    pairs = {w: (f2[w], f[w]) for w in g.nodes - {t}}
    return _result(
        AxiomId.TARGET_PROXY, measure, pairs, _scale(g.weights),
        {"g": g, "v": v}, {"g": g, "proxied": after}, tol,
    )


def check_symmetry(measure: Measure, g: TargetedGraph, s: str, tol: float = TOL) -> AxiomCheckResult:
    """Compare unit flow ``s -> t`` with unit flow ``t -> s`` on the reversed graph."""
    _require(s in g, "source must be a graph node")
    t = g.target
    try:
        flipped = reverse(g, s).with_weights({t: 1})
    except NotInClass as exc:
        raise PreconditionUnsatisfiable(f"reversed graph leaves the class: {exc}") from exc
    forward = g.with_weights({s: 1})
    f, f2 = measure(forward), measure(flipped)
    pairs = {w: (f2[w], f[w]) for w in g.nodes}
    return _result(
        AxiomId.SYMMETRY, measure, pairs, 1.0,
        {"g": g, "s": s}, {"forward": forward, "reversed": flipped}, tol,
    )


def check_direct_link_domination(measure: Measure, g: TargetedGraph, v: str, u: str, tol: float = TOL) -> AxiomCheckResult:
    t = g.target
    _require(v in g and u in g, "unknown node")
    _require(u != t, "deleted edge must not lead to the target")
    _require(g.multiplicity(v, t) >= 1 and g.multiplicity(v, u) >= 1, "need edges (v, t) and (v, u)")
    after = remove_edges(g, (v, u))
    f, f2 = measure(g), measure(after)
    pairs = {w: (f2[w], f[w]) for w in g.nodes}
    return _result(
        AxiomId.DIRECT_LINK_DOMINATION, measure, pairs, _scale(g.weights),
        {"g": g, "v": v, "u": u}, {"g": g, "pruned": after}, tol,
    )


def check_edge_swap(measure: Measure, g: TargetedGraph, e1: tuple, e2: tuple, tol: float = TOL) -> AxiomCheckResult:
    """Swap the ends of ``e1 = (v, v')`` and ``e2 = (u, u')`` given equal values at ``v`` and ``u``."""
    e1, e2 = tuple(e1), tuple(e2)
    (v, _), (u, _) = e1, e2
    t = g.target
    _require(all(x in g for x in (*e1, *e2)), "unknown node")
    _require(t not in (v, u), "swapped edges must not start at the target")
    _require(g.multiplicity(*e1) >= 1 and g.multiplicity(*e2) >= 1, "both edges must be present")
    _require(g.out_degree(v) == g.out_degree(u), "start nodes need equal out-degrees")
    f = measure(g)
    scale = _scale(g.weights)
    gap = abs(f[v] - f[u])
    # near-ties in (tol, NEAR_TIE] are skipped just like clear inequalities
    _require(gap <= tol * scale, f"start nodes differ in value by {gap:.3g}")
    try:
        after = edge_swap(g, e1, e2)
    except NotInClass as exc:
        raise PreconditionUnsatisfiable(f"swap leaves the class: {exc}") from exc
    f2 = measure(after)
    pairs = {w: (f2[w], f[w]) for w in g.nodes}
    return _result(
        AxiomId.EDGE_SWAP, measure, pairs, scale,
        {"g": g, "e1": e1, "e2": e2}, {"g": g, "swapped": after}, tol,
    )


def check_edge_multiplication(measure: Measure, g: TargetedGraph, v: str, k: int, tol: float = TOL) -> AxiomCheckResult:
    _require(v in g, "unknown node")
    _require(k >= 0, "k must be non-negative")
    after = multiply_out_edges(g, v, k)
    f, f2 = measure(g), measure(after)
    pairs = {w: (f2[w], f[w]) for w in g.nodes}
    return _result(
        AxiomId.EDGE_MULTIPLICATION, measure, pairs, _scale(g.weights),
        {"g": g, "v": v, "k": k}, {"g": g, "multiplied": after}, tol,
    )


def baseline_values(measure: Measure, k: int) -> tuple[float, float]:
    f = measure(shapes.baseline_graph(k))
    return f["s"], f["t"]


def check_baseline(measure: Measure, variant: AxiomId, k: int, tol: float = TOL) -> AxiomCheckResult:
    variant = AxiomId(variant)
    _require(variant in BASELINES, f"{variant} is not a baseline variant")
    _require(k >= 1, "k must be at least 1")
    fs, ft = baseline_values(measure, k)
    if variant is AxiomId.BASELINE_11:
        ok = abs(fs - 1) <= tol and abs(ft - 1) <= tol
    elif variant is AxiomId.BASELINE_KK:
        ok = abs(fs - k) <= tol and abs(ft - k) <= tol
    else:
        ok = abs(fs - 1) <= tol and ft < 1 - tol
    if ok:
        return AxiomCheckResult(variant, measure, Verdict.HOLDS)
    g = shapes.baseline_graph(k)
    return AxiomCheckResult(
        variant, measure, Verdict.VIOLATED,
        Witness({"variant": variant, "k": k}, {"g": g}, {"s": fs, "t": ft}),
    )


def check_anonymity(measure: Measure, g: TargetedGraph, v: str, new_id: str, tol: float = TOL) -> AxiomCheckResult:
    _require(v in g and v != g.target, "renamed node must be a non-target node")
    _require(new_id not in g, "new identifier already in use")
    after = rename_node(g, v, new_id)
    f, f2 = measure(g), measure(after)
    pairs = {w: (f2[new_id if w == v else w], f[w]) for w in g.nodes}
    return _result(
        AxiomId.ANONYMITY, measure, pairs, _scale(g.weights),
        {"g": g, "v": v, "new_id": new_id}, {"g": g, "renamed": after}, tol,
    )


def check_target_self_loop(measure: Measure, g: TargetedGraph, tol: float = TOL) -> AxiomCheckResult:
    t = g.target
    _require(g.multiplicity(t, t) >= 1, "target has no self-loop")
    after = remove_edges(g, (t, t))
    f, f2 = measure(g), measure(after)
    pairs = {w: (f2[w], f[w]) for w in g.nodes}
    return _result(
        AxiomId.TARGET_SELF_LOOP, measure, pairs, _scale(g.weights),
        {"g": g}, {"g": g, "unlooped": after}, tol,
    )


def check_no_target_outlet(measure: Measure, g: TargetedGraph, v: str, tol: float = TOL) -> AxiomCheckResult:
    t = g.target
    _require(v in g and g.multiplicity(t, v) >= 1, "target has no edge to v")
    after = remove_edges(g, (t, v))
    f, f2 = measure(g), measure(after)
    pairs = {w: (f2[w], f[w]) for w in g.nodes}
    return _result(
        AxiomId.NO_TARGET_OUTLET, measure, pairs, _scale(g.weights),
        {"g": g, "v": v}, {"g": g, "pruned": after}, tol,
    )


def check_siphon(measure: Measure, g: TargetedGraph, v: str, tol: float = TOL) -> AxiomCheckResult:
    _require(v in g and g.in_degree(v) == 0, "node has incoming edges")
    f = measure(g)
    return _result(
        AxiomId.SIPHON, measure, {v: (f[v], float(g.weights[v]))}, _scale(g.weights),
        {"g": g, "v": v}, {"g": g}, tol,
    )


CHECKERS: dict[AxiomId, Callable[..., AxiomCheckResult]] = {
    AxiomId.LOCALITY: check_locality,
    AxiomId.ADDITIVITY: check_additivity,
    AxiomId.NODE_REDIRECT: check_node_redirect,
    AxiomId.TARGET_PROXY: check_target_proxy,
    AxiomId.SYMMETRY: check_symmetry,
    AxiomId.DIRECT_LINK_DOMINATION: check_direct_link_domination,
    AxiomId.EDGE_SWAP: check_edge_swap,
    AxiomId.EDGE_MULTIPLICATION: check_edge_multiplication,
    AxiomId.BASELINE_11: lambda m, k, tol=TOL: check_baseline(m, AxiomId.BASELINE_11, k, tol),
    AxiomId.BASELINE_KK: lambda m, k, tol=TOL: check_baseline(m, AxiomId.BASELINE_KK, k, tol),
    AxiomId.BASELINE_1A: lambda m, k, tol=TOL: check_baseline(m, AxiomId.BASELINE_1A, k, tol),
    AxiomId.ANONYMITY: check_anonymity,
    AxiomId.TARGET_SELF_LOOP: check_target_self_loop,
    AxiomId.NO_TARGET_OUTLET: check_no_target_outlet,
    AxiomId.SIPHON: check_siphon,
}


def check_derived_lemma(lemma_id: AxiomId, measure: Measure, g: TargetedGraph, params: dict | None = None, tol: float = TOL) -> AxiomCheckResult:
    lemma_id = AxiomId(lemma_id)
    if lemma_id not in LEMMAS:
        raise ValueError(f"{lemma_id} is not a derived lemma")
    return CHECKERS[lemma_id](measure, g, **(params or {}), tol=tol)


def replay(result: AxiomCheckResult, tol: float = TOL) -> AxiomCheckResult:
    """Re-run the checker on a violation's recorded inputs."""
    if result.witness is None:
        raise ValueError("only violated results carry a replayable witness")
    inputs = dict(result.witness.inputs)
    if result.axiom in BASELINES:
        return check_baseline(result.measure, result.axiom, inputs["k"], tol)
    return CHECKERS[result.axiom](result.measure, **inputs, tol=tol)


# ---------------------------------------------------------------- generation


@dataclass(frozen=True)
class GraphGenConfig:
    max_nodes: int = 8
    max_multiplicity: int = 3
    edge_density: float = 0.3
    weight_range: tuple[float, float] = (0.0, 3.0)
    seed: int = 42
    trials: int = 200
    alphas: tuple[float, ...] = (0.25, 0.5, 0.85)

    def __post_init__(self):
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be at least 1")
        if self.max_multiplicity < 1:
            raise ValueError("max_multiplicity must be at least 1")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")
        lo, hi = self.weight_range
        if not 0 <= lo <= hi or hi <= 0:
            raise ValueError("weight_range must satisfy 0 <= lo <= hi, hi > 0")


def _trial_rng(seed, *labels) -> random.Random:
    # str seeds are hashed with SHA-512, so streams are stable across processes
    return random.Random(":".join(str(x) for x in (seed, *labels)))


def _random_weight(rng: random.Random, config: GraphGenConfig) -> float:
    lo, hi = config.weight_range
    return round(rng.uniform(lo, hi), 3)


def _connect_stranded(rng: random.Random, nodes: list, edges: dict, target: str) -> None:
    """Add edges from stranded nodes toward nodes that already reach ``target``."""
    while True:
        reach = MultiDigraph(nodes, edges).reaching(target)
        stranded = sorted(set(nodes) - reach)
        if not stranded:
            return
        u = rng.choice(stranded)
        w = rng.choice(sorted(reach))
        edges[(u, w)] = edges.get((u, w), 0) + 1


def generate_graph(
    config: GraphGenConfig,
    rng: random.Random | None = None,
    *,
    prefix: str = "n",
    target: str = "t",
    min_nodes: int = 1,
    max_nodes: int | None = None,
) -> TargetedGraph:
    """Random weighted graph in which every node reaches ``target``.

    Deterministic for a given ``config.seed`` (or ``rng`` state). At least one
    node carries positive weight.
    """
    rng = rng if rng is not None else _trial_rng(config.seed, "graph")
    cap = config.max_nodes if max_nodes is None else max_nodes
    n = rng.randint(min(min_nodes, cap), cap)
    nodes = [target] + [f"{prefix}{i}" for i in range(1, n)]
    edges: dict = {}
    for u in nodes:
        for v in nodes:
            if rng.random() < config.edge_density:
                edges[(u, v)] = rng.randint(1, config.max_multiplicity)
    _connect_stranded(rng, nodes, edges, target)
    weights = {v: _random_weight(rng, config) for v in nodes if rng.random() < 0.5}
    if not any(weights.values()):
        src = rng.choice(nodes[1:] or nodes)
        weights[src] = config.weight_range[1]
    return TargetedGraph(MultiDigraph(nodes, edges), target, WeightVector(weights))


def _random_out_edges(rng, config, start, choices, count=None) -> dict:
    count = count if count is not None else rng.randint(1, 3)
    out = {}
    for _ in range(count):
        w = rng.choice(choices)
        out[(start, w)] = out.get((start, w), 0) + 1
    return out


def _merge_edges(*maps) -> dict:
    out: dict = {}
    for m in maps:
        for e, k in m.items():
            out[e] = out.get(e, 0) + k
    return out


def _build_locality(rng, config, max_nodes):
    g1 = generate_graph(config, rng, prefix="a", max_nodes=max_nodes)
    g2 = generate_graph(config, rng, prefix="b", max_nodes=max_nodes)
    return {"g1": g1, "g2": g2}


def _build_additivity(rng, config, max_nodes):
    g = generate_graph(config, rng, max_nodes=max_nodes)
    b2 = {v: _random_weight(rng, config) for v in g.sorted_nodes() if rng.random() < 0.5}
    return {"g": g, "b2": WeightVector(b2)}


def _build_node_redirect(rng, config, max_nodes):
    g = generate_graph(config, rng, min_nodes=2, max_nodes=max(2, max_nodes - 1))
    others = sorted(g.nodes - {g.target})
    v = rng.choice(others)
    u = fresh_node_id(g, "w")
    # Twins joined by edges (here: a self-loop on v, copied as u -> v) break the
    # axiom for walk measures, since merging turns those edges into extra
    # self-loops. Planted twins therefore never link to each other.
    base = dict(g.edges)
    loops = base.pop((v, v), 0)
    if loops and not any(a == v for a, _ in base):
        base[(v, g.target)] = loops
    g = g.with_edges(base)
    twin = {(u, w): m for w, m in g.successors(v).items()}
    incoming = {}
    for r in g.sorted_nodes():
        if r != v and rng.random() < config.edge_density:
            incoming[(r, u)] = rng.randint(1, config.max_multiplicity)
    weights = g.weights + ({u: _random_weight(rng, config)} if rng.random() < 0.5 else {})
    planted = TargetedGraph(MultiDigraph([*g.nodes, u], _merge_edges(g.edges, twin, incoming)), g.target, weights)
    if rng.random() < 0.5:
        v, u = u, v
    return {"g": planted, "v": v, "u": u}


def _build_target_proxy(rng, config, max_nodes):
    g = generate_graph(config, rng, max_nodes=max(1, max_nodes - 1))
    old = g.target
    new = fresh_node_id(g, "p")
    edges = {}
    for (a, b), m in g.edges.items():
        key = (new, b) if a == old else (a, b)
        edges[key] = edges.get(key, 0) + m
    edges[(old, new)] = 1
    for w in g.sorted_nodes():
        if rng.random() < config.edge_density:
            edges[(new, w)] = edges.get((new, w), 0) + rng.randint(1, config.max_multiplicity)
    weights = g.weights
    if rng.random() < 0.3:
        weights = weights + {old: _random_weight(rng, config)}
    planted = TargetedGraph(MultiDigraph([*g.nodes, new], edges), new, weights)
    return {"g": planted, "v": old}


def _build_symmetry(rng, config, max_nodes):
    g = generate_graph(config, rng, max_nodes=max_nodes)
    s = rng.choice(g.sorted_nodes())
    edges = dict(g.edges)
    while True:
        reached = MultiDigraph(g.nodes, edges).reachable_from(s)
        missing = sorted(g.nodes - reached)
        if not missing:
            break
        e = (rng.choice(sorted(reached)), rng.choice(missing))
        edges[e] = edges.get(e, 0) + 1
    return {"g": g.with_edges(edges), "s": s}


def _build_dld(rng, config, max_nodes):
    g = generate_graph(config, rng, min_nodes=2, max_nodes=max_nodes)
    t = g.target
    v = rng.choice(g.sorted_nodes())
    u = rng.choice(sorted(g.nodes - {t}))
    extra = {}
    if g.multiplicity(v, t) == 0:
        extra[(v, t)] = 1
    if g.multiplicity(v, u) == 0:
        extra[(v, u)] = rng.randint(1, config.max_multiplicity)
    return {"g": g.with_edges(_merge_edges(g.edges, extra)), "v": v, "u": u}


def _build_edge_swap(rng, config, max_nodes):
    if rng.random() < 0.7:
        # two fresh sources of equal weight and out-degree, no incoming edges
        g = generate_graph(config, rng, max_nodes=max(1, max_nodes - 2))
        p = fresh_node_id(g, "p")
        q = fresh_node_id(g, "q")
        targets = g.sorted_nodes()
        d = rng.randint(1, 3)
        out_p = _random_out_edges(rng, config, p, targets, d)
        out_q = _random_out_edges(rng, config, q, targets, d)
        weight = _random_weight(rng, config)
        weights = g.weights + {p: weight, q: weight}
        g = TargetedGraph(MultiDigraph([*g.nodes, p, q], _merge_edges(g.edges, out_p, out_q)), g.target, weights)
        v, u = p, q
    else:
        g = generate_graph(config, rng, min_nodes=3, max_nodes=max_nodes)
        others = sorted(g.nodes - {g.target})
        v, u = rng.sample(others, 2) if len(others) >= 2 else (others[0], others[0])
    e1 = (v, rng.choice(sorted(g.successors(v))))
    e2 = (u, rng.choice(sorted(g.successors(u))))
    return {"g": g, "e1": e1, "e2": e2}


def _build_edge_multiplication(rng, config, max_nodes):
    g = generate_graph(config, rng, max_nodes=max_nodes)
    return {"g": g, "v": rng.choice(g.sorted_nodes()), "k": rng.randint(0, 3)}


def _build_anonymity(rng, config, max_nodes):
    g = generate_graph(config, rng, min_nodes=2, max_nodes=max_nodes)
    v = rng.choice(sorted(g.nodes - {g.target}))
    return {"g": g, "v": v, "new_id": fresh_node_id(g, "x")}


def _build_target_self_loop(rng, config, max_nodes):
    g = generate_graph(config, rng, max_nodes=max_nodes)
    t = g.target
    extra = {(t, t): rng.randint(1, 2)}
    return {"g": g.with_edges(_merge_edges(g.edges, extra))}


def _build_no_target_outlet(rng, config, max_nodes):
    g = generate_graph(config, rng, max_nodes=max_nodes)
    t = g.target
    v = rng.choice(g.sorted_nodes())
    extra = {} if g.multiplicity(t, v) else {(t, v): rng.randint(1, config.max_multiplicity)}
    return {"g": g.with_edges(_merge_edges(g.edges, extra)), "v": v}


def _build_siphon(rng, config, max_nodes):
    g = generate_graph(config, rng, max_nodes=max(1, max_nodes - 1))
    existing = [v for v in g.sorted_nodes() if g.in_degree(v) == 0]
    if existing and rng.random() < 0.3:
        return {"g": g, "v": rng.choice(existing)}
    z = fresh_node_id(g, "z")
    out = _random_out_edges(rng, config, z, g.sorted_nodes())
    weights = g.weights + {z: _random_weight(rng, config)}
    return {"g": TargetedGraph(MultiDigraph([*g.nodes, z], _merge_edges(g.edges, out)), g.target, weights), "v": z}


BUILDERS = {
    AxiomId.LOCALITY: _build_locality,
    AxiomId.ADDITIVITY: _build_additivity,
    AxiomId.NODE_REDIRECT: _build_node_redirect,
    AxiomId.TARGET_PROXY: _build_target_proxy,
    AxiomId.SYMMETRY: _build_symmetry,
    AxiomId.DIRECT_LINK_DOMINATION: _build_dld,
    AxiomId.EDGE_SWAP: _build_edge_swap,
    AxiomId.EDGE_MULTIPLICATION: _build_edge_multiplication,
    AxiomId.ANONYMITY: _build_anonymity,
    AxiomId.TARGET_SELF_LOOP: _build_target_self_loop,
    AxiomId.NO_TARGET_OUTLET: _build_no_target_outlet,
    AxiomId.SIPHON: _build_siphon,
}


def trial_instance(axiom: AxiomId, config: GraphGenConfig, index: int, max_nodes: int | None = None) -> dict:
    """Checker inputs for trial ``index``; identical across measures for the same seed."""
    rng = _trial_rng(config.seed, axiom.value, index)
    return BUILDERS[axiom](rng, config, config.max_nodes if max_nodes is None else max_nodes)


def run_trials(axiom: AxiomId, measure: Measure, config: GraphGenConfig, tol: float = TOL, max_nodes: int | None = None) -> AxiomCheckResult:
    """Run ``config.trials`` random instances; keep the smallest violation as witness."""
    axiom = AxiomId(axiom)
    applicable = 0
    worst = None
    for i in range(config.trials):
        inputs = trial_instance(axiom, config, i, max_nodes)
        try:
            res = CHECKERS[axiom](measure, **inputs, tol=tol)
        except (PreconditionUnsatisfiable, NotInClass):
            continue
        applicable += 1
        if res.verdict is Verdict.VIOLATED and (worst is None or res.witness.size < worst.witness.size):
            worst = res
    skipped = config.trials - applicable
    if worst is not None:
        verdict, witness = Verdict.VIOLATED, worst.witness
    elif applicable:
        verdict, witness = Verdict.HOLDS, None
    else:
        verdict, witness = Verdict.INAPPLICABLE, None
    return AxiomCheckResult(axiom, measure, verdict, witness, config.trials, skipped)


# ---------------------------------------------------------------- counterexample search


def known_shapes(axiom: AxiomId) -> list[dict]:
    """Hand-built instances that break the axiom for the measures expected to fail it."""
    axiom = AxiomId(axiom)
    if axiom is AxiomId.SYMMETRY:
        return [{"g": shapes.shortcut_triangle_graph(), "s": "s"}]
    if axiom is AxiomId.DIRECT_LINK_DOMINATION:
        return [
            {"g": shapes.shortcut_triangle_reversed(), "v": "v", "u": "t"},
            {"g": shapes.shortcut_triangle_graph(), "v": "s", "u": "v"},
        ]
    if axiom is AxiomId.EDGE_SWAP:
        return [{"g": shapes.two_source_fan_graph(), "e1": ("s1", "t"), "e2": ("s2", "v1")}]
    if axiom is AxiomId.EDGE_MULTIPLICATION:
        return [
            {"g": shapes.baseline_graph(1), "v": "s", "k": 1},
            {"g": shapes.diamond_graph(), "v": "a", "k": 1},
        ]
    return []


def small_graphs(max_nodes: int = 4, max_total: int = 6, target: str = "t") -> Iterator[MultiDigraph]:
    """Every graph on nodes ``t, a, b, ...`` (up to ``max_nodes``) with total
    multiplicity at most ``max_total`` in which all nodes reach ``t``."""
    names = [target] + [chr(ord("a") + i) for i in range(max_nodes - 1)]
    for n in range(1, max_nodes + 1):
        nodes = names[:n]
        pairs = [(u, v) for u in nodes for v in nodes]
        for size in range(0, max_total + 1):
            for combo in itertools.combinations_with_replacement(pairs, size):
                starts = {u for u, _ in combo}
                if any(v not in starts for v in nodes[1:]):
                    continue
                g = MultiDigraph(nodes, combo)
                if len(g.reaching(target)) == n:
                    yield g


def _unit_weightings(g: MultiDigraph) -> Iterator[WeightVector]:
    for s in sorted(g.nodes):
        yield WeightVector({s: 1})


def exhaustive_instances(axiom: AxiomId, g: MultiDigraph, target: str = "t") -> Iterator[dict]:
    axiom = AxiomId(axiom)
    nodes = sorted(g.nodes)
    if axiom is AxiomId.SYMMETRY:
        base = TargetedGraph(g, target)
        for s in nodes:
            yield {"g": base, "s": s}
        return
    for b in _unit_weightings(g):
        tg = TargetedGraph(g, target, b)
        if axiom is AxiomId.DIRECT_LINK_DOMINATION:
            for v in nodes:
                if g.multiplicity(v, target):
                    for u in g.successors(v):
                        if u != target:
                            yield {"g": tg, "v": v, "u": u}
        elif axiom is AxiomId.EDGE_MULTIPLICATION:
            for v in nodes:
                yield {"g": tg, "v": v, "k": 1}
        elif axiom is AxiomId.EDGE_SWAP:
            edges = sorted(g.edges)
            for e1, e2 in itertools.combinations(edges, 2):
                if target not in (e1[0], e2[0]) and e1[0] != e2[0]:
                    yield {"g": tg, "e1": e1, "e2": e2}
        else:
            return


@dataclass
class SearchOutcome:
    result: AxiomCheckResult | None
    stage: str | None
    attempts: int


def find_counterexample(
    axiom: AxiomId,
    measure: Measure,
    *,
    max_nodes: int = 6,
    seed: int = 0,
    random_budget: int = 500,
    exhaustive: bool = True,
    known: bool = True,
    tol: float = TOL,
) -> SearchOutcome:
    """Staged witness search: known shapes, then random graphs, then tiny-graph enumeration.

    Returns the smallest violation found in the first stage that finds any.
    """
    axiom = AxiomId(axiom)
    checker = CHECKERS[axiom]
    attempts = 0

    def attempt(inputs):
        nonlocal attempts
        attempts += 1
        try:
            res = checker(measure, **inputs, tol=tol)
        except (PreconditionUnsatisfiable, NotInClass):
            return None
        if res.verdict is Verdict.VIOLATED and res.witness.size[0] <= max_nodes:
            return res
        return None

    def smallest(results):
        results = [r for r in results if r is not None]
        return min(results, key=lambda r: r.witness.size) if results else None

    found = smallest(attempt(inputs) for inputs in known_shapes(axiom)) if known else None
    if found:
        return SearchOutcome(found, "known-shapes", attempts)

    if axiom in BUILDERS and random_budget:
        config = GraphGenConfig(max_nodes=max_nodes, seed=seed, trials=random_budget)
        found = smallest(
            attempt(trial_instance(axiom, config, i, max_nodes)) for i in range(random_budget)
        )
        if found:
            return SearchOutcome(found, "random", attempts)

    if exhaustive:
        for g in small_graphs(min(4, max_nodes), 6):
            for inputs in exhaustive_instances(axiom, g):
                res = attempt(inputs)
                if res is not None:
                    return SearchOutcome(res, "exhaustive", attempts)
    return SearchOutcome(None, None, attempts)


# ---------------------------------------------------------------- matrix


def measure_variants(family: str, alphas=(0.25, 0.5, 0.85)) -> list[Measure]:
    if family == "pagerank":
        return [Measure("pagerank", a) for a in alphas]
    return [Measure(family)]


@dataclass
class CellResult:
    axiom: AxiomId
    family: str
    expected: Verdict
    verdict: Verdict
    variants: list = field(default_factory=list)
    budget_exhausted: bool = False

    @property
    def matches(self) -> bool:
        return self.verdict is self.expected

    @property
    def witness_result(self) -> AxiomCheckResult | None:
        for r in self.variants:
            if r.verdict is Verdict.VIOLATED:
                return r
        return None

    @property
    def trials_run(self) -> int:
        return sum(r.trials_run for r in self.variants)


@dataclass
class BaselineRow:
    family: str
    satisfied: list
    expected: AxiomId
    results: list = field(default_factory=list)

    @property
    def matches(self) -> bool:
        return self.satisfied == [self.expected]


@dataclass
class MatrixReport:
    config: GraphGenConfig
    cells: dict
    baseline: dict

    @property
    def mismatches(self) -> list:
        out = [c for c in self.cells.values() if not c.matches]
        out += [b for b in self.baseline.values() if not b.matches]
        return out

    @property
    def matches(self) -> bool:
        return not self.mismatches


def _combine(verdicts: list[Verdict]) -> Verdict:
    if any(v is Verdict.VIOLATED for v in verdicts):
        return Verdict.VIOLATED
    if verdicts and all(v is Verdict.HOLDS for v in verdicts):
        return Verdict.HOLDS
    return Verdict.INAPPLICABLE


def run_cell(axiom: AxiomId, family: str, config: GraphGenConfig, tol: float = TOL, witness_nodes: int = 6) -> CellResult:
    axiom = AxiomId(axiom)
    expected = Verdict.HOLDS if family in EXPECTED[axiom] else Verdict.VIOLATED
    variants = []
    exhausted = False
    for measure in measure_variants(family, config.alphas):
        res = run_trials(axiom, measure, config, tol)
        if expected is Verdict.VIOLATED and config.trials > 0:
            shaped = find_counterexample(axiom, measure, max_nodes=witness_nodes, random_budget=0, exhaustive=False, tol=tol)
            if shaped.result is not None and (res.witness is None or shaped.result.witness.size < res.witness.size):
                res = AxiomCheckResult(
                    axiom, measure, Verdict.VIOLATED, shaped.result.witness,
                    res.trials_run + shaped.attempts, res.inapplicable_trials,
                )
            if res.witness is None or res.witness.size[0] > witness_nodes:
                outcome = find_counterexample(
                    axiom, measure, max_nodes=witness_nodes, seed=config.seed,
                    random_budget=config.trials, tol=tol,
                )
                if outcome.result is not None:
                    res = AxiomCheckResult(
                        axiom, measure, Verdict.VIOLATED, outcome.result.witness,
                        res.trials_run + outcome.attempts, res.inapplicable_trials,
                    )
                elif res.verdict is Verdict.VIOLATED:
                    # only oversized witnesses were found
                    res = AxiomCheckResult(axiom, measure, Verdict.INAPPLICABLE, None, res.trials_run, res.inapplicable_trials)
                    exhausted = True
                else:
                    exhausted = True
        variants.append(res)
    return CellResult(axiom, family, expected, _combine([r.verdict for r in variants]), variants, exhausted)


def run_baseline_row(family: str, config: GraphGenConfig, ks=range(1, 11), tol: float = TOL) -> BaselineRow:
    expected = EXPECTED_BASELINE[family]
    if config.trials == 0:
        return BaselineRow(family, [], expected)
    satisfied = []
    results = []
    for variant in BASELINES:
        ok = True
        for measure in measure_variants(family, config.alphas):
            for k in ks:
                r = check_baseline(measure, variant, k, tol)
                results.append(r)
                ok &= r.verdict is Verdict.HOLDS
        if ok:
            satisfied.append(variant)
    return BaselineRow(family, satisfied, expected, results)


def run_matrix(config: GraphGenConfig = GraphGenConfig(), families=FAMILIES, axioms=MATRIX_AXIOMS, tol: float = TOL, baseline: bool = True) -> MatrixReport:
    cells = {}
    for axiom in axioms:
        for family in families:
            cells[(AxiomId(axiom), family)] = run_cell(axiom, family, config, tol)
    rows = {f: run_baseline_row(f, config, tol=tol) for f in families} if baseline else {}
    return MatrixReport(config, cells, rows)


def run_lemmas(config: GraphGenConfig = GraphGenConfig(), lemmas=LEMMAS, families=FAMILIES, tol: float = TOL) -> dict:
    """Derived-lemma checks over random instances; every entry should hold."""
    out = {}
    for lemma in lemmas:
        lemma = AxiomId(lemma)
        for family in families:
            if family not in LEMMA_FAMILIES[lemma]:
                continue
            variants = [run_trials(lemma, m, config, tol) for m in measure_variants(family, config.alphas)]
            out[(lemma, family)] = variants
    return out

