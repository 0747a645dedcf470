"""The four target-oriented medial centralities.

Shortest-path measures (stress, betweenness) are computed from exact integer
path counts. Random-walk measures (random-walk betweenness, PageRank) share one
solver: the expected number of visits of a walk that starts at each source in
proportion to its weight, moves along a uniformly chosen outgoing edge, continues
with probability ``a`` after every step, and is absorbed at the target.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDecay, SingularSystem
from .graph import NodeId, TargetedGraph, distances_to, shortest_path_counts

MEASURES = ("stress", "betweenness", "rwb", "pagerank")


@dataclass(frozen=True)
class CentralityVector(Mapping):
    """Per-node centrality values plus the measure that produced them."""

    scores: Mapping[NodeId, float]
    measure: str
    alpha: float | None = None

    def __getitem__(self, node):
        return self.scores[node]

    def __iter__(self):
        return iter(self.scores)

    def __len__(self):
        return len(self.scores)

    def sorted_items(self):
        return sorted(self.scores.items())


def _path_tables(g: TargetedGraph):
    to_target = distances_to(g.graph, g.target)
    for s, weight in g.weights.items():
        yield weight, shortest_path_counts(g, s, _to_target=to_target)


def stress(g: TargetedGraph) -> CentralityVector:
    values = dict.fromkeys(g.nodes, 0.0)
    for weight, table in _path_tables(g):
        for v, count in table.sigma_through.items():
            values[v] += weight * count
    return CentralityVector(values, "stress")


def betweenness(g: TargetedGraph) -> CentralityVector:
    values = dict.fromkeys(g.nodes, 0.0)
    for weight, table in _path_tables(g):
        total = table.sigma_total
        for v, count in table.sigma_through.items():
            # int / int is correctly rounded even for huge counts
            values[v] += weight * (count / total)
    return CentralityVector(values, "betweenness")


def transition_matrix(g: TargetedGraph) -> tuple[list, np.ndarray]:
    """Row-stochastic transition matrix of the graph with the target's out-edges removed.

    Returns the node order (sorted ids) and the matrix; the target's row is zero.
    """
    order = g.sorted_nodes()
    index = {v: i for i, v in enumerate(order)}
    P = np.zeros((len(order), len(order)))
    for r in order:
        if r == g.target:
            continue
        succ = g.successors(r)
        degree = sum(succ.values())
        for w, m in succ.items():
            P[index[r], index[w]] = m / degree
    return order, P


def expected_visits(g: TargetedGraph, a: float) -> CentralityVector:
    """Solve ``x = b + a * P^T x`` by LU with partial pivoting.

    For ``a = 1`` the non-target block of ``P`` is substochastic with spectral
    radius below one (every node reaches the target), so the system stays
    nonsingular; the target column of ``P^T`` is zero.
    """
    if not 0 <= a <= 1:
        raise InvalidDecay(f"decay factor must lie in [0, 1], got {a!r}")
    order, P = transition_matrix(g)
    b = np.array([float(g.weights[v]) for v in order])
    A = np.eye(len(order)) - a * P.T
    try:
        x = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    if not np.all(np.isfinite(x)):
        raise SingularSystem("non-finite solution")
    # round-off can push exact zeros slightly negative
    x[(x < 0) & (x > -1e-12 * max(1.0, b.sum()))] = 0.0
    if np.any(x < 0):
        raise SingularSystem("negative visit count")
    measure = "rwb" if a == 1 else "pagerank"
    return CentralityVector(dict(zip(order, x.tolist())), measure, None if a == 1 else a)


def random_walk_betweenness(g: TargetedGraph) -> CentralityVector:
    return expected_visits(g, 1.0)


def pagerank(g: TargetedGraph, a: float) -> CentralityVector:
    if not 0 <= a < 1:
        raise InvalidDecay(f"PageRank decay factor must lie in [0, 1), got {a!r}")
    return expected_visits(g, a)


@dataclass(frozen=True)
class Measure:
    """A centrality measure, with its decay factor when it is PageRank."""

    name: str
    alpha: float | None = field(default=None)

    def __post_init__(self):
        if self.name not in MEASURES:
            raise ValueError(f"unknown measure {self.name!r}; expected one of {MEASURES}")
        if self.name == "pagerank":
            if self.alpha is None:
                raise InvalidDecay("pagerank needs a decay factor")
            if not 0 <= self.alpha < 1:
                raise InvalidDecay(f"PageRank decay factor must lie in [0, 1), got {self.alpha!r}")
        elif self.alpha is not None:
            raise ValueError(f"measure {self.name!r} takes no decay factor")

    def __call__(self, g: TargetedGraph) -> CentralityVector:
        if self.name == "stress":
            return stress(g)
        if self.name == "betweenness":
            return betweenness(g)
        if self.name == "rwb":
            return random_walk_betweenness(g)
        return pagerank(g, self.alpha)

    @property
    def label(self) -> str:
        return f"pagerank(a={self.alpha:g})" if self.name == "pagerank" else self.name

    @property
    def random_walk(self) -> bool:
        return self.name in ("rwb", "pagerank")


def compute(g: TargetedGraph, measure: str, alpha: float | None = None) -> CentralityVector:
    return Measure(measure, alpha)(g)
