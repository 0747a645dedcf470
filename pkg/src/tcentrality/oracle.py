"""Brute-force reference computations.

Nothing here reuses the analytic code paths in :mod:`tcentrality.centrality`
or the BFS counting in :mod:`tcentrality.graph`; each oracle works straight
from the definitions: explicit path lists, an explicit power series, and
simulated walks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .centrality import CentralityVector
from .errors import BudgetExceeded
from .graph import TargetedGraph

log = logging.getLogger(__name__)

# (start, end, copy index); the copy index tells parallel edges apart
EdgeCopy = tuple[str, str, int]


@dataclass(frozen=True)
class OracleConfig:
    max_path_length: int = 64
    max_paths: int = 200_000
    series_steps: int = 1000
    sample_count: int = 100_000
    seed: int = 0
    step_cap: int = 1_000_000

    def __post_init__(self):
        for name in ("max_path_length", "max_paths", "series_steps", "sample_count", "step_cap"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


@dataclass(frozen=True)
class EnumeratedPaths:
    sigma_total: int
    sigma_through: dict
    paths: list


def enumerate_shortest_paths(g: TargetedGraph, s: str, config: OracleConfig = OracleConfig()) -> EnumeratedPaths:
    """List every minimum-length path from ``s`` to the target, edge copies distinguished.

    Grows all node-simple paths from ``s`` one edge at a time and stops at the
    first length at which some path ends in the target.
    """
    t = g.target
    if s == t:
        return EnumeratedPaths(1, {t: 1}, [()])
    out = {}
    for (u, v), m in g.edges.items():
        if u != v:
            out.setdefault(u, []).extend((u, v, c) for c in range(m))
    frontier = [((), s, frozenset([s]))]
    found = []
    for _length in range(1, config.max_path_length + 1):
        grown = []
        for path, end, visited in frontier:
            for edge in out.get(end, ()):
                head = edge[1]
                if head in visited:
                    continue
                grown.append((path + (edge,), head, visited | {head}))
                if len(grown) > config.max_paths:
                    raise BudgetExceeded(f"more than {config.max_paths} partial paths from {s!r}")
        found = [p for p, end, _ in grown if end == t]
        if found or not grown:
            break
        frontier = grown
    through: dict[str, int] = {}
    for path in found:
        for v in {s, *(e[1] for e in path)}:
            through[v] = through.get(v, 0) + 1
    return EnumeratedPaths(len(found), through, found)


def exact_rational_betweenness(g: TargetedGraph, config: OracleConfig = OracleConfig()) -> dict:
    """Betweenness as exact :class:`Fraction` values from enumerated path lists."""
    values = dict.fromkeys(g.nodes, Fraction(0))
    for s, weight in g.weights.items():
        paths = enumerate_shortest_paths(g, s, config)
        for v, count in paths.sigma_through.items():
            values[v] += Fraction(weight) * Fraction(count, paths.sigma_total)
    return values


def exact_rational_stress(g: TargetedGraph, config: OracleConfig = OracleConfig()) -> dict:
    values = dict.fromkeys(g.nodes, Fraction(0))
    for s, weight in g.weights.items():
        for v, count in enumerate_shortest_paths(g, s, config).sigma_through.items():
            values[v] += Fraction(weight) * count
    return values


def truncated_series_visits(g: TargetedGraph, a: float, steps: int) -> CentralityVector:
    """Partial sum over walk lengths ``0..steps`` of the decayed visit distribution.

    The walk runs on the graph with the target's outgoing edges removed, so mass
    reaching the target is counted once and then leaves the system.
    """
    if not 0 <= a <= 1:
        raise ValueError("a must lie in [0, 1]")
    if steps < 0:
        raise ValueError("steps must be non-negative")
    moves = {}
    for (u, v), m in g.edges.items():
        if u != g.target:
            moves.setdefault(u, []).append((v, m))
    degree = {u: sum(m for _, m in lst) for u, lst in moves.items()}
    current = {v: float(g.weights[v]) for v in g.nodes}
    total = dict(current)
    for _ in range(steps):
        nxt = dict.fromkeys(g.nodes, 0.0)
        for u, mass in current.items():
            if mass == 0.0 or u not in moves:
                continue
            for v, m in moves[u]:
                nxt[v] += a * mass * m / degree[u]
        current = nxt
        for v, mass in current.items():
            total[v] += mass
        if not any(current.values()):
            break
    return CentralityVector(total, "series", a)


def series_tail_bound(a: float, steps: int, total_weight: float) -> float:
    """Upper bound on the mass omitted by a ``steps``-term truncation (``a < 1`` only)."""
    if a >= 1:
        return float("inf")
    return a ** (steps + 1) * total_weight / (1 - a)


@dataclass(frozen=True)
class MonteCarloResult:
    estimate: dict
    stderr: dict
    capped_walks: int


def monte_carlo_visits(g: TargetedGraph, a: float, samples: int, seed: int, step_cap: int = 1_000_000) -> MonteCarloResult:
    """Simulate ``samples`` decayed walks from every weighted source.

    Each step picks an outgoing edge with probability proportional to its
    multiplicity and continues with probability ``a``. Estimates are scaled by
    the source weight; standard errors come from the per-walk visit variance.
    """
    if not 0 <= a <= 1:
        raise ValueError("a must lie in [0, 1]")
    order = sorted(g.nodes)
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    t = index[g.target]
    cum = np.zeros((n, n))
    for u in order:
        if u == g.target:
            continue
        row = np.zeros(n)
        for v, m in g.successors(u).items():
            row[index[v]] += m
        cum[index[u]] = np.cumsum(row / row.sum())
    cum[:, -1] = np.where(cum[:, -1] > 0, 1.0, 0.0)

    rng = np.random.default_rng(seed)
    mean = np.zeros(n)
    var = np.zeros(n)
    capped = 0
    for s in sorted(g.weights):
        weight = float(g.weights[s])
        counts = np.zeros((samples, n))
        pos = np.full(samples, index[s])
        alive = np.arange(samples)
        counts[alive, pos] += 1
        steps = 0
        while alive.size:
            here = pos[alive]
            keep = here != t
            if a < 1:
                keep &= rng.random(alive.size) < a
            alive, here = alive[keep], here[keep]
            if not alive.size:
                break
            u = 1.0 - rng.random(alive.size)  # in (0, 1] so zero-probability columns are never hit
            nxt = (cum[here] < u[:, None]).sum(axis=1)
            pos[alive] = nxt
            counts[alive, nxt] += 1
            steps += 1
            if steps >= step_cap:
                capped += int(alive.size)
                log.warning("step cap %d hit by %d walks from %r", step_cap, alive.size, s)
                break
        mean += weight * counts.mean(axis=0)
        if samples > 1:
            var += weight**2 * counts.var(axis=0, ddof=1) / samples
    return MonteCarloResult(
        dict(zip(order, mean.tolist())),
        dict(zip(order, np.sqrt(var).tolist())),
        capped,
    )
