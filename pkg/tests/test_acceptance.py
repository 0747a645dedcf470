"""Acceptance gate: one test per criterion, each printed as a PASS/FAIL line in the summary."""

import random
import time
from fractions import Fraction

from tcentrality import shapes
from tcentrality.axioms import (
    EXPECTED_BASELINE,
    LEMMAS,
    GraphGenConfig,
    Verdict,
    check_additivity,
    check_edge_multiplication,
    check_edge_swap,
    generate_graph,
    replay,
    run_lemmas,
    run_matrix,
    small_graphs,
)
from tcentrality.centrality import Measure, betweenness, expected_visits, pagerank, random_walk_betweenness, stress
from tcentrality.graph import TargetedGraph, WeightVector, edge_swap, multiply_out_edges, shortest_path_counts
from tcentrality.oracle import (
    enumerate_shortest_paths,
    exact_rational_betweenness,
    monte_carlo_visits,
    series_tail_bound,
    truncated_series_visits,
)

EXACT = 1e-12
AXIOM_TOL = 1e-9
# float64 evaluation of the same sum in two different orders; see the series criterion
ROUND_OFF = 1e-12


def assert_close(vector, expected, tol=EXACT):
    for v, x in expected.items():
        assert abs(vector[v] - x) <= tol, (v, vector[v], x)


def test_criterion_1_twin_sources_betweenness(detail):
    """criterion 1: twin-source graph betweenness, exact and floating, under 10 ms"""
    g = shapes.twin_sources_graph()
    expected = {"s1": 1, "s2": 2, "v1": 1, "v2": 2, "v3": 3}
    assert exact_rational_betweenness(g) == {v: Fraction(x) for v, x in expected.items()}
    betweenness(g)  # warm up imports and caches
    start = time.perf_counter()
    values = betweenness(g)
    elapsed = time.perf_counter() - start
    assert_close(values, expected)
    assert elapsed < 0.010
    detail(f"{elapsed * 1e3:.2f} ms")


def test_criterion_2_shortcut_triangle(detail):
    """criterion 2: shortcut triangle betweenness and random-walk values of v"""
    g = shapes.shortcut_triangle_graph()
    assert_close(betweenness(g), {"s": 1, "v": 0, "t": 1})
    forward = expected_visits(g, 1.0)["v"]
    backward = expected_visits(shapes.shortcut_triangle_reversed(), 1.0)["v"]
    assert abs(forward - 1 / 2) <= EXACT
    assert abs(backward - 2 / 3) <= EXACT
    detail(f"v: {forward:.12g} and {backward:.12g}")


def test_criterion_3_two_source_fan(detail):
    """criterion 3: two-source fan values, invariant under its swap and multiplication steps"""
    expected = {"s1": 1, "s2": 1, "v1": 1, "v2": 0.5, "t": 2}
    g = shapes.two_source_fan_graph()
    g1 = edge_swap(g, ("s1", "t"), ("s2", "v1"))
    g2 = shapes.two_source_fan_unified()
    assert multiply_out_edges(g2, "s1", 1) == g1
    for h in (g, g1, g2):
        assert_close(expected_visits(h, 1.0), expected)
    rwb = Measure("rwb")
    assert check_edge_swap(rwb, g, ("s1", "t"), ("s2", "v1")).verdict is Verdict.HOLDS
    assert check_edge_multiplication(rwb, g2, "s1", 1).verdict is Verdict.HOLDS


def test_criterion_4_baseline_family():
    """criterion 4: baseline graphs k = 1..10 for all four measures"""
    for k in range(1, 11):
        g = shapes.baseline_graph(k)
        assert_close(stress(g), {"s": k, "t": k})
        assert_close(betweenness(g), {"s": 1, "t": 1})
        assert_close(random_walk_betweenness(g), {"s": 1, "t": 1})
        for a in (0, 0.25, 0.5, 0.85, 0.99):
            assert_close(pagerank(g, a), {"s": 1, "t": a})


def test_criterion_5_satisfaction_matrix(detail):
    """criterion 5: axiom matrix at default config, witnesses of at most 6 nodes, under 60 s"""
    start = time.perf_counter()
    report = run_matrix(GraphGenConfig(max_nodes=8, trials=200, seed=42, alphas=(0.25, 0.5, 0.85)))
    elapsed = time.perf_counter() - start
    for (axiom, family), cell in report.cells.items():
        assert cell.matches, (axiom.value, family, cell.verdict)
        if cell.expected is Verdict.HOLDS:
            assert all(r.verdict is Verdict.HOLDS for r in cell.variants), (axiom.value, family)
        if cell.expected is Verdict.VIOLATED:
            witness = cell.witness_result
            assert witness.witness.size[0] <= 6
            again = replay(witness)
            assert again.verdict is Verdict.VIOLATED
            assert again.witness.deltas == witness.witness.deltas
    for family, row in report.baseline.items():
        assert row.satisfied == [EXPECTED_BASELINE[family]], family
    assert elapsed < 60
    detail(f"{elapsed:.1f} s")


def test_criterion_6_derived_lemmas(detail):
    """criterion 6: derived lemmas hold on 200 random instances each"""
    results = run_lemmas(GraphGenConfig(trials=200, seed=42))
    checked = 0
    for (lemma, family), variants in results.items():
        for r in variants:
            assert r.verdict is Verdict.HOLDS, (lemma.value, r.measure.label, r.witness and r.witness.deltas)
            assert r.trials_run - r.inapplicable_trials == 200
            checked += r.trials_run
    assert {lemma for lemma, _ in results} == set(LEMMAS)
    detail(f"{checked} checks")


def _random_graphs(count, seed, max_nodes):
    config = GraphGenConfig(max_nodes=max_nodes, seed=seed)
    return [generate_graph(config, random.Random(f"{seed}:{i}")) for i in range(count)]


def test_criterion_7_oracle_equivalence(detail):
    """criterion 7: path counts, series and Monte Carlo agree with the analytic solvers, under 5 min"""
    start = time.perf_counter()

    # (a) exact path counts
    swept = 0
    for graph in small_graphs(4, 6):
        g = TargetedGraph(graph, "t")
        swept += 1
        for s in g.nodes:
            paths, table = enumerate_shortest_paths(g, s), shortest_path_counts(g, s)
            assert (paths.sigma_total, paths.sigma_through) == (table.sigma_total, table.sigma_through)
    for g in _random_graphs(500, 7, 7):
        for s in g.nodes:
            paths, table = enumerate_shortest_paths(g, s), shortest_path_counts(g, s)
            assert (paths.sigma_total, paths.sigma_through) == (table.sigma_total, table.sigma_through)

    # (b) truncated series, K = 1000; the tail bound plus a float64 round-off allowance
    rng = random.Random(71)
    worst_excess = 0.0
    for g in _random_graphs(200, 72, 8):
        a = rng.choice([0.0, 0.25, 0.5, 0.85, 0.95, round(rng.uniform(0, 0.95), 4)])
        total = float(g.weights.total())
        series = truncated_series_visits(g, a, 1000)
        solved = expected_visits(g, a)
        bound = series_tail_bound(a, 1000, total)
        for v in g.nodes:
            gap = abs(series[v] - solved[v])
            assert gap <= bound + ROUND_OFF * max(1.0, total), (v, a, gap)
            worst_excess = max(worst_excess, gap - bound)

    # (c) Monte Carlo at a = 1, N = 100000
    cells = misses = 0
    for i, g in enumerate(_random_graphs(100, 73, 8)):
        mc = monte_carlo_visits(g, 1.0, 100_000, seed=i)
        assert mc.capped_walks == 0
        solved = expected_visits(g, 1.0)
        for v in g.nodes:
            cells += 1
            se = mc.stderr[v]
            allowed = 3 * se if se > 0 else AXIOM_TOL
            misses += abs(mc.estimate[v] - solved[v]) > allowed
    assert misses <= 0.01 * cells

    elapsed = time.perf_counter() - start
    assert elapsed < 300
    detail(f"{swept} small graphs; series excess over tail bound {worst_excess:.1e}; MC misses {misses}/{cells}; {elapsed:.0f} s")


def test_criterion_8_linearity(detail):
    """criterion 8: additivity on 200 random triples and scaling of unit weights, every measure"""
    config = GraphGenConfig(seed=8)
    for family in ("stress", "betweenness", "rwb", "pagerank"):
        measures = [Measure("pagerank", a) for a in (0.25, 0.5, 0.85)] if family == "pagerank" else [Measure(family)]
        rng = random.Random(f"linearity:{family}")
        for _ in range(200):
            g = generate_graph(config, rng)
            b2 = WeightVector({v: round(rng.uniform(0, 3), 3) for v in g.sorted_nodes() if rng.random() < 0.5})
            s = rng.choice(g.sorted_nodes())
            for m in measures:
                assert check_additivity(m, g, b2, AXIOM_TOL).verdict is Verdict.HOLDS, (family, m.label)
                unit = m(g.with_weights({s: 1}))
                for x in (0, 0.5, 3):
                    scaled = m(g.with_weights({s: x}))
                    for v in g.nodes:
                        assert abs(scaled[v] - x * unit[v]) <= AXIOM_TOL * max(1, x)
    detail("4 measures x 200 triples")
