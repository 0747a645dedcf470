"""Command-line entry point: ``tcentrality {compute,axioms,counterexample,oracle}``.

Exit codes: 0 success, 1 counterexample search exhausted, 2 bad flags,
3 unreadable graph file, 4 axiom matrix mismatch, 5 oracle tolerance breach.
"""

from __future__ import annotations

import argparse
import sys

from . import report
from .axioms import (
    BASELINES,
    EXPECTED,
    FAMILIES,
    MATRIX_AXIOMS,
    AxiomId,
    GraphGenConfig,
    find_counterexample,
    run_matrix,
)
from .centrality import MEASURES, Measure
from .errors import GraphError, ParseError
from .oracle import (
    OracleConfig,
    exact_rational_betweenness,
    exact_rational_stress,
    monte_carlo_visits,
    series_tail_bound,
    truncated_series_visits,
)
from .textformat import read_graph

EXIT_OK = 0
EXIT_EXHAUSTED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_MISMATCH = 4
EXIT_TOLERANCE = 5

# exact oracles are compared at this level; the series adds it as round-off allowance
EXACT_TOL = 1e-12
# with no decay the series tail has no a-priori bound; judged on this absolute level instead
UNDECAYED_SERIES_TOL = 1e-9


class UsageError(Exception):
    pass


def _measure(name: str, alpha: float | None) -> Measure:
    if name == "pagerank" and alpha is None:
        raise UsageError("--alpha is required for --measure pagerank")
    if name != "pagerank" and alpha is not None:
        raise UsageError(f"--alpha only applies to pagerank, not {name}")
    try:
        return Measure(name, alpha)
    except (ValueError, GraphError) as exc:
        raise UsageError(str(exc)) from None


def _load(path):
    try:
        return read_graph(path)
    except OSError as exc:
        raise ParseError(f"cannot read file: {exc.strerror}") from None


def cmd_compute(args, out) -> int:
    measure = _measure(args.measure, args.alpha)
    g = _load(args.graph)
    values = measure(g)
    if args.format == "json":
        out.write(report.dumps(report.vector_dict(values, measure)))
    else:
        out.write(report.vector_text(values))
    return EXIT_OK


def _axiom_filter(name):
    if name is None:
        return list(MATRIX_AXIOMS), True
    axiom = AxiomId(name)
    if axiom in BASELINES:
        return [], True
    return [axiom], False


def cmd_axioms(args, out) -> int:
    if args.axiom is not None and AxiomId(args.axiom) not in (*MATRIX_AXIOMS, *BASELINES):
        raise UsageError(f"--axiom must be a matrix axiom or baseline variant, not {args.axiom}")
    axioms, baseline = _axiom_filter(args.axiom)
    families = [args.measure] if args.measure else list(FAMILIES)
    try:
        config = GraphGenConfig(
            max_nodes=args.max_nodes, seed=args.seed, trials=args.trials, alphas=tuple(args.alpha_list)
        )
        for a in config.alphas:
            Measure("pagerank", a)
    except (ValueError, GraphError) as exc:
        raise UsageError(str(exc)) from None
    result = run_matrix(config, families=families, axioms=axioms, baseline=baseline)
    if args.format == "json":
        out.write(report.dumps(report.matrix_dict(result)))
    else:
        out.write(report.matrix_text(result))
    return EXIT_OK if result.matches else EXIT_MISMATCH


def cmd_counterexample(args, out) -> int:
    measure = _measure(args.measure, args.alpha)
    axiom = AxiomId(args.axiom)
    if axiom not in MATRIX_AXIOMS:
        raise UsageError(f"--axiom must be one of {[a.value for a in MATRIX_AXIOMS]}")
    if args.measure in EXPECTED[axiom]:
        print(f"{args.measure} satisfies {axiom.value}; there is no counterexample to find", file=sys.stderr)
        return EXIT_USAGE
    outcome = find_counterexample(
        axiom, measure, max_nodes=args.max_nodes, seed=args.seed,
        random_budget=args.budget, exhaustive=args.exhaustive,
    )
    if outcome.result is None:
        print(f"no witness found after {outcome.attempts} attempts", file=sys.stderr)
        return EXIT_EXHAUSTED
    if args.format == "json":
        data = report.result_dict(outcome.result)
        data["stage"] = outcome.stage
        data["values"] = {
            name: report.vector_dict(measure(g), measure)["values"]
            for name, g in outcome.result.witness.graphs.items()
        }
        out.write(report.dumps(data))
    else:
        out.write(f"# found by {outcome.stage} search after {outcome.attempts} attempts\n")
        out.write(report.witness_text(outcome.result))
    return EXIT_OK


def cmd_oracle(args, out) -> int:
    measure = _measure(args.measure, args.alpha)
    walk = measure.random_walk
    if args.method == "enumerate" and walk:
        raise UsageError("--method enumerate applies to stress and betweenness only")
    if args.method in ("series", "montecarlo") and not walk:
        raise UsageError(f"--method {args.method} applies to rwb and pagerank only")
    try:
        config = OracleConfig(series_steps=args.steps, sample_count=args.samples, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    g = _load(args.graph)
    analytic = measure(g)
    a = 1.0 if measure.alpha is None else measure.alpha
    scale = max(1.0, float(g.weights.total()))
    stderr = None

    if args.method == "enumerate":
        exact = (exact_rational_stress if measure.name == "stress" else exact_rational_betweenness)(g, config)
        reference = {v: float(x) for v, x in exact.items()}
        allowed = dict.fromkeys(g.nodes, EXACT_TOL * scale)
    elif args.method == "series":
        reference = dict(truncated_series_visits(g, a, config.series_steps))
        bound = series_tail_bound(a, config.series_steps, scale) if a < 1 else UNDECAYED_SERIES_TOL * scale
        allowed = dict.fromkeys(g.nodes, bound + EXACT_TOL * scale)
    else:
        mc = monte_carlo_visits(g, a, config.sample_count, config.seed, config.step_cap)
        reference, stderr = mc.estimate, mc.stderr
        allowed = {v: 3 * stderr[v] if stderr[v] > 0 else EXACT_TOL * scale for v in g.nodes}

    deviation = {v: abs(analytic[v] - reference[v]) for v in g.nodes}
    breaches = sorted(v for v in g.nodes if deviation[v] > allowed[v])
    worst = max(deviation.values(), default=0.0)
    if args.format == "json":
        data = {
            **report.measure_dict(measure),
            "method": args.method,
            "analytic": {v: report.number(analytic[v]) for v in sorted(g.nodes)},
            "oracle": {v: report.number(reference[v]) for v in sorted(g.nodes)},
            "allowed": {v: report.number(allowed[v]) for v in sorted(g.nodes)},
            "max_deviation": report.number(worst),
            "breaches": breaches,
        }
        if stderr is not None:
            data["stderr"] = {v: report.number(stderr[v]) for v in sorted(g.nodes)}
        out.write(report.dumps(data))
    else:
        width = max(len(v) for v in g.nodes)
        out.write(f"{'node':<{width}}  {'analytic':>20}  {'oracle':>20}  {'allowed':>10}\n")
        for v in sorted(g.nodes):
            flag = "  !" if v in breaches else ""
            out.write(f"{v:<{width}}  {analytic[v]:>20.12g}  {reference[v]:>20.12g}  {allowed[v]:>10.3g}{flag}\n")
        out.write(f"max deviation {worst:.3g}\n")
    return EXIT_TOLERANCE if breaches else EXIT_OK


def _alpha(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tcentrality", description="Target-oriented centralities on directed multigraphs.")
    sub = parser.add_subparsers(dest="command", required=True)
    axiom_names = [a.value for a in AxiomId]

    p = sub.add_parser("compute", help="evaluate a measure on a graph file")
    p.add_argument("--graph", required=True, help="graph file in the text format")
    p.add_argument("--measure", required=True, choices=MEASURES)
    p.add_argument("--alpha", type=_alpha, help="decay factor in [0, 1), pagerank only")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(run=cmd_compute)

    p = sub.add_parser("axioms", help="reproduce the axiom satisfaction matrix")
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--max-nodes", type=int, default=8)
    p.add_argument("--measure", choices=FAMILIES)
    p.add_argument("--axiom", choices=axiom_names)
    p.add_argument("--alpha-list", type=_alpha, nargs="+", default=[0.25, 0.5, 0.85])
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(run=cmd_axioms)

    p = sub.add_parser("counterexample", help="search for a witness that a measure breaks an axiom")
    p.add_argument("--measure", required=True, choices=MEASURES)
    p.add_argument("--axiom", required=True, choices=axiom_names)
    p.add_argument("--alpha", type=_alpha, help="decay factor in [0, 1), pagerank only")
    p.add_argument("--max-nodes", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=500, help="random instances to try")
    p.add_argument("--exhaustive", action="store_true", help="fall back to enumerating all tiny graphs")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(run=cmd_counterexample)

    p = sub.add_parser("oracle", help="compare the analytic values with a brute-force oracle")
    p.add_argument("--graph", required=True)
    p.add_argument("--measure", required=True, choices=MEASURES)
    p.add_argument("--alpha", type=_alpha)
    p.add_argument("--method", required=True, choices=("enumerate", "series", "montecarlo"))
    p.add_argument("--steps", type=int, default=1000, help="series terms")
    p.add_argument("--samples", type=int, default=100_000, help="walks per weighted source")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(run=cmd_oracle)
    return parser


def main(argv=None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.run(args, out)
    except UsageError as exc:
        print(f"tcentrality {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"tcentrality: {args.graph}: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
