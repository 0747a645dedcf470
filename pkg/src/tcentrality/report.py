"""Serialization of centrality vectors, axiom results and matrix reports.

JSON output is byte-stable: keys are sorted and every float is rounded to 12
significant digits before encoding. Graphs inside reports are embedded in the
graph text format so they can be fed straight back to the command line.
"""

from __future__ import annotations

import json
import math

from .axioms import (
    BASELINES,
    EXPECTED_BASELINE,
    FAMILIES,
    AxiomCheckResult,
    CellResult,
    MatrixReport,
    Verdict,
)
from .centrality import CentralityVector, Measure
from .graph import TargetedGraph, WeightVector
from .textformat import format_graph

SIG_DIGITS = 12


def number(x) -> float | int | None:
    """Round to 12 significant digits; integers pass through unchanged."""
    if isinstance(x, bool) or x is None:
        return x
    if isinstance(x, int):
        return x
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    x = float(f"{x:.{SIG_DIGITS}g}")
    return 0.0 if x == 0 else x  # drop negative zero


def _plain(value):
    """Recursively convert report values into JSON-ready data."""
    if isinstance(value, TargetedGraph):
        return format_graph(value)
    if isinstance(value, WeightVector):
        return {str(k): number(v) for k, v in value.items()}
    if isinstance(value, Measure):
        return measure_dict(value)
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, float):
        return number(value)
    if isinstance(value, (int, str, bool)) or value is None:
        return value
    return str(value)


def dumps(data) -> str:
    return json.dumps(_plain(data), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def measure_dict(measure: Measure) -> dict:
    out = {"measure": measure.name}
    if measure.alpha is not None:
        out["alpha"] = number(measure.alpha)
    return out


def vector_dict(vector: CentralityVector, measure: Measure) -> dict:
    out = measure_dict(measure)
    out["values"] = {v: number(x) for v, x in vector.sorted_items()}
    return out


def vector_text(vector: CentralityVector) -> str:
    items = vector.sorted_items()
    width = max((len(v) for v, _ in items), default=4)
    return "".join(f"{v:<{width}}  {x:.12g}\n" for v, x in items)


def result_dict(result: AxiomCheckResult) -> dict:
    out = {
        "axiom": result.axiom.value,
        **measure_dict(result.measure),
        "verdict": result.verdict.value,
        "trials_run": result.trials_run,
        "inapplicable_trials": result.inapplicable_trials,
    }
    if result.witness is not None:
        w = result.witness
        out["witness"] = {
            "inputs": _plain(w.inputs),
            "graphs": _plain(w.graphs),
            "deltas": _plain(w.deltas),
        }
    return out


def cell_dict(cell: CellResult) -> dict:
    return {
        "axiom": cell.axiom.value,
        "family": cell.family,
        "expected": cell.expected.value,
        "verdict": cell.verdict.value,
        "matches": cell.matches,
        "budget_exhausted": cell.budget_exhausted,
        "variants": [result_dict(r) for r in cell.variants],
    }


def matrix_dict(report: MatrixReport) -> dict:
    cfg = report.config
    return {
        "config": {
            "max_nodes": cfg.max_nodes,
            "max_multiplicity": cfg.max_multiplicity,
            "edge_density": number(cfg.edge_density),
            "weight_range": [number(x) for x in cfg.weight_range],
            "seed": cfg.seed,
            "trials": cfg.trials,
            "alphas": [number(a) for a in cfg.alphas],
        },
        "matches": report.matches,
        "cells": [cell_dict(c) for c in report.cells.values()],
        "baseline": {
            f: {
                "satisfied": [v.value for v in row.satisfied],
                "expected": row.expected.value,
                "matches": row.matches,
            }
            for f, row in report.baseline.items()
        },
    }


_MARK = {Verdict.HOLDS: "✓", Verdict.VIOLATED: "✗", Verdict.INAPPLICABLE: "?"}
_HEAD = {"stress": "S", "betweenness": "B", "rwb": "RWB", "pagerank": "PR"}
_BASELINE_SHORT = {BASELINES[0]: "1-1", BASELINES[1]: "k-k", BASELINES[2]: "1-a"}


def matrix_text(report: MatrixReport) -> str:
    """Verdict grid with axioms as rows; ``!`` flags a cell that disagrees with expectation."""
    families = [f for f in FAMILIES if any(k[1] == f for k in report.cells) or f in report.baseline]
    axioms = list(dict.fromkeys(a for a, _ in report.cells))
    width = max([len("Baseline")] + [len(a.value) for a in axioms])
    lines = [" " * width + "".join(f"  {_HEAD[f]:>5}" for f in families)]
    for axiom in axioms:
        row = f"{axiom.value:<{width}}"
        for f in families:
            cell = report.cells.get((axiom, f))
            mark = "" if cell is None else _MARK[cell.verdict] + ("" if cell.matches else "!")
            row += f"  {mark:>5}"
        lines.append(row)
    if report.baseline:
        row = f"{'Baseline':<{width}}"
        for f in families:
            b = report.baseline.get(f)
            mark = "" if b is None else ",".join(_BASELINE_SHORT[v] for v in b.satisfied) or "none"
            if b is not None and not b.matches:
                mark += "!"
            row += f"  {mark:>5}"
        lines.append(row)
    lines.append("")
    lines.append("matrix matches expectation" if report.matches else f"{len(report.mismatches)} cell(s) disagree with expectation")
    for cell in report.cells.values():
        if cell.matches:
            continue
        lines.append(f"  {cell.axiom.value} / {cell.family}: expected {cell.expected.value}, got {cell.verdict.value}"
                     + (" (search budget exhausted)" if cell.budget_exhausted else ""))
        wr = cell.witness_result
        if wr is not None:
            lines.extend("    " + ln for ln in witness_text(wr).splitlines())
    for f, b in report.baseline.items():
        if not b.matches:
            lines.append(f"  Baseline / {f}: expected {EXPECTED_BASELINE[f].value}, got {[v.value for v in b.satisfied]}")
    return "\n".join(lines) + "\n"


def witness_text(result: AxiomCheckResult) -> str:
    w = result.witness
    lines = [f"{result.axiom.value} violated by {result.measure.label}"]
    params = {k: v for k, v in w.inputs.items() if not isinstance(v, TargetedGraph)}
    if params:
        lines.append("parameters: " + ", ".join(f"{k}={_plain(v)}" for k, v in params.items()))
    for name, g in w.graphs.items():
        lines.append(f"--- {name}")
        lines.extend(format_graph(g).splitlines())
        lines.append("# values: " + ", ".join(f"{v}={x:.12g}" for v, x in result.measure(g).sorted_items()))
    lines.append("deltas: " + ", ".join(f"{v}={d:.12g}" for v, d in sorted(w.deltas.items())))
    return "\n".join(lines) + "\n"
