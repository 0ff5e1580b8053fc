"""End-to-end tally: decay, preprocess, solve, attribute, report."""

import json
from dataclasses import dataclass
from fractions import Fraction

from .attribution import attribution_for_voter, full_attribution_matrix
from .extensions import apply_decay
from .graph import WEIGHT_SUM_TOL, validate
from .preprocess import preprocess
from .solver import Method, SolverConfig, solve

SIGNIFICANT_DIGITS = 12


def format_number(x):
    """12 significant digits for floats, ``"p/q"`` strings for fractions."""
    if isinstance(x, Fraction):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return float(f"{float(x):.{SIGNIFICANT_DIGITS}g}")


@dataclass
class PipelineRun:
    graph: object
    simplified: object
    result: object
    warnings: list


def run_pipeline(graph, config=None, beta=1.0):
    config = config or SolverConfig()
    graph = apply_decay(graph, beta)
    warnings = list(validate(graph).warnings)
    sg = preprocess(graph)
    warnings.extend(sg.report.warnings)
    return PipelineRun(graph, sg, solve(sg, config), warnings)


def leaked_mass(run):
    """Vote mass lost to decay or partial waste: ``sum_k (1 - out_k) S[k]``.

    ``out_k`` is the total weight leaving non-voter ``k`` in the simplified
    graph. Leaks within the weight-sum tolerance count as zero.
    """
    exact = run.result.method is Method.EXACT
    g = run.simplified.graph
    S = run.result.raw()
    lost = Fraction(0) if exact else 0.0
    for v in g.nodes:
        if v.is_voter:
            continue
        leak = 1 - sum((Fraction(e.weight) for e in g.out_edges.get(v.id, ())), Fraction(0))
        if abs(leak) <= WEIGHT_SUM_TOL and not exact:
            continue
        lost += leak * S[v.id] if exact else float(leak) * float(S[v.id])
    return lost


def tally_report(run, attributions=None, debug_s=False):
    """Build the JSON-ready report dictionary for a :class:`PipelineRun`.

    ``attributions`` is ``None``/``"none"``, ``"all"`` or a list of voter ids.
    """
    result, sg = run.result, run.simplified
    n = sg.report.retained_count
    exact = result.method is Method.EXACT
    actual = sum(result.voter_tallies.values(), Fraction(0) if exact else 0.0)
    lost = leaked_mass(run)
    gap = n - actual - lost
    passed = gap == 0 if exact else abs(gap) <= 1e-8 * max(n, 1)

    report = {
        "voter_tallies": {v: format_number(s) for v, s in sorted(result.voter_tallies.items())},
        "retained": n,
        "wasted_nodes": sg.wasted,
        "conservation_check": {
            "expected": n,
            "actual": format_number(actual),
            "leaked": format_number(lost),
            "pass": bool(passed),
        },
        "decay_loss": format_number(lost),
        "solver": {
            "method": result.method.value,
            "iterations": result.iterations,
            "residual": format_number(result.residual),
        },
        "warnings": [{"code": w.code, "element": str(w.element)} for w in run.warnings],
    }
    if attributions and attributions != "none":
        if attributions == "all":
            vectors = full_attribution_matrix(sg)
        else:
            vectors = {v: attribution_for_voter(sg, v) for v in attributions}
        report["attributions"] = {v: attribution_dict(a) for v, a in sorted(vectors.items())}
    if debug_s:
        report["debug_raw_S"] = {
            "note": "raw solver output; entries of non-voters are NOT would-have tallies",
            "values": {v: format_number(s) for v, s in result.raw().items()},
        }
    return report


def attribution_dict(vec):
    return {
        "voter": vec.voter,
        "contributions": {k: format_number(x) for k, x in sorted(vec.contributions.items())},
        "total": format_number(vec.total),
    }


def to_json(obj):
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def to_csv(report):
    rows = ["node,votes"]
    rows += [f"{v},{x}" for v, x in report["voter_tallies"].items()]
    return "\n".join(rows) + "\n"
