"""Trust decay and user-chosen delegation weights.

Both produce an explicit-weight graph that the rest of the pipeline handles
unchanged. Decay multiplies every edge weight by ``beta``; along a chain of
``d`` delegations this compounds to ``beta ** d``, so long chains count less
and the missing mass is simply lost.
"""

import numbers
from dataclasses import dataclass

from .errors import GraphValidationError
from .graph import Delegation, DelegationGraph, ValidationReport, WeightMode, _collect_issues


@dataclass(frozen=True)
class DecayConfig:
    beta: float = 1.0

    def __post_init__(self):
        b = self.beta
        if not isinstance(b, numbers.Real) or isinstance(b, bool) or not (0 < b <= 1):
            raise ValueError(f"decay factor must be in (0, 1], got {b!r}")


def apply_decay(graph, cfg):
    """Scale every delegation weight by ``cfg.beta``.

    ``cfg`` may be a :class:`DecayConfig` or a bare number. ``beta == 1``
    returns ``graph`` itself.
    """
    if not isinstance(cfg, DecayConfig):
        cfg = DecayConfig(cfg)
    if cfg.beta == 1:
        return graph
    edges = tuple(Delegation(e.source, e.target, e.weight * cfg.beta) for e in graph.edges)
    return DelegationGraph(graph.nodes, edges, WeightMode.EXPLICIT)


def with_explicit_weights(graph, weights):
    """Replace the weights of selected delegations.

    Parameters
    ----------
    graph : DelegationGraph
    weights : mapping
        ``{(source, target): weight}``. Every source mentioned must have all of
        its out-edges listed; other sources keep their current weights.

    Raises
    ------
    GraphValidationError
        ``UNKNOWN_EDGE`` for a pair that is not an edge of ``graph``,
        ``MISSING_EDGE_WEIGHT`` when a source is only partly reweighted, plus
        the usual weight range and sum checks.
    """
    report = ValidationReport()
    existing = {(e.source, e.target) for e in graph.edges}
    for pair in weights:
        if pair not in existing:
            report.error("UNKNOWN_EDGE", pair, f"{pair} is not a delegation in the graph")
    sources = {s for s, _ in weights}
    for e in graph.edges:
        if e.source in sources and (e.source, e.target) not in weights:
            report.error(
                "MISSING_EDGE_WEIGHT",
                (e.source, e.target),
                f"{e.source!r} is reweighted but this edge has no weight",
            )
    if report.errors:
        raise GraphValidationError(report)

    edges = tuple(
        Delegation(e.source, e.target, weights.get((e.source, e.target), e.weight))
        for e in graph.edges
    )
    _collect_issues(graph.nodes, edges, WeightMode.EXPLICIT, report)
    if report.errors:
        raise GraphValidationError(report)
    return DelegationGraph(graph.nodes, edges, WeightMode.EXPLICIT)
