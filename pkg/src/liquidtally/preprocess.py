"""Graph preparation before tallying.

Two passes turn a raw delegation graph into one whose linear system is
nonsingular:

1. voters keep their own vote, so all of their out-edges are dropped;
2. a non-voter whose vote can never arrive at a voter is dropped, together
   with its edges. Its vote is *wasted*.

The second pass is a breadth-first search over reversed edges, seeded with
the voter set.
"""

from collections import deque
from dataclasses import dataclass, field

from .errors import EmptyResultError
from .graph import DelegationGraph, Issue, WeightMode


@dataclass(frozen=True)
class PruneReport:
    removed_nodes: frozenset = frozenset()
    removed_edges: frozenset = frozenset()
    retained_count: int = 0
    warnings: tuple = ()


@dataclass(frozen=True)
class SimplifiedGraph:
    """A preprocessed graph, ready for :func:`liquidtally.solver.build_system`.

    ``node_order`` is the lexicographic order of retained node ids and fixes
    the row/column layout of every matrix built from this graph.
    """

    graph: DelegationGraph
    report: PruneReport = field(default_factory=PruneReport)

    @property
    def node_order(self):
        return self.graph.node_ids

    @property
    def wasted(self):
        return sorted(self.report.removed_nodes)

    def __len__(self):
        return len(self.graph)


def strip_voter_edges(graph):
    """Return ``graph`` without any edge leaving a voter."""
    voters = graph.voters
    kept = tuple(e for e in graph.edges if e.source not in voters)
    if len(kept) == len(graph.edges):
        return graph
    return DelegationGraph(graph.nodes, kept, graph.weight_mode)


def reaching_voters(graph):
    """Set of node ids with a directed path to some voter (voters included)."""
    seen = set(graph.voters)
    queue = deque(sorted(seen))
    in_edges = graph.in_edges
    while queue:
        v = queue.popleft()
        for e in in_edges.get(v, ()):
            if e.source not in seen:
                seen.add(e.source)
                queue.append(e.source)
    return seen


def prune_unreachable(graph):
    """Drop every node that cannot pass its vote on to a voter.

    Weights of surviving edges are left as they are. A retained node that
    loses an out-edge this way now leaks part of its vote; each such node is
    listed as a ``PARTIAL_WASTE`` warning, and an equal-split graph is
    switched to explicit mode since ``1/outdegree`` no longer holds.
    """
    keep = reaching_voters(graph)
    removed_nodes = frozenset(graph.node_ids) - keep
    if not removed_nodes:
        return SimplifiedGraph(graph, PruneReport(retained_count=len(graph)))

    kept_edges, removed_edges = [], set()
    leaking = set()
    for e in graph.edges:
        if e.source in keep and e.target in keep:
            kept_edges.append(e)
        else:
            removed_edges.add((e.source, e.target))
            if e.source in keep:
                leaking.add(e.source)

    warnings = tuple(
        Issue("PARTIAL_WASTE", v, f"part of {v!r}'s vote goes to nodes that never vote")
        for v in sorted(leaking)
    )
    mode = WeightMode.EXPLICIT if leaking else graph.weight_mode
    nodes = tuple(v for v in graph.nodes if v.id in keep)
    report = PruneReport(
        removed_nodes=removed_nodes,
        removed_edges=frozenset(removed_edges),
        retained_count=len(nodes),
        warnings=warnings,
    )
    return SimplifiedGraph(DelegationGraph(nodes, tuple(kept_edges), mode), report)


def preprocess(graph):
    """Strip voter out-edges, then prune unreachable nodes.

    Raises
    ------
    EmptyResultError
        If nobody votes.
    """
    if not graph.voters:
        raise EmptyResultError("no voters in graph; nothing can be tallied")
    stripped = strip_voter_edges(graph)
    sg = prune_unreachable(stripped)
    stripped_pairs = {(e.source, e.target) for e in graph.edges if e.source in graph.voters}
    if not stripped_pairs:
        return sg
    report = PruneReport(
        removed_nodes=sg.report.removed_nodes,
        removed_edges=sg.report.removed_edges | stripped_pairs,
        retained_count=sg.report.retained_count,
        warnings=sg.report.warnings,
    )
    return SimplifiedGraph(sg.graph, report)
