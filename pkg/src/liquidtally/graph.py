"""Delegation graph model, construction and validation.

A delegation graph holds people (nodes), a flag telling whether each person
casts a ballot, and weighted directed edges ``source -> target`` meaning
"``source`` hands this fraction of its vote to ``target``".

Weights are either derived (``EQUAL_SPLIT``: every out-edge of a node gets
``1/outdegree`` stored as an exact :class:`~fractions.Fraction`) or supplied
by the caller (``EXPLICIT``).
"""

import enum
import math
import numbers
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .errors import GraphValidationError

#: Tolerance used when deciding whether explicit out-weights "sum to one".
WEIGHT_SUM_TOL = 1e-9


class WeightMode(str, enum.Enum):
    EQUAL_SPLIT = "equal_split"
    EXPLICIT = "explicit"


@dataclass(frozen=True)
class Node:
    id: str
    is_voter: bool = False


@dataclass(frozen=True)
class Delegation:
    source: str
    target: str
    weight: numbers.Real = 1


@dataclass(frozen=True)
class Issue:
    code: str
    element: object
    message: str


@dataclass
class ValidationReport:
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.errors

    def error(self, code, element, message):
        self.errors.append(Issue(code, element, message))

    def warn(self, code, element, message):
        self.warnings.append(Issue(code, element, message))


@dataclass(frozen=True)
class DelegationGraph:
    """Immutable delegation graph.

    ``nodes`` and ``edges`` are stored sorted (nodes by id, edges by
    ``(source, target)``), so two graphs built from the same data in a
    different order compare equal.
    """

    nodes: tuple
    edges: tuple = ()
    weight_mode: WeightMode = WeightMode.EQUAL_SPLIT

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes, key=lambda v: v.id)))
        object.__setattr__(
            self, "edges", tuple(sorted(self.edges, key=lambda e: (e.source, e.target)))
        )
        # without edges the two modes are indistinguishable
        mode = WeightMode(self.weight_mode) if self.edges else WeightMode.EQUAL_SPLIT
        object.__setattr__(self, "weight_mode", mode)

    @cached_property
    def node_ids(self):
        return tuple(v.id for v in self.nodes)

    @cached_property
    def voters(self):
        return frozenset(v.id for v in self.nodes if v.is_voter)

    @cached_property
    def out_edges(self):
        out = defaultdict(list)
        for e in self.edges:
            out[e.source].append(e)
        return {k: tuple(v) for k, v in out.items()}

    @cached_property
    def in_edges(self):
        inc = defaultdict(list)
        for e in self.edges:
            inc[e.target].append(e)
        return {k: tuple(v) for k, v in inc.items()}

    def is_voter(self, node_id):
        return node_id in self.voters

    def outdegree(self, node_id):
        return len(self.out_edges.get(node_id, ()))

    def out_weight(self, node_id):
        """Total weight leaving ``node_id`` (0 for a node without out-edges)."""
        return math.fsum(float(e.weight) for e in self.out_edges.get(node_id, ()))

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, node_id):
        return node_id in self._id_set

    @cached_property
    def _id_set(self):
        return frozenset(self.node_ids)


def _is_weight(w):
    return isinstance(w, numbers.Real) and not isinstance(w, bool)


def _collect_issues(nodes, edges, weight_mode, report):
    """Check every graph invariant on raw node/edge sequences."""
    ids = set()
    for v in nodes:
        if not isinstance(v.id, str) or not v.id:
            report.error("INVALID_NODE_ID", v.id, "node id must be a nonempty string")
        if v.id in ids:
            report.error("DUPLICATE_NODE", v.id, f"node {v.id!r} declared more than once")
        ids.add(v.id)

    seen = set()
    by_source = defaultdict(list)
    for e in edges:
        pair = (e.source, e.target)
        if e.source == e.target:
            report.error("SELF_LOOP", pair, f"{e.source!r} delegates to itself")
            continue
        missing = [x for x in pair if x not in ids]
        if missing:
            report.error(
                "UNKNOWN_ENDPOINT", pair, f"edge references undeclared node(s) {missing}"
            )
        if pair in seen:
            report.error("DUPLICATE_EDGE", pair, f"edge {pair} given more than once")
            continue
        seen.add(pair)
        w = e.weight
        if not _is_weight(w) or not (0 < w <= 1):
            report.error("WEIGHT_OUT_OF_RANGE", pair, f"weight {w!r} not in (0, 1]")
            continue
        by_source[e.source].append(e)

    for source, out in by_source.items():
        if weight_mode is WeightMode.EQUAL_SPLIT:
            expected = 1.0 / len(out)
            for e in out:
                if abs(float(e.weight) - expected) > math.ulp(expected):
                    report.error(
                        "EQUAL_SPLIT_MISMATCH",
                        (e.source, e.target),
                        f"weight {e.weight} != 1/{len(out)} in equal-split mode",
                    )
            continue
        total = math.fsum(float(e.weight) for e in out)
        if total > 1 + WEIGHT_SUM_TOL:
            report.error(
                "WEIGHT_SUM_EXCEEDS_ONE", source, f"out-weights of {source!r} sum to {total:.12g}"
            )
        elif total < 1 - WEIGHT_SUM_TOL:
            report.warn(
                "WEIGHT_SUM_BELOW_ONE",
                source,
                f"out-weights of {source!r} sum to {total:.12g}; the rest decays",
            )
    return report


def validate(graph):
    """Return a :class:`ValidationReport` listing every invariant violation."""
    return _collect_issues(graph.nodes, graph.edges, graph.weight_mode, ValidationReport())


def build_graph(nodes, edges=()):
    """Construct a validated :class:`DelegationGraph`.

    Parameters
    ----------
    nodes : iterable
        ``(id, is_voter)`` pairs or :class:`Node` instances.
    edges : iterable
        ``(source, target)`` or ``(source, target, weight)`` tuples, or
        :class:`Delegation` instances. ``weight=None`` means unweighted.

    Returns
    -------
    DelegationGraph
        In ``EQUAL_SPLIT`` mode when no edge carries a weight. Otherwise
        ``EXPLICIT``; sources whose edges are all unweighted still get
        ``1/outdegree`` each.

    Raises
    ------
    GraphValidationError
        With the complete report when any invariant fails.
    """
    node_list = [v if isinstance(v, Node) else Node(v[0], bool(v[1])) for v in nodes]

    raw = []
    for e in edges:
        if isinstance(e, Delegation):
            raw.append((e.source, e.target, e.weight))
        elif len(e) == 2:
            raw.append((e[0], e[1], None))
        else:
            raw.append((e[0], e[1], e[2]))

    report = ValidationReport()
    outdeg = defaultdict(int)
    weighted = defaultdict(set)
    for s, t, w in raw:
        outdeg[s] += 1
        weighted[s].add(w is not None)
    for s, kinds in weighted.items():
        if len(kinds) > 1:
            report.error(
                "MIXED_WEIGHT_MODE", s, f"{s!r} mixes weighted and unweighted delegations"
            )

    explicit = any(w is not None for _, _, w in raw)
    mode = WeightMode.EXPLICIT if explicit else WeightMode.EQUAL_SPLIT
    edge_list = [
        Delegation(s, t, Fraction(1, outdeg[s]) if w is None else w) for s, t, w in raw
    ]

    _collect_issues(node_list, edge_list, mode, report)
    if report.errors:
        raise GraphValidationError(report)
    return DelegationGraph(tuple(node_list), tuple(edge_list), mode)
