import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liquidtally import (
    Delegation,
    DelegationGraph,
    GraphValidationError,
    Node,
    WeightMode,
    build_graph,
    validate,
)


def weights_from(graph, source):
    return {e.target: e.weight for e in graph.out_edges[source]}


def test_figure1_equal_split_weights(fig1):
    assert fig1.weight_mode is WeightMode.EQUAL_SPLIT
    assert len(fig1) == 25
    assert weights_from(fig1, "H") == {"I": Fraction(1, 2), "J": Fraction(1, 2)}
    assert set(weights_from(fig1, "I").values()) == {Fraction(1, 3)}
    assert set(weights_from(fig1, "T").values()) == {Fraction(1, 5)}
    assert validate(fig1).ok
    assert validate(fig1).warnings == []


def test_single_node():
    g = build_graph([("A", True)])
    assert g.weight_mode is WeightMode.EQUAL_SPLIT
    assert g.edges == ()
    assert validate(g).ok


def error_codes(nodes, edges):
    with pytest.raises(GraphValidationError) as info:
        build_graph(nodes, edges)
    return [(i.code, i.element) for i in info.value.report.errors]


@pytest.mark.parametrize(
    "nodes, edges, expected",
    [
        ([("A", True)], [("A", "A")], ("SELF_LOOP", ("A", "A"))),
        ([("A", True), ("A", False)], [], ("DUPLICATE_NODE", "A")),
        ([("A", True), ("B", False)], [("B", "A"), ("B", "A")], ("DUPLICATE_EDGE", ("B", "A"))),
        ([("A", True)], [("B", "A")], ("UNKNOWN_ENDPOINT", ("B", "A"))),
        ([("A", True), ("B", False)], [("B", "A", 1.5)], ("WEIGHT_OUT_OF_RANGE", ("B", "A"))),
        ([("A", True), ("B", False)], [("B", "A", 0)], ("WEIGHT_OUT_OF_RANGE", ("B", "A"))),
        ([("A", True), ("B", False)], [("B", "A", float("nan"))], ("WEIGHT_OUT_OF_RANGE", ("B", "A"))),
        ([("", True)], [], ("INVALID_NODE_ID", "")),
        (
            [("A", True), ("B", True), ("C", False)],
            [("C", "A", 0.7), ("C", "B", 0.5)],
            ("WEIGHT_SUM_EXCEEDS_ONE", "C"),
        ),
        (
            [("A", True), ("B", True), ("C", False)],
            [("C", "A", 0.5), ("C", "B")],
            ("MIXED_WEIGHT_MODE", "C"),
        ),
    ],
)
def test_build_errors(nodes, edges, expected):
    assert expected in error_codes(nodes, edges)


def test_error_carries_code():
    with pytest.raises(GraphValidationError) as info:
        build_graph([("A", True)], [("A", "A")])
    assert info.value.code == "SELF_LOOP"


def test_explicit_weights_sum_checks():
    nodes = [("T", False), ("X", True), ("Y", True)]
    over = DelegationGraph(
        tuple(Node(i, v) for i, v in nodes),
        (Delegation("T", "X", 0.6), Delegation("T", "Y", 0.6)),
        WeightMode.EXPLICIT,
    )
    report = validate(over)
    assert [(i.code, i.element) for i in report.errors] == [("WEIGHT_SUM_EXCEEDS_ONE", "T")]

    under = build_graph(nodes, [("T", "X", 0.4), ("T", "Y", 0.4)])
    report = validate(under)
    assert report.ok
    assert [(i.code, i.element) for i in report.warnings] == [("WEIGHT_SUM_BELOW_ONE", "T")]


def test_sum_tolerance_boundary():
    nodes = [("T", False), ("X", True), ("Y", True)]
    almost = build_graph(nodes, [("T", "X", 0.5), ("T", "Y", 0.5 + 5e-10)])
    assert validate(almost).warnings == []
    with pytest.raises(GraphValidationError):
        build_graph(nodes, [("T", "X", 0.5), ("T", "Y", 0.5 + 2e-9)])


def test_unweighted_sources_in_explicit_graph_split_equally():
    g = build_graph(
        [("A", True), ("B", True), ("C", False), ("D", False)],
        [("C", "A", 0.25), ("D", "A"), ("D", "B")],
    )
    assert g.weight_mode is WeightMode.EXPLICIT
    assert weights_from(g, "D") == {"A": Fraction(1, 2), "B": Fraction(1, 2)}
    assert validate(g).ok


def test_validate_detects_bad_equal_split():
    g = DelegationGraph(
        (Node("A", True), Node("B", True), Node("C")),
        (Delegation("C", "A", 0.5), Delegation("C", "B", 0.25)),
    )
    codes = {i.code for i in validate(g).errors}
    assert codes == {"EQUAL_SPLIT_MISMATCH"}


def test_voters_may_carry_out_edges(fig1):
    assert fig1.outdegree("X") == 5
    assert fig1.is_voter("X")


ids = st.text(alphabet="abcdefgh", min_size=1, max_size=2)


@st.composite
def raw_graphs(draw):
    names = draw(st.lists(ids, min_size=1, max_size=12, unique=True))
    nodes = [(n, draw(st.booleans())) for n in names]
    pairs = draw(
        st.lists(st.tuples(st.sampled_from(names), st.sampled_from(names)), max_size=30, unique=True)
    )
    edges = [(a, b) for a, b in pairs if a != b]
    return nodes, edges


@settings(max_examples=200, deadline=None)
@given(raw_graphs())
def test_round_trip_validate(data):
    nodes, edges = data
    g = build_graph(nodes, edges)
    assert validate(g).errors == []
    for v in g.node_ids:
        out = g.out_edges.get(v, ())
        if out:
            assert all(e.weight == Fraction(1, len(out)) for e in out)
            assert sum(e.weight for e in out) == 1


@settings(max_examples=100, deadline=None)
@given(raw_graphs(), st.randoms(use_true_random=False))
def test_order_independence(data, rnd):
    nodes, edges = data
    shuffled_nodes, shuffled_edges = list(nodes), list(edges)
    rnd.shuffle(shuffled_nodes)
    rnd.shuffle(shuffled_edges)
    assert build_graph(nodes, edges) == build_graph(shuffled_nodes, shuffled_edges)


@settings(max_examples=100, deadline=None)
@given(raw_graphs(), st.data())
def test_arbitrary_garbage_is_reported_not_crashing(data, draw):
    nodes, edges = data
    names = [n for n, _ in nodes]
    extra = draw.draw(st.lists(st.tuples(st.sampled_from(names + ["zz"]), st.sampled_from(names))))
    try:
        g = build_graph(nodes, edges + extra)
    except GraphValidationError as exc:
        assert exc.report.errors
    else:
        assert validate(g).ok


def test_equal_split_float_within_ulp():
    for d in range(1, 40):
        names = [f"t{i}" for i in range(d)]
        g = build_graph([("s", False)] + [(n, True) for n in names], [("s", n) for n in names])
        for e in g.edges:
            assert abs(float(e.weight) - 1 / d) <= math.ulp(1 / d)
