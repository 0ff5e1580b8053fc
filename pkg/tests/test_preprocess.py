import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liquidtally import (
    EmptyResultError,
    WeightMode,
    build_graph,
    preprocess,
    prune_unreachable,
    strip_voter_edges,
)

from conftest import FIGURE2_EDGES


def pairs(graph):
    return {(e.source, e.target) for e in graph.edges}


def test_strip_figure1(fig1):
    stripped = strip_voter_edges(fig1)
    removed = pairs(fig1) - pairs(stripped)
    expected = {("A", "B"), ("D", "C"), ("E", "F"), ("F", "E")}
    expected |= {("X", t) for t in "YTUVW"} | {("Y", t) for t in "TUVWX"}
    assert removed == expected
    assert pairs(stripped) == FIGURE2_EDGES
    assert "B" in stripped


def test_prune_figure1(fig1):
    sg = prune_unreachable(strip_voter_edges(fig1))
    assert sg.report.removed_nodes == {"B"}
    assert sg.report.retained_count == 24
    assert pairs(sg.graph) == FIGURE2_EDGES
    assert sg.report.warnings == ()


def test_preprocess_figure1(fig2):
    assert fig2.wasted == ["B"]
    assert len(fig2) == 24
    assert pairs(fig2.graph) == FIGURE2_EDGES
    assert ("A", "B") in fig2.report.removed_edges
    assert fig2.node_order == tuple(sorted("ACDEFGHIJKLMNOPQRSTUVWXY"))
    assert fig2.graph.weight_mode is WeightMode.EQUAL_SPLIT


def test_voterless_two_cycle_is_pruned():
    g = build_graph([("C2", False), ("D2", False), ("Z", True)], [("C2", "D2"), ("D2", "C2")])
    sg = preprocess(g)
    assert sg.report.removed_nodes == {"C2", "D2"}
    assert sg.node_order == ("Z",)


def test_no_voters_strip_is_identity_but_preprocess_fails():
    g = build_graph([("a", False), ("b", False)], [("a", "b")])
    assert strip_voter_edges(g) is g
    with pytest.raises(EmptyResultError) as info:
        preprocess(g)
    assert info.value.code == "EMPTY_RESULT"


def test_all_voters():
    g = build_graph([("a", True), ("b", True), ("c", True)], [("a", "b"), ("b", "c"), ("c", "a")])
    sg = preprocess(g)
    assert sg.graph.edges == ()
    assert sg.report.removed_nodes == frozenset()
    assert sg.node_order == ("a", "b", "c")


def test_partial_waste_is_flagged_and_not_renormalised():
    # H splits between voter I and dead-end non-voter B.
    g = build_graph([("H", False), ("I", True), ("B", False)], [("H", "I"), ("H", "B")])
    sg = preprocess(g)
    assert sg.report.removed_nodes == {"B"}
    assert [(w.code, w.element) for w in sg.report.warnings] == [("PARTIAL_WASTE", "H")]
    (edge,) = sg.graph.edges
    assert edge.weight == 0.5
    assert sg.graph.weight_mode is WeightMode.EXPLICIT


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 14))
    names = [f"n{i:02d}" for i in range(n)]
    voters = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    if not any(voters):
        voters[draw(st.integers(0, n - 1))] = True
    raw = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=3 * n))
    edges = sorted({(names[a], names[b]) for a, b in raw if a != b})
    return build_graph(list(zip(names, voters)), edges)


def to_nx(graph):
    d = nx.DiGraph()
    d.add_nodes_from(graph.node_ids)
    d.add_edges_from(pairs(graph))
    return d


@settings(max_examples=300, deadline=None)
@given(graphs())
def test_preprocess_properties(g):
    sg = preprocess(g)
    kept = set(sg.node_order)
    voters = g.voters

    # idempotence
    assert preprocess(sg.graph).graph == sg.graph
    # voter preservation
    assert sg.graph.voters == voters
    # no retained voter delegates
    assert all(e.source not in voters for e in sg.graph.edges)

    stripped = to_nx(strip_voter_edges(g))
    simplified = to_nx(sg.graph)
    for v in kept - voters:
        # soundness, checked inside the simplified graph
        assert any(nx.has_path(simplified, v, t) for t in voters)
    for v in sg.report.removed_nodes:
        # completeness, checked in the stripped graph
        assert v not in voters
        assert not any(nx.has_path(stripped, v, t) for t in voters)
    assert sg.report.retained_count == len(g) - len(sg.report.removed_nodes)
