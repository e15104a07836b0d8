import random

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as hst

from conftest import m1, m2
from oracles import accepted_words, count_accepted, inorder_sorted, random_dfa
from stralg import graphs
from stralg.automaton import (EMPTY, Dfa, accepts, classify_states, compare_inorder,
                              enumerate_linguage, inorder_key, linguage_flags, make_dfa,
                              to_dot, trim_good)
from stralg.hammock import build_hammock_automaton

dfas = hst.builds(lambda seed: random_dfa(random.Random(seed)), hst.integers(0, 10 ** 9))


def test_trim_removes_unreachable():
    m = m1()
    extra = make_dfa(list(map(tuple, [t for t in m.transitions()])) + [("z", "0", "p1")],
                     "p0", ["p2"])
    assert trim_good(extra).states == m.states


def test_trim_keeps_gp23_hammock(gp23):
    m = build_hammock_automaton(gp23, ("v", 1)).dfa
    assert trim_good(m) == m
    assert len(m.states) == 6


def test_trim_without_accepts_is_empty():
    assert trim_good(make_dfa([(0, "0", 1)], 0, [])) == EMPTY


@settings(max_examples=60, deadline=None)
@given(dfas)
def test_trim_preserves_language(m):
    assert accepted_words(trim_good(m), 8) == accepted_words(m, 8) or trim_good(m).is_empty


@settings(max_examples=60, deadline=None)
@given(dfas)
def test_trim_result_is_good(m):
    g = trim_good(m)
    if g.is_empty:
        assert accepted_words(m, 8) == set()
        return
    reach = graphs.reachable(g.graph, [g.start])
    coreach = graphs.reachable(graphs.reverse(g.graph), g.accepts)
    assert set(g.states) == reach == coreach


def test_accepts_examples():
    assert accepts(m1(), "01")
    assert not accepts(m1(), "0")
    assert accepts(m2(), "1")
    assert not accepts(EMPTY, "")


def test_inorder_key_matches_comparator():
    words = ["", "0", "1", "00", "01", "10", "11", "010", "101", "0011"]
    for x in words:
        for y in words:
            k = (inorder_key(x) > inorder_key(y)) - (inorder_key(x) < inorder_key(y))
            assert k == compare_inorder(x, y)


def test_inorder_key_matches_dyadic_oracle():
    words = ["".join(bits) for n in range(6) for bits in __import__("itertools").product("01", repeat=n)]
    assert sorted(words, key=inorder_key) == inorder_sorted(words)


def test_enumerate_linguage_examples(gp23):
    assert enumerate_linguage(m1(), 3) == ["001", "01"]
    assert enumerate_linguage(EMPTY, 5) == []
    h = build_hammock_automaton(gp23, ("v", 1)).dfa
    assert enumerate_linguage(h, 2) == ["0", "01", "", "10", "1", "11"]


@settings(max_examples=60, deadline=None)
@given(dfas, hst.integers(0, 7))
def test_enumerate_linguage_sorted_and_complete(m, n):
    words = enumerate_linguage(m, n)
    assert set(words) == accepted_words(m, n)
    assert all(compare_inorder(x, y) == -1 for x, y in zip(words, words[1:]))


def test_classify_m2():
    cls = classify_states(m2())
    assert cls.eta == {"p", "q"}


def test_classify_m1():
    cls = classify_states(m1())
    assert "p1" in cls.omega
    assert "p2" not in cls.omega_bar


def test_classify_gp23_all_eta_bar(gp23):
    m = build_hammock_automaton(gp23, ("v", 1)).dfa
    cls = classify_states(m)
    assert cls.eta_bar == set(m.states)
    assert "b-a" in cls.eta


@settings(max_examples=100, deadline=None)
@given(dfas)
def test_classification_implications(m):
    g = trim_good(m)
    cls = classify_states(g)
    assert cls.eta <= cls.omega
    assert cls.eta <= cls.eta_bar
    assert cls.eta_bar <= cls.omega_bar
    assert cls.omega <= cls.omega_bar


@settings(max_examples=100, deadline=None)
@given(dfas)
def test_eta_witness_matches_component_branching(m):
    """A state is eta iff both successors lie in its strongly connected
    component (networkx used only as a reference here)."""
    g = trim_good(m)
    if g.is_empty:
        return
    G = nx.DiGraph()
    G.add_nodes_from(g.states)
    G.add_edges_from((q, q2) for (q, _), q2 in g.delta.items())
    comp = {q: k for k, c in enumerate(nx.strongly_connected_components(G)) for q in c}
    expected = {q for q in g.states
                if all((q, c) in g.delta and comp[g.delta[(q, c)]] == comp[q] for c in "01")}
    assert classify_states(g).eta == expected


@settings(max_examples=100, deadline=None)
@given(dfas)
def test_kosaraju_matches_networkx(m):
    G = nx.DiGraph()
    G.add_nodes_from(m.states)
    G.add_edges_from((q, q2) for (q, _), q2 in m.delta.items())
    ours = {frozenset(c) for c in graphs.kosaraju(m.graph)}
    assert ours == {frozenset(c) for c in nx.strongly_connected_components(G)}


def test_kosaraju_topological_order():
    g = {1: [2], 2: [3], 3: [2, 4], 4: []}
    comps = [set(c) for c in graphs.kosaraju(g)]
    assert comps == [{1}, {2, 3}, {4}]


def test_linguage_flags_examples():
    f1 = linguage_flags(m1())
    assert (f1.empty, f1.finite, f1.scattered) == (False, False, True)
    f2 = linguage_flags(m2())
    assert (f2.empty, f2.finite, f2.scattered) == (False, False, False)
    single = linguage_flags(make_dfa([], 0, [0]))
    assert single.finite and single.cardinality == 1


@settings(max_examples=100, deadline=None)
@given(dfas)
def test_finite_flag_matches_stabilisation(m):
    """Finite iff no new words appear between lengths 2n and 2n + |Q|."""
    n = len(m.states)
    flags = linguage_flags(m)
    a = count_accepted(m, 2 * n)
    b = count_accepted(m, 3 * n)
    assert flags.finite == (a == b)
    if flags.finite:
        assert flags.cardinality == a


def test_dfa_validation():
    with pytest.raises(ValueError):
        Dfa(("a",), "b", frozenset(), {})


def test_json_round_trip():
    m = m2()
    assert Dfa.from_json(m.to_json()).to_json() == m.to_json()


def test_dot_export_conventions():
    text = to_dot(m1())
    assert "doublecircle" in text
    assert "__start -> q0" in text
    assert text.count("->") == 4
