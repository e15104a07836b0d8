import pytest

from conftest import CORPUS, load
from stralg.exceptional import (LEFT, RIGHT, SOURCE, BandError, decide_exceptional,
                                exceptional_by_simulation, exceptional_report, periodic_part,
                                pruned_quiver, quiver_dot)
from stralg.hammock import build_hammock_automaton
from stralg.strings import Word, canonical_band, is_band, short_universe

W = Word.parse


def test_decide_examples(gp23, kronecker, loop_a2):
    assert decide_exceptional(gp23, "v", W("ab-"), LEFT) is False
    assert decide_exceptional(kronecker, "1", W("b-a"), LEFT) is True
    assert decide_exceptional(kronecker, "1", W("b-a"), RIGHT) is True
    with pytest.raises(BandError):
        decide_exceptional(loop_a2, "v", W("a"), LEFT)


def test_decide_accepts_powers(kronecker):
    assert decide_exceptional(kronecker, "1", W("b-ab-a"), LEFT) is True


def test_decide_rejects_foreign_vertex(kronecker):
    with pytest.raises(BandError):
        decide_exceptional(kronecker, "2", W("b-a"), LEFT)


def test_gp23_report(gp23):
    r = exceptional_report(gp23)
    assert r.e == 0
    assert r.bound == 62
    assert not r.diagnostics
    doc = r.to_json()
    assert doc["schema"] == "exceptional-report/1" and doc["e"] == 0


def test_kronecker_report(kronecker):
    r = exceptional_report(kronecker)
    assert r.e == 2
    assert {(pt.vertex, str(pt.cyclic_word)) for pt in r.points} == {("1", "b-a"), ("2", "ab-")}
    assert all(pt.left_exceptional and pt.right_exceptional for pt in r.points)
    assert all(is_band(kronecker, pt.band) for pt in r.points)
    assert sorted(r.by_vertex()) == ["1", "2"]


def test_gp22_report():
    r = exceptional_report(load("gp22"))
    assert r.e == 2
    assert {str(pt.cyclic_word) for pt in r.points} == {"ab-", "b-a"}


def test_source_coupled_rejections(gp23):
    r = exceptional_report(gp23, d_orientation=SOURCE)
    assert r.e == 0
    assert r.rejected
    for v, side, band in r.rejected:
        assert decide_exceptional(gp23, v, band, side) is False
    assert ("v", LEFT, W("ab-")) in r.rejected


@pytest.mark.parametrize("name", CORPUS)
def test_simulation_agrees(name):
    p = load(name)
    found = {(pt.vertex, pt.cyclic_word, pt.left_exceptional, pt.right_exceptional)
             for pt in exceptional_report(p).points}
    assert found == exceptional_by_simulation(p)


@pytest.mark.parametrize("name", CORPUS)
def test_bound(name):
    p = load(name)
    r = exceptional_report(p)
    if p.relations:
        assert r.e < len(p.vertices) * (2 ** (p.r + 3) - 2) == r.bound
        assert len(short_universe(p).members) <= len(p.vertices) * (2 ** (p.r + 2) - 1)


@pytest.mark.parametrize("name", CORPUS)
def test_periodic_parts_disjoint_across_band_classes(name):
    """Exceptional points at one vertex from different cyclic band classes
    never share a (state, bit) pair; rotations of one band share the cycle."""
    p = load(name)
    for v, pts in exceptional_report(p).by_vertex().items():
        classes: dict = {}
        for pt in pts:
            assert len(set(pt.periodic_part)) == len(pt.periodic_part)
            classes.setdefault(canonical_band(pt.cyclic_word), set()).update(pt.periodic_part)
        seen: set = set()
        for pairs in classes.values():
            assert seen.isdisjoint(pairs)
            seen |= pairs


def test_periodic_part_kronecker(kronecker):
    h = build_hammock_automaton(kronecker, ("1", 1))
    cycle = periodic_part(h, W("b-a"))
    assert sorted(bit for _, bit in cycle) == ["0", "1"]


def test_pruned_quiver_and_dot(gp23):
    h = build_hammock_automaton(gp23, ("v", 1))
    kept, deleted, states = pruned_quiver(h, LEFT)
    assert set(kept).isdisjoint(deleted)
    dot = quiver_dot(gp23, "v", LEFT)
    assert dot.startswith("digraph") and ("dashed" in dot) == bool(deleted)
