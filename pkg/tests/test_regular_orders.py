import pytest
from hypothesis import given, settings, strategies as st

from conftest import m1
from oracles import count_accepted, greatest_word_exists, inorder_sorted, least_word_exists
from stralg.automaton import enumerate_linguage, linguage_flags, trim_good
from stralg.regular_orders import (ETA, OMEGA, OMEGA_STAR, ONE, ZERO, ZETA, OmegaProd,
                                   OmegaStarProd, Shuffle, Sum, TermSyntaxError, add, finite,
                                   format_term, normalize, parse_term, predicates,
                                   term_size, term_to_automaton, term_to_json)

P = parse_term


def terms(max_leaves=6):
    leaf = st.sampled_from([ZERO, ONE, OMEGA, OMEGA_STAR])
    return st.recursive(
        leaf,
        lambda inner: st.one_of(
            st.lists(inner, min_size=2, max_size=3).map(lambda xs: Sum(tuple(xs))),
            inner.map(OmegaProd),
            inner.map(OmegaStarProd),
            st.lists(inner, min_size=1, max_size=2).map(lambda xs: Shuffle(tuple(xs)))),
        max_leaves=max_leaves)


@pytest.mark.parametrize("text,least,greatest,scattered,finite_", [
    ("w", True, False, True, False),
    ("w*", False, True, True, False),
    ("w* + w", False, False, True, False),
    ("sh(1)", False, False, False, False),
    ("3", True, True, True, True),
    ("1 + sh(1) + 1", True, True, False, False),
    ("(w + w*) . w", True, False, True, False),
])
def test_predicate_examples(text, least, greatest, scattered, finite_):
    q = predicates(P(text))
    assert (q.has_least, q.has_greatest, q.scattered, q.finite) == \
        (least, greatest, scattered, finite_)


def test_eta_and_zeta():
    assert predicates(ETA).is_eta
    assert not predicates(ZETA).is_eta
    assert predicates(ZETA).has_consecutive_pair
    assert predicates(ZERO).empty and predicates(ZERO).cardinality == 0
    assert predicates(finite(4)).cardinality == 4


@pytest.mark.parametrize("text,expected", [
    ("1 + w", "w"),
    ("w* + 2", "w*"),
    ("0 + w + 0", "w"),
    ("3 . w", "w"),
    ("0 . w*", "0"),
    ("sh(1, 0, 1)", "sh(1)"),
    ("sh(1) + 1 + sh(1)", "sh(1)"),
    ("w . w* + 1", "w . w* + 1"),
    ("1 + w*", "1 + w*"),
    ("w + 1", "w + 1"),
])
def test_normalize_examples(text, expected):
    assert format_term(normalize(P(text))) == expected


@pytest.mark.parametrize("text", ["w + sh(w* + w) + w*", "(w + 1) . w*", "2 + sh(1, w)",
                                  "0", "((1 + w*) . w) . w*"])
def test_parse_format_round_trip(text):
    t = P(text)
    assert P(format_term(t)) == t


def test_parse_unicode_omega():
    assert P("ω + ω*") == add(OMEGA, OMEGA_STAR)


@pytest.mark.parametrize("text", ["sh()", "w +", "1 . 2", "(w", "w ? 1", ""])
def test_syntax_errors(text):
    with pytest.raises(TermSyntaxError):
        P(text)


def test_syntax_error_position():
    with pytest.raises(TermSyntaxError) as err:
        P("sh()")
    assert err.value.position == 3


def test_json_and_size():
    t = P("w + sh(1)")
    assert term_to_json(t)["op"] == "sum"
    assert term_size(t) == 5


def test_automaton_one_omega():
    m = term_to_automaton(add(ONE, OMEGA))
    words = enumerate_linguage(m, 6)
    assert set(words) == {"1" * n + "0" for n in range(6)}
    assert words == inorder_sorted(words)


def test_automaton_omega_star_matches_m1():
    """M1 accepts 0^n 1, a descending chain; so does the built automaton."""
    for m in (term_to_automaton(OMEGA_STAR), m1()):
        g = trim_good(m)
        assert greatest_word_exists(g) and not least_word_exists(g)
        words = enumerate_linguage(m, 8)
        assert words == inorder_sorted(words)
    m = term_to_automaton(add(ONE, OMEGA_STAR))
    assert least_word_exists(trim_good(m)) and greatest_word_exists(trim_good(m))


def test_automaton_shuffle_is_dense():
    m = term_to_automaton(Shuffle((ONE, ONE)))
    f = linguage_flags(m)
    assert not f.scattered and not f.empty
    assert not least_word_exists(trim_good(m)) and not greatest_word_exists(trim_good(m))


@settings(max_examples=150, deadline=None)
@given(terms())
def test_normalize_preserves_predicates(t):
    if term_size(t) <= 12:
        assert predicates(normalize(t)) == predicates(t)


@settings(max_examples=150, deadline=None)
@given(terms())
def test_normalize_idempotent(t):
    n = normalize(t)
    assert normalize(n) == n
    assert P(format_term(n)) == n or normalize(P(format_term(n))) == n


@settings(max_examples=150, deadline=None)
@given(terms())
def test_automaton_flags_agree(t):
    m = term_to_automaton(t)
    q = predicates(t)
    f = linguage_flags(m)
    assert (f.empty, f.finite, f.scattered) == (q.empty, q.finite, q.scattered)
    if q.finite:
        assert f.cardinality == q.cardinality == count_accepted(m, 4 * term_size(t) + 4)
    if not q.empty:
        g = trim_good(m)
        assert least_word_exists(g) == q.has_least
        assert greatest_word_exists(g) == q.has_greatest
