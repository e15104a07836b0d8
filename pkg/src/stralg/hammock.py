"""Hammock automata, the string acceptor, and the domesticity test."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .automaton import Dfa, classify_states, make_dfa, trim_good
from .presentation import PresentationError, QuiverPresentation
from .strings import (ShortUniverse, StringError, Word, all_syllables, can_append,
                      can_prepend, is_string, short_universe)

Anchor = Union[tuple, Word]


class HammockError(PresentationError):
    pass


@dataclass(frozen=True)
class HammockAutomaton:
    """Binary automaton whose states are short strings.

    State names are the text form of their label word.
    """

    dfa: Dfa
    labels: dict
    anchor: Anchor
    universe_size: int

    def label(self, state) -> Word:
        return self.labels[state]

    def state_of(self, w: Word):
        return str(w)


def _anchor_word(p: QuiverPresentation, anchor: Anchor, universe: ShortUniverse) -> Word:
    if isinstance(anchor, Word):
        if not is_string(p, anchor):
            raise HammockError(f"{anchor} is not a string")
        return universe.bracket(anchor)
    vertex, i = anchor
    if vertex not in p.vertices:
        raise HammockError(f"unknown vertex {vertex!r}")
    return Word.trivial(vertex, i)


def build_hammock_automaton(p: QuiverPresentation, anchor: Anchor) -> HammockAutomaton:
    """Automaton over 0/1 whose accepted words are the sign sequences of the
    left extensions of ``anchor``.

    ``anchor`` is ``(vertex, i)`` for the trivial string ``1_(vertex, i)``
    or a string whose bracket becomes the start state.
    """
    universe = short_universe(p)
    start = _anchor_word(p, anchor, universe)
    syllables = all_syllables(p)
    transitions = []
    for x in universe.members:
        for bit in "01":
            found = [s for s in syllables if s.bit == bit and can_prepend(p, s, x)]
            if len(found) > 1:
                raise HammockError(f"two syllables {found} extend {x} with sign {bit}")
            if found:
                transitions.append((str(x), bit, str(universe.bracket(x.prepend(found[0])))))
    names = [str(x) for x in universe.members]
    full = make_dfa(transitions, str(start), names, states=names)
    dfa = trim_good(full)
    labels = {str(x): x for x in universe.members if str(x) in set(dfa.states)}
    return HammockAutomaton(dfa, labels, anchor, len(universe))


def build_right_hammock_automaton(p: QuiverPresentation, v: str) -> HammockAutomaton:
    """Same construction anchored at ``1_(v,-1)``; accepted strings are the
    inverses of right-hammock elements."""
    return build_hammock_automaton(p, (v, -1))


REES_START = "^"


def build_rees_automaton(p: QuiverPresentation) -> Dfa:
    """Acceptor for the nonempty strings, read leftmost syllable first.

    States remember the rightmost window of what has been read. The empty
    word is rejected because no syllable word spells a trivial string.
    """
    universe = short_universe(p)
    syllables = all_syllables(p)
    alphabet = tuple(str(s) for s in syllables)
    transitions = []
    nontrivial = [x for x in universe.members if not x.is_trivial]
    for s in syllables:
        single = Word((s,))
        if is_string(p, single):
            transitions.append((REES_START, str(s), str(single)))
    for x in nontrivial:
        for s in syllables:
            if can_append(p, x, s):
                nxt = universe.suffix_bracket(Word(x.syllables + (s,)))
                transitions.append((str(x), str(s), str(nxt)))
    names = [str(x) for x in nontrivial]
    return trim_good(make_dfa(transitions, REES_START, names, states=names,
                              alphabet=alphabet))


def rees_accepts(p: QuiverPresentation, m: Dfa, w: Word) -> bool:
    if w.is_trivial:
        return False
    q = m.run(w.tokens())
    return q is not None and q in m.accepts


def hammock_anchors(p: QuiverPresentation):
    return [(v, i) for v in p.vertices for i in (1, -1)]


def is_domestic(p: QuiverPresentation) -> bool:
    """No hammock automaton starts in a state that reaches an eta-state."""
    for anchor in hammock_anchors(p):
        m = build_hammock_automaton(p, anchor).dfa
        if m.start in classify_states(m).eta_bar:
            return False
    return True


__all__ = ["HammockAutomaton", "HammockError", "build_hammock_automaton",
           "build_right_hammock_automaton", "build_rees_automaton", "is_domestic",
           "rees_accepts", "StringError"]
