"""Deterministic automata with partial transitions over an ordered alphabet."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from . import graphs

BINARY = ("0", "1")


@dataclass(frozen=True)
class Dfa:
    """``(states, start, accepts, delta)`` over ``alphabet``.

    ``delta`` maps ``(state, letter)`` to a state and may be partial. The
    empty automaton has no states and ``start is None``.
    """

    states: tuple
    start: Optional[Hashable]
    accepts: frozenset
    delta: Mapping
    alphabet: tuple = BINARY

    def __post_init__(self):
        states = set(self.states)
        if self.start is not None and self.start not in states:
            raise ValueError(f"start {self.start!r} is not a state")
        if not set(self.accepts) <= states:
            raise ValueError("accept states must be states")
        for (q, c), q2 in self.delta.items():
            if q not in states or q2 not in states or c not in self.alphabet:
                raise ValueError(f"bad transition {q!r} -{c}-> {q2!r}")

    @property
    def is_empty(self) -> bool:
        return self.start is None

    def step(self, q, letter):
        return self.delta.get((q, letter))

    def run(self, word: Iterable, q=None):
        q = self.start if q is None else q
        for letter in word:
            if q is None:
                return None
            q = self.delta.get((q, letter))
        return q

    @cached_property
    def graph(self) -> dict:
        g = {q: [] for q in self.states}
        for (q, _), q2 in self.delta.items():
            if q2 not in g[q]:
                g[q].append(q2)
        return g

    def transitions(self) -> list[tuple]:
        """``(source, letter, target)`` in state then letter order."""
        pos = {q: k for k, q in enumerate(self.states)}
        rank = {c: k for k, c in enumerate(self.alphabet)}
        return sorted(((q, c, q2) for (q, c), q2 in self.delta.items()),
                      key=lambda t: (pos[t[0]], rank[t[1]]))

    def relabel(self, mapping: Mapping) -> "Dfa":
        return Dfa(tuple(mapping[q] for q in self.states),
                   None if self.start is None else mapping[self.start],
                   frozenset(mapping[q] for q in self.accepts),
                   {(mapping[q], c): mapping[q2] for (q, c), q2 in self.delta.items()},
                   self.alphabet)

    def with_start(self, start) -> "Dfa":
        return Dfa(self.states, start, self.accepts, self.delta, self.alphabet)

    def to_json(self) -> dict:
        return {
            "alphabet": list(self.alphabet),
            "states": [str(q) for q in self.states],
            "start": None if self.start is None else str(self.start),
            "accepts": [str(q) for q in self.states if q in self.accepts],
            "transitions": [{"from": str(q), "letter": c, "to": str(q2)}
                            for q, c, q2 in self.transitions()],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "Dfa":
        return cls(tuple(doc["states"]), doc["start"], frozenset(doc["accepts"]),
                   {(t["from"], t["letter"]): t["to"] for t in doc["transitions"]},
                   tuple(doc.get("alphabet", BINARY)))


EMPTY = Dfa((), None, frozenset(), {})


def make_dfa(transitions: Iterable[Sequence], start, accepts: Iterable,
             states: Iterable = (), alphabet: tuple = BINARY) -> Dfa:
    """Build from ``(source, letter, target)`` triples; states in first-seen order."""
    order: list = []

    def note(q):
        if q not in order:
            order.append(q)

    note(start)
    for q in states:
        note(q)
    delta = {}
    for q, c, q2 in transitions:
        note(q)
        note(q2)
        if (q, c) in delta and delta[(q, c)] != q2:
            raise ValueError(f"nondeterministic at {q!r} on {c!r}")
        delta[(q, c)] = q2
    accepts = frozenset(accepts)
    for q in accepts:
        note(q)
    return Dfa(tuple(order), start, accepts, delta, alphabet)


def trim_good(m: Dfa) -> Dfa:
    """Keep states that are reachable and can reach an accepting state."""
    if m.is_empty:
        return EMPTY
    reach = graphs.reachable(m.graph, [m.start])
    coreach = graphs.reachable(graphs.reverse(m.graph), m.accepts)
    keep = reach & coreach
    if m.start not in keep:
        return EMPTY
    states = tuple(q for q in m.states if q in keep)
    delta = {(q, c): q2 for (q, c), q2 in m.delta.items() if q in keep and q2 in keep}
    return Dfa(states, m.start, frozenset(m.accepts & keep), delta, m.alphabet)


def accepts(m: Dfa, word: Iterable) -> bool:
    if m.is_empty:
        return False
    q = m.run(word)
    return q is not None and q in m.accepts


def inorder_key(word: str) -> str:
    """Sort key realising the inorder on binary words.

    ``x < y`` iff after the common prefix x continues with 0 or y with 1;
    mapping 0->0, 1->2 and appending 1 turns this into plain string order.
    """
    return word.replace("1", "2") + "1"


def compare_inorder(x: str, y: str) -> int:
    k = 0
    while k < len(x) and k < len(y) and x[k] == y[k]:
        k += 1
    if k == len(x) and k == len(y):
        return 0
    if k < len(x) and x[k] == "0":
        return -1
    if k < len(y) and y[k] == "1":
        return -1
    return 1


def words_upto(m: Dfa, maxlen: int) -> list:
    """Accepted words (as letter tuples) of length <= maxlen, unsorted."""
    if m.is_empty:
        return []
    out = []
    stack = [(m.start, ())]
    while stack:
        q, word = stack.pop()
        if q in m.accepts:
            out.append(word)
        if len(word) < maxlen:
            for c in m.alphabet:
                q2 = m.delta.get((q, c))
                if q2 is not None:
                    stack.append((q2, word + (c,)))
    return out


def enumerate_linguage(m: Dfa, maxlen: int) -> list[str]:
    """Accepted binary words of length <= maxlen in inorder."""
    if tuple(m.alphabet) != BINARY:
        raise ValueError("linguages are defined over the alphabet 0 < 1")
    return sorted(("".join(w) for w in words_upto(m, maxlen)), key=inorder_key)


@dataclass(frozen=True)
class StateClassification:
    omega: frozenset
    omega_bar: frozenset
    eta: frozenset
    eta_bar: frozenset

    def flags(self, q) -> dict:
        return {"omega": q in self.omega, "omega_bar": q in self.omega_bar,
                "eta": q in self.eta, "eta_bar": q in self.eta_bar}


def classify_states(m: Dfa) -> StateClassification:
    """omega: on a cycle; eta: both letter-successors return to the state;
    the barred classes are states reaching one of those."""
    if m.is_empty:
        e = frozenset()
        return StateClassification(e, e, e, e)
    comp_of = {}
    for k, comp in enumerate(graphs.kosaraju(m.graph)):
        for q in comp:
            comp_of[q] = k
    omega = graphs.on_cycle(m.graph)
    eta = set()
    for q in m.states:
        succ = [m.delta.get((q, c)) for c in m.alphabet]
        if len(succ) >= 2 and all(s is not None and comp_of[s] == comp_of[q] for s in succ):
            eta.add(q)
    rev = graphs.reverse(m.graph)
    omega_bar = graphs.reachable(rev, omega)
    eta_bar = graphs.reachable(rev, eta)
    return StateClassification(frozenset(omega), frozenset(omega_bar),
                               frozenset(eta), frozenset(eta_bar))


@dataclass(frozen=True)
class LinguageFlags:
    empty: bool
    finite: bool
    scattered: bool
    cardinality: Optional[int] = None


def count_words(m: Dfa) -> int:
    """Number of accepted words of a good automaton without reachable cycles."""
    memo: dict = {}
    order = []
    # iterative post-order over the acyclic transition graph
    stack = [(m.start, False)]
    while stack:
        q, done = stack.pop()
        if done:
            order.append(q)
            continue
        if q in memo:
            continue
        memo[q] = None
        stack.append((q, True))
        for q2 in m.graph[q]:
            if q2 not in memo:
                stack.append((q2, False))
    counts: dict = {}
    for q in order:
        counts[q] = (1 if q in m.accepts else 0) + sum(
            counts[m.delta[(q, c)]] for c in m.alphabet if (q, c) in m.delta)
    return counts[m.start]


def linguage_flags(m: Dfa) -> LinguageFlags:
    good = trim_good(m)
    if good.is_empty:
        return LinguageFlags(True, True, True, 0)
    cls = classify_states(good)
    finite = good.start not in cls.omega_bar
    return LinguageFlags(False, finite, good.start not in cls.eta_bar,
                         count_words(good) if finite else None)


def to_dot(m: Dfa, labels: Optional[Mapping] = None, name: str = "automaton",
           dashed: Iterable = ()) -> str:
    """Graphviz text: accepting states doubly circled, start marked by a
    sourceless arrow. ``dashed`` lists ``(source, letter)`` edges to dash."""
    labels = labels or {}
    ids = {q: f"q{k}" for k, q in enumerate(m.states)}
    dashed = set(dashed)
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=LR;",
             '  __start [shape=point, style=invis];']
    for q in m.states:
        shape = "doublecircle" if q in m.accepts else "circle"
        label = json.dumps(str(labels.get(q, q)), ensure_ascii=False)
        lines.append(f"  {ids[q]} [shape={shape}, label={label}];")
    if m.start is not None:
        lines.append(f"  __start -> {ids[m.start]};")
    for q, c, q2 in m.transitions():
        style = ", style=dashed" if (q, c) in dashed else ""
        lines.append(f"  {ids[q]} -> {ids[q2]} [label={json.dumps(str(c), ensure_ascii=False)}{style}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
