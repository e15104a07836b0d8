"""Exceptional band points and the error term ``e``.

Two routes are provided. ``decide_exceptional`` runs the periodic input of a
band point through the hammock automaton and tests the eventual cycle.
``exceptional_report`` finds candidates as cycles of the pruned transition
quiver and confirms each with the decider.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import graphs
from .automaton import classify_states, to_dot
from .hammock import HammockAutomaton, build_hammock_automaton
from .presentation import QuiverPresentation
from .strings import (RIGHTMOST_DIRECT, StringError, Word, canonical_band, enumerate_bands,
                      in_left_hammock, is_string, iter_band_rotations_at, powers_are_strings,
                      primitive_root)

LEFT, RIGHT = "left", "right"
TARGET, SOURCE = "target", "source"


class BandError(StringError):
    pass


@dataclass(frozen=True)
class BandPoint:
    vertex: str
    cyclic_word: Word
    band: Word
    periodic_part: tuple
    left_exceptional: bool = False
    right_exceptional: bool = False

    def to_json(self) -> dict:
        return {"vertex": self.vertex, "cyclic_word": self.cyclic_word.tokens(),
                "band": self.band.tokens(),
                "periodic_part": [[q, bit] for q, bit in self.periodic_part],
                "left_exceptional": self.left_exceptional,
                "right_exceptional": self.right_exceptional}


@dataclass
class ExceptionalReport:
    points: list
    audit: list
    rejected: list = field(default_factory=list)
    diagnostics: list = field(default_factory=list)
    bound: Optional[int] = None
    d_orientation: str = TARGET

    @property
    def e(self) -> int:
        return len(self.points)

    def by_vertex(self) -> dict:
        out: dict = {}
        for pt in self.points:
            out.setdefault(pt.vertex, []).append(pt)
        return out

    def to_json(self) -> dict:
        return {
            "schema": "exceptional-report/1",
            "counting": "distinct (vertex, band point) pairs flagged left or right",
            "d_orientation": self.d_orientation,
            "e": self.e,
            "bound": self.bound,
            "points": [pt.to_json() for pt in self.points],
            "rejected_candidates": [{"vertex": v, "side": s, "cyclic_word": w.tokens()}
                                    for v, s, w in self.rejected],
            "diagnostics": list(self.diagnostics),
            "audit": self.audit,
        }


def _check_band_point(p: QuiverPresentation, v: str, band: Word) -> Word:
    if band.is_trivial or not is_string(p, band) or not powers_are_strings(p, band):
        raise BandError(f"{band} is not a band")
    root = Word(primitive_root(band.syllables))
    if not any(s.inverse for s in root.syllables) or all(s.inverse for s in root.syllables):
        raise BandError(f"{band} is not a band")
    if not in_left_hammock(p, root, v):
        raise BandError(f"{band} is not in the left hammock at {v}")
    return root


def periodic_part(h: HammockAutomaton, band: Word) -> tuple:
    """Eventual cycle of (state after reading, sign bit) when the automaton
    reads the left-infinite power of ``band``, rightmost syllable first."""
    m = h.dfa
    syls = band.syllables[::-1]
    q = m.start
    seen: dict = {}
    trace = []
    step = 0
    while (q, step % len(syls)) not in seen:
        seen[(q, step % len(syls))] = len(trace)
        s = syls[step % len(syls)]
        q = m.step(q, s.bit)
        if q is None:
            raise BandError(f"the powers of {band} leave the hammock automaton")
        trace.append((q, s.bit))
        step += 1
    return tuple(trace[seen[(q, step % len(syls))]:])


def _cycle_passes(h: HammockAutomaton, cycle: tuple, side: str, eta_bar) -> bool:
    probe, bad = ("0", "1") if side == LEFT else ("1", "0")
    for q, bit in cycle:
        if bit == bad and h.dfa.step(q, probe) in eta_bar:
            return False
    return True


def decide_exceptional(p: QuiverPresentation, v: str, band: Word, side: str = LEFT,
                       hammock: Optional[HammockAutomaton] = None) -> bool:
    """Eventually, whenever the state after a syllable has an eta-bar
    0-successor, that syllable is direct (left side; mirrored for right)."""
    root = _check_band_point(p, v, band)
    h = hammock or build_hammock_automaton(p, (v, 1))
    eta_bar = classify_states(h.dfa).eta_bar
    return _cycle_passes(h, periodic_part(h, root), side, eta_bar)


def pruned_quiver(h: HammockAutomaton, side: str = LEFT, d_orientation: str = TARGET):
    """Return (kept edges, deleted D edges, kept states) of the pruned quiver."""
    m = h.dfa
    cls = classify_states(m)
    probe, bad = ("0", "1") if side == LEFT else ("1", "0")
    deleted = []
    kept = []
    for q1, c, q2 in m.transitions():
        anchor = q2 if d_orientation == TARGET else q1
        if c == bad and m.step(anchor, probe) in cls.eta_bar:
            deleted.append((q1, c, q2))
        elif q1 in cls.omega_bar and q2 in cls.omega_bar:
            kept.append((q1, c, q2))
    states = [q for q in m.states if q in cls.omega_bar]
    return kept, deleted, states


def _cycle_words(h: HammockAutomaton, kept: list, states: list, diagnostics: list,
                 tag: str) -> list:
    graph = {q: [] for q in states}
    out_edges: dict = {q: [] for q in states}
    for q1, c, q2 in kept:
        graph[q1].append(q2)
        out_edges[q1].append((c, q2))
    words = []
    for comp in graphs.kosaraju(graph):
        members = set(comp)
        inner = {q: [(c, q2) for c, q2 in out_edges[q] if q2 in members] for q in comp}
        if not any(inner.values()):
            continue
        if any(len(edges) != 1 for edges in inner.values()):
            diagnostics.append(f"{tag}: component {sorted(comp)} is not a simple cycle")
            continue
        read = []
        q = comp[0]
        for _ in comp:
            _, q2 = inner[q][0]
            read.append(h.labels[q2].syllables[0])
            q = q2
        words.append(Word(primitive_root(tuple(reversed(read)))))
    return words


def exceptional_report(p: QuiverPresentation, d_orientation: str = TARGET,
                       orientation: str = RIGHTMOST_DIRECT) -> ExceptionalReport:
    points = []
    audit = []
    rejected = []
    diagnostics: list = []
    for v in p.vertices:
        h = build_hammock_automaton(p, (v, 1))
        eta_bar = classify_states(h.dfa).eta_bar
        candidates: dict = {}
        for side in (LEFT, RIGHT):
            kept, deleted, states = pruned_quiver(h, side, d_orientation)
            cycles = _cycle_words(h, kept, states, diagnostics, f"vertex {v}, {side}")
            audit.append({"vertex": v, "side": side,
                          "q_prime": {"states": len(h.dfa.states),
                                      "arrows": len(h.dfa.transitions())},
                          "d": len(deleted),
                          "q_double_prime": {"states": len(states), "arrows": len(kept)},
                          "cycles": [w.tokens() for w in cycles]})
            for word in cycles:
                anchored = [b for b in iter_band_rotations_at(p, word, v)
                            if powers_are_strings(p, b)]
                if not anchored:
                    diagnostics.append(f"vertex {v}, {side}: cycle {word} has no rotation "
                                       f"in the left hammock")
                for b in anchored:
                    candidates.setdefault(b, set()).add(side)
        for b in sorted(candidates, key=lambda w: w.tokens()):
            cycle = periodic_part(h, b)
            left = _cycle_passes(h, cycle, LEFT, eta_bar)
            right = _cycle_passes(h, cycle, RIGHT, eta_bar)
            for side in sorted(candidates[b]):
                if not (left if side == LEFT else right):
                    rejected.append((v, side, b))
            if left or right:
                points.append(BandPoint(v, b, canonical_band(b, orientation), cycle,
                                        left, right))
    bound = len(p.vertices) * (2 ** (p.r + 3) - 2) if p.relations else None
    return ExceptionalReport(points, audit, rejected, diagnostics, bound, d_orientation)


def exceptional_by_simulation(p: QuiverPresentation, maxlen: Optional[int] = None) -> set:
    """Every (vertex, cyclic word, left, right) found by running the decider
    on all bands up to ``maxlen`` syllables. Independent of the pruned quiver.

    The default length is the largest hammock automaton, which bounds the
    length of any cycle that can carry an exceptional point.
    """
    automata = {v: build_hammock_automaton(p, (v, 1)) for v in p.vertices}
    if maxlen is None:
        maxlen = max(len(h.dfa.states) for h in automata.values())
    found = set()
    for band in enumerate_bands(p, maxlen):
        for v, h in automata.items():
            for b in iter_band_rotations_at(p, band, v):
                left = decide_exceptional(p, v, b, LEFT, h)
                right = decide_exceptional(p, v, b, RIGHT, h)
                if left or right:
                    found.add((v, b, left, right))
    return found


def quiver_dot(p: QuiverPresentation, v: str, side: str = LEFT,
               d_orientation: str = TARGET) -> str:
    """Transition quiver at ``v``; arrows in D are dashed and states outside
    the pruned quiver are labelled in brackets."""
    h = build_hammock_automaton(p, (v, 1))
    kept, deleted, states = pruned_quiver(h, side, d_orientation)
    labels = {q: (h.labels[q].pretty() if q in states else f"[{h.labels[q].pretty()}]")
              for q in h.dfa.states}
    return to_dot(h.dfa, labels, name=f"pruned-{v}-{side}",
                  dashed=[(q1, c) for q1, c, _ in deleted])
