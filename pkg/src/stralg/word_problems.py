"""Word problems: equation systems ``u = w`` solved by linear orders.

Right-hand sides are read left to right. A system comes out of a binary
automaton (one unknown per state), can be unfolded into finite trees, and
is solved into order terms.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping, Optional

from . import graphs
from .automaton import Dfa, trim_good
from .regular_orders import (ZERO, ONE, OmegaProd, OmegaStarProd, Shuffle, Term, add,
                             normalize)

STAR = "*"


class WordProblemError(ValueError):
    pass


class SolverError(RuntimeError):
    """An internal consistency check of the solver failed."""


@dataclass(frozen=True)
class WordProblem:
    terminals: tuple
    unknowns: tuple
    rhs: Mapping
    start: Optional[str] = None
    origin: Mapping = field(default_factory=dict, compare=False)

    def __post_init__(self):
        symbols = set(self.terminals) | set(self.unknowns)
        if set(self.terminals) & set(self.unknowns):
            raise WordProblemError("terminals and unknowns overlap")
        for u in self.unknowns:
            word = self.rhs.get(u)
            if not word:
                raise WordProblemError(f"unknown {u!r} has an empty right-hand side")
            for sym in word:
                if sym not in symbols:
                    raise WordProblemError(f"undeclared symbol {sym!r} in equation for {u!r}")
        if self.start is not None and self.start not in self.unknowns:
            raise WordProblemError(f"start {self.start!r} is not an unknown")

    def is_unknown(self, sym) -> bool:
        return sym in self.rhs

    def dependency_graph(self) -> dict:
        return {u: [s for s in dict.fromkeys(self.rhs[u]) if s in self.rhs]
                for u in self.unknowns}

    def to_text(self) -> str:
        lines = []
        for u in self.unknowns:
            mark = "  # start" if u == self.start else ""
            lines.append(f"{u} = {' '.join(self.rhs[u])}{mark}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"terminals": list(self.terminals), "unknowns": list(self.unknowns),
                "equations": {u: list(self.rhs[u]) for u in self.unknowns},
                "start": self.start,
                "states": {u: str(q) for u, q in self.origin.items()}}


def parse_word_problem(text: str, terminals=(STAR,)) -> WordProblem:
    """One equation per line: ``u = * u *``. ``#`` starts a comment.

    Left-hand sides are the unknowns; every other token is a terminal. The
    first equation's unknown is the start.
    """
    order = []
    rhs = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, eq, rest = line.partition("=")
        lhs = lhs.strip()
        if not eq or not re.fullmatch(r"[^\s=*]+", lhs):
            raise WordProblemError(f"line {lineno}: expected 'unknown = symbols'")
        if lhs in rhs:
            raise WordProblemError(f"line {lineno}: second equation for {lhs!r}")
        tokens = rest.split()
        if not tokens:
            raise WordProblemError(f"line {lineno}: empty right-hand side")
        order.append(lhs)
        rhs[lhs] = tuple(tokens)
    used = {s for word in rhs.values() for s in word if s not in rhs}
    terms = tuple(dict.fromkeys(list(terminals) + sorted(used)))
    return WordProblem(terms, tuple(order), rhs, order[0] if order else None)


def automaton_to_word_problem(m: Dfa) -> WordProblem:
    """One unknown per state: (0-successor) (* if accepting) (1-successor).

    Unknowns are numbered in breadth-first order from the start, which gets
    ``v0``.
    """
    m = trim_good(m)
    if m.is_empty:
        return WordProblem((STAR,), (), {}, None)
    order = [m.start]
    k = 0
    while k < len(order):
        q = order[k]
        k += 1
        for c in m.alphabet:
            q2 = m.delta.get((q, c))
            if q2 is not None and q2 not in order:
                order.append(q2)
    name = {q: f"v{n}" for n, q in enumerate(order)}
    zero, one = m.alphabet[0], m.alphabet[1]
    rhs = {}
    for q in order:
        word = []
        if (q, zero) in m.delta:
            word.append(name[m.delta[(q, zero)]])
        if q in m.accepts:
            word.append(STAR)
        if (q, one) in m.delta:
            word.append(name[m.delta[(q, one)]])
        rhs[name[q]] = tuple(word)
    return WordProblem((STAR,), tuple(name[q] for q in order), rhs, name[m.start],
                       {name[q]: q for q in order})


# ------------------------------------------------------------ tree expansion

@dataclass(frozen=True)
class LabelledTree:
    """Prefix-closed node set (tuples of child indices) with labels."""

    labels: Mapping

    def is_leaf(self, node) -> bool:
        return (node + (0,)) not in self.labels

    def leaves(self) -> list:
        return sorted(n for n in self.labels if self.is_leaf(n))


def expand_tree(w: WordProblem, unknown: str, depth: int) -> LabelledTree:
    if unknown not in w.rhs:
        raise WordProblemError(f"{unknown!r} is not an unknown")
    if depth < 0:
        raise WordProblemError("depth must be non-negative")
    labels = {(): unknown}
    pending = [()]
    for level in range(depth + 1):
        grown = []
        for node in pending:
            for k, sym in enumerate(w.rhs[labels[node]]):
                child = node + (k,)
                labels[child] = sym
                if sym in w.rhs:
                    grown.append(child)
        pending = grown
    return LabelledTree(labels)


def frontier(t: LabelledTree) -> list:
    """Leaves in preorder (lexicographic order of node addresses)."""
    return [(node, t.labels[node]) for node in t.leaves()]


def terminal_frontier(w: WordProblem, t: LabelledTree) -> list:
    return [(node, lab) for node, lab in frontier(t) if lab not in w.rhs]


# --------------------------------------------------------------- analysis

def productive_unknowns(w: WordProblem) -> set:
    productive: set = set()
    changed = True
    while changed:
        changed = False
        for u in w.unknowns:
            if u not in productive and any(s not in w.rhs or s in productive for s in w.rhs[u]):
                productive.add(u)
                changed = True
    return productive


def _prune(w: WordProblem) -> tuple[dict, set]:
    productive = productive_unknowns(w)
    rhs = {u: tuple(s for s in w.rhs[u] if s not in w.rhs or s in productive)
           for u in w.unknowns if u in productive}
    return rhs, productive


def _components(rhs: Mapping) -> list[list]:
    graph = {u: [s for s in dict.fromkeys(word) if s in rhs] for u, word in rhs.items()}
    return graphs.kosaraju(graph)


def _recursive(comp: list, rhs: Mapping) -> bool:
    return len(comp) > 1 or comp[0] in rhs[comp[0]]


def _branching(comp: list, rhs: Mapping) -> bool:
    members = set(comp)
    return any(sum(s in members for s in rhs[u]) >= 2 for u in comp)


def quasi_rational(w: WordProblem) -> bool:
    """Every productive unknown sits in a non-branching component."""
    rhs, _ = _prune(w)
    full = {u: w.rhs[u] for u in rhs}
    return not any(_recursive(c, full) and _branching(c, full) for c in _components(full))


# ------------------------------------------------------------------ solver

def solve(w: WordProblem) -> dict:
    """Map every unknown to a normalised term for the order underlying its
    universal solution. Terminal letters count as single points."""
    rhs, productive = _prune(w)
    solution: dict = {u: ZERO for u in w.unknowns if u not in productive}

    def value(sym) -> Term:
        return ONE if sym not in rhs else solution[sym]

    def letters(word) -> Term:
        return add(*(value(s) for s in word))

    for comp in reversed(_components(rhs)):
        if not _recursive(comp, rhs):
            u = comp[0]
            solution[u] = normalize(letters(rhs[u]))
            continue
        members = set(comp)
        occ = {u: [k for k, s in enumerate(rhs[u]) if s in members] for u in comp}

        def orbit(start, pick):
            seen, path = {}, []
            u = start
            while u not in seen:
                seen[u] = len(path)
                path.append(u)
                u = rhs[u][pick(occ[u])]
            cut = seen[u]
            return path[:cut], path[cut:]

        left_cache: dict = {}
        right_cache: dict = {}

        def left_part(u) -> Term:
            if u not in left_cache:
                pre, cyc = orbit(u, lambda o: o[0])
                head = [letters(rhs[x][:occ[x][0]]) for x in pre]
                loop = add(*(letters(rhs[x][:occ[x][0]]) for x in cyc))
                left_cache[u] = normalize(add(*head, OmegaProd(loop)))
            return left_cache[u]

        def right_part(u) -> Term:
            if u not in right_cache:
                pre, cyc = orbit(u, lambda o: o[-1])
                tail = [letters(rhs[x][occ[x][-1] + 1:]) for x in reversed(pre)]
                loop = add(*(letters(rhs[x][occ[x][-1] + 1:]) for x in reversed(cyc)))
                right_cache[u] = normalize(add(OmegaStarProd(loop), *tail))
            return right_cache[u]

        gaps = None
        if _branching(comp, rhs):
            found = set()
            for x in comp:
                o = occ[x]
                for i, j in zip(o, o[1:]):
                    gap = normalize(add(right_part(rhs[x][i]), letters(rhs[x][i + 1:j]),
                                        left_part(rhs[x][j])))
                    if gap != ZERO:
                        found.add(gap)
            if not found:
                raise SolverError(f"branching component {sorted(comp)} has only empty gaps")
            gaps = Shuffle(tuple(found))
        for u in comp:
            middle = () if gaps is None else (gaps,)
            solution[u] = normalize(add(left_part(u), *middle, right_part(u)))
    return {u: solution[u] for u in w.unknowns}
