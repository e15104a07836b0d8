"""Finite-description linear orders: terms, predicates, rewriting, automata.

Terms are built from ``Zero``, ``One``, ordered ``Sum``, right products by
omega (``OmegaProd``) and by omega-star (``OmegaStarProd``), and the finitary
dense shuffle ``Shuffle``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .automaton import Dfa, make_dfa


class TermSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"at position {position}: {message}")
        self.position = position


class Term:
    __slots__ = ()

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True, repr=False)
class Zero(Term):
    def __repr__(self):
        return "Zero()"


@dataclass(frozen=True, repr=False)
class One(Term):
    def __repr__(self):
        return "One()"


@dataclass(frozen=True)
class Sum(Term):
    parts: tuple


@dataclass(frozen=True)
class OmegaProd(Term):
    base: Term


@dataclass(frozen=True)
class OmegaStarProd(Term):
    base: Term


@dataclass(frozen=True)
class Shuffle(Term):
    args: tuple


ZERO, ONE = Zero(), One()
OMEGA = OmegaProd(ONE)
OMEGA_STAR = OmegaStarProd(ONE)
ZETA = Sum((OMEGA_STAR, OMEGA))
ETA = Shuffle((ONE,))


def finite(n: int) -> Term:
    if n == 0:
        return ZERO
    return ONE if n == 1 else Sum((ONE,) * n)


def add(*parts: Term) -> Term:
    """Sum without normalisation; degenerate cases collapse."""
    parts = tuple(parts)
    if not parts:
        return ZERO
    return parts[0] if len(parts) == 1 else Sum(parts)


# ---------------------------------------------------------------- predicates

@dataclass(frozen=True)
class TermPredicates:
    empty: bool
    finite: bool
    cardinality: Optional[int]
    has_least: bool
    has_greatest: bool
    has_consecutive_pair: bool
    scattered: bool

    @property
    def is_eta(self) -> bool:
        # Cantor: countable, dense, no endpoints.
        return (not self.empty and not self.has_least and not self.has_greatest
                and not self.has_consecutive_pair)

    def as_dict(self) -> dict:
        return {"empty": self.empty, "finite": self.finite, "cardinality": self.cardinality,
                "has_least": self.has_least, "has_greatest": self.has_greatest,
                "has_consecutive_pair": self.has_consecutive_pair,
                "scattered": self.scattered, "is_eta": self.is_eta}


_EMPTY = TermPredicates(True, True, 0, False, False, False, True)


def predicates(t: Term) -> TermPredicates:
    if isinstance(t, Zero):
        return _EMPTY
    if isinstance(t, One):
        return TermPredicates(False, True, 1, True, True, False, True)
    if isinstance(t, Sum):
        parts = [q for q in map(predicates, t.parts) if not q.empty]
        if not parts:
            return _EMPTY
        fin = all(q.finite for q in parts)
        pair = any(q.has_consecutive_pair for q in parts) or any(
            a.has_greatest and b.has_least for a, b in zip(parts, parts[1:]))
        return TermPredicates(False, fin, sum(q.cardinality for q in parts) if fin else None,
                              parts[0].has_least, parts[-1].has_greatest, pair,
                              all(q.scattered for q in parts))
    if isinstance(t, (OmegaProd, OmegaStarProd)):
        q = predicates(t.base)
        if q.empty:
            return _EMPTY
        pair = q.has_consecutive_pair or (q.has_least and q.has_greatest)
        omega = isinstance(t, OmegaProd)
        return TermPredicates(False, False, None,
                              q.has_least if omega else False,
                              False if omega else q.has_greatest,
                              pair, q.scattered)
    if isinstance(t, Shuffle):
        args = [q for q in map(predicates, t.args) if not q.empty]
        if not args:
            return _EMPTY
        return TermPredicates(False, False, None, False, False,
                              any(q.has_consecutive_pair for q in args), False)
    raise TypeError(f"not a term: {t!r}")


# ------------------------------------------------------------- normalisation

def _is_finite_nonempty(t: Term) -> bool:
    return isinstance(t, One) or (isinstance(t, Sum) and all(isinstance(x, One) for x in t.parts))


def normalize(t: Term) -> Term:
    """Rewrite to a canonical-ish form that is order-isomorphic to ``t``."""
    while True:
        nxt = _normalize_once(t)
        if nxt == t:
            return t
        t = nxt


def _normalize_once(t: Term) -> Term:
    if isinstance(t, (Zero, One)):
        return t
    if isinstance(t, Sum):
        flat = []
        for part in map(_normalize_once, t.parts):
            if isinstance(part, Sum):
                flat.extend(part.parts)
            elif not isinstance(part, Zero):
                flat.append(part)
        flat = _absorb(flat)
        return add(*flat)
    if isinstance(t, (OmegaProd, OmegaStarProd)):
        base = _normalize_once(t.base)
        if isinstance(base, Zero):
            return ZERO
        if _is_finite_nonempty(base):
            base = ONE
        return type(t)(base)
    if isinstance(t, Shuffle):
        args = {a for a in map(_normalize_once, t.args) if not isinstance(a, Zero)}
        if not args:
            return ZERO
        return Shuffle(tuple(sorted(args, key=format_term)))
    raise TypeError(f"not a term: {t!r}")


def _absorb(parts: list) -> list:
    """Drop finite summands swallowed by a neighbouring omega or omega-star.

    ``omega* + n`` is ``omega*`` and ``n + omega`` is ``omega``. Only the
    plain (base one) products absorb; e.g. ``omega.omega* + 1`` has a
    greatest element and so differs from ``omega.omega*``.
    """
    out: list = []
    for part in parts:
        if isinstance(part, One) and out and out[-1] == OMEGA_STAR:
            continue
        out.append(part)
    result: list = []
    for part in reversed(out):
        if isinstance(part, One) and result and result[-1] == OMEGA:
            continue
        result.append(part)
    return _merge_shuffles(result[::-1])


def _merge_shuffles(parts: list) -> list:
    """``sh(S) + g + sh(S)`` is ``sh(S)`` when ``g`` is one of the colours
    in ``S`` (or ``g`` is empty): the dense colouring stays homogeneous."""
    for i, part in enumerate(parts):
        if not isinstance(part, Shuffle):
            continue
        for j in range(len(parts) - 1, i, -1):
            if parts[j] != part:
                continue
            middle = normalize(add(*parts[i + 1:j]))
            if isinstance(middle, Zero) or middle in part.args:
                return _merge_shuffles(parts[:i + 1] + parts[j + 1:])
    return parts


# ---------------------------------------------------------- text formatting

def format_term(t: Term) -> str:
    if isinstance(t, Zero):
        return "0"
    if isinstance(t, One):
        return "1"
    if isinstance(t, Sum):
        chunks = []
        for is_one, group in itertools.groupby(t.parts, key=lambda x: isinstance(x, One)):
            if is_one:
                chunks.append(str(len(list(group))))
            else:
                chunks.extend(_format_operand(x) for x in group)
        return " + ".join(chunks)
    if isinstance(t, OmegaProd):
        return "w" if isinstance(t.base, One) else f"{_format_factor(t.base)} . w"
    if isinstance(t, OmegaStarProd):
        return "w*" if isinstance(t.base, One) else f"{_format_factor(t.base)} . w*"
    if isinstance(t, Shuffle):
        return "sh(" + ", ".join(format_term(a) for a in t.args) + ")"
    raise TypeError(f"not a term: {t!r}")


def _format_operand(t: Term) -> str:
    return f"({format_term(t)})" if isinstance(t, Sum) else format_term(t)


def _format_factor(t: Term) -> str:
    if isinstance(t, Sum):
        if all(isinstance(x, One) for x in t.parts):
            return str(len(t.parts))
        return f"({format_term(t)})"
    return format_term(t)


_TOKEN = re.compile(r"\s*(?:(\d+)|(w\*|w|sh|\(|\)|,|\+|\.))")


def _tokenize(text: str) -> list:
    tokens = []
    pos = 0
    text = text.replace("ω*", "w*").replace("ω", "w")
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise TermSyntaxError(f"unexpected character {text[pos:].lstrip()[0]!r}",
                                  pos + len(text[pos:]) - len(text[pos:].lstrip()))
        start = m.start(1) if m.group(1) else m.start(2)
        tokens.append((m.group(1) or m.group(2), start))
        pos = m.end()
    tokens.append(("$", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.k = 0

    def peek(self) -> str:
        return self.tokens[self.k][0]

    def pos(self) -> int:
        return self.tokens[self.k][1]

    def take(self, expected: Optional[str] = None) -> str:
        tok = self.peek()
        if expected is not None and tok != expected:
            raise TermSyntaxError(f"expected {expected!r}, found {tok!r}", self.pos())
        self.k += 1
        return tok

    def parse(self) -> Term:
        t = self.sum()
        if self.peek() != "$":
            raise TermSyntaxError(f"unexpected {self.peek()!r}", self.pos())
        return t

    def sum(self) -> Term:
        parts = [self.product()]
        while self.peek() == "+":
            self.take()
            parts.append(self.product())
        flat = []
        for part in parts:
            flat.extend(part.parts if isinstance(part, Sum) else [part])
        return add(*flat)

    def product(self) -> Term:
        t = self.atom()
        while self.peek() == ".":
            self.take()
            tok = self.peek()
            if tok == "w":
                self.take()
                t = OmegaProd(t)
            elif tok == "w*":
                self.take()
                t = OmegaStarProd(t)
            else:
                raise TermSyntaxError("expected w or w* after '.'", self.pos())
        return t

    def atom(self) -> Term:
        tok, pos = self.tokens[self.k]
        if tok.isdigit():
            self.take()
            return finite(int(tok))
        if tok == "w":
            self.take()
            return OMEGA
        if tok == "w*":
            self.take()
            return OMEGA_STAR
        if tok == "(":
            self.take()
            t = self.sum()
            self.take(")")
            return t
        if tok == "sh":
            self.take()
            self.take("(")
            if self.peek() == ")":
                raise TermSyntaxError("a shuffle needs at least one argument", self.pos())
            args = [self.sum()]
            while self.peek() == ",":
                self.take()
                args.append(self.sum())
            self.take(")")
            return Shuffle(tuple(args))
        raise TermSyntaxError(f"unexpected {tok!r}", pos)


def parse_term(text: str) -> Term:
    return _Parser(text).parse()


def term_to_json(t: Term):
    if isinstance(t, Zero):
        return {"op": "zero"}
    if isinstance(t, One):
        return {"op": "one"}
    if isinstance(t, Sum):
        return {"op": "sum", "parts": [term_to_json(x) for x in t.parts]}
    if isinstance(t, OmegaProd):
        return {"op": "omega", "base": term_to_json(t.base)}
    if isinstance(t, OmegaStarProd):
        return {"op": "omega*", "base": term_to_json(t.base)}
    return {"op": "shuffle", "args": [term_to_json(x) for x in t.args]}


def term_size(t: Term) -> int:
    if isinstance(t, Sum):
        return 1 + sum(term_size(x) for x in t.parts)
    if isinstance(t, (OmegaProd, OmegaStarProd)):
        return 1 + term_size(t.base)
    if isinstance(t, Shuffle):
        return 1 + sum(term_size(x) for x in t.args)
    return 1


# ------------------------------------------------------- terms to automata

class _Builder:
    def __init__(self):
        self.count = 0
        self.edges: list = []
        self.accepting: list = []

    def fresh(self, accepting: bool = False) -> int:
        q = self.count
        self.count += 1
        if accepting:
            self.accepting.append(q)
        return q

    def edge(self, q, c, q2):
        self.edges.append((q, c, q2))

    def build(self, t: Term) -> int:
        """Add a copy of the automaton for ``t``; return its start state."""
        if isinstance(t, Zero):
            return self.fresh()
        if isinstance(t, One):
            return self.fresh(accepting=True)
        if isinstance(t, Sum):
            root = self.fresh()
            self.edge(root, "0", self.build(t.parts[0]))
            rest = t.parts[1:]
            self.edge(root, "1", self.build(rest[0] if len(rest) == 1 else Sum(rest)))
            return root
        if isinstance(t, OmegaProd):
            root = self.fresh()
            self.edge(root, "1", root)
            self.edge(root, "0", self.build(t.base))
            return root
        if isinstance(t, OmegaStarProd):
            root = self.fresh()
            self.edge(root, "0", root)
            self.edge(root, "1", self.build(t.base))
            return root
        if isinstance(t, Shuffle):
            if len(t.args) == 2:
                return self._shuffle_pair(*t.args)
            return self._shuffle_tree(t.args)
        raise TypeError(f"not a term: {t!r}")

    def _shuffle_pair(self, left: Term, right: Term) -> int:
        m = self.fresh()
        l1, l2, r1, r2 = (self.fresh() for _ in range(4))
        self.edge(m, "0", l1)
        self.edge(m, "1", r1)
        self.edge(l1, "0", m)
        self.edge(l1, "1", l2)
        self.edge(l2, "1", m)
        self.edge(l2, "0", self.build(left))
        self.edge(r1, "1", m)
        self.edge(r1, "0", r2)
        self.edge(r2, "0", m)
        self.edge(r2, "1", self.build(right))
        return m

    def _shuffle_tree(self, args: tuple) -> int:
        """Binary tree with leaves v_0..v_2n in order; even leaves are the
        root itself, leaf 2i+1 is the automaton of argument i."""
        root = self.fresh()
        leaves = list(range(2 * len(args) + 1))

        def attach(node: int, span: list) -> None:
            mid = (len(span) + 1) // 2
            for letter, part in (("0", span[:mid]), ("1", span[mid:])):
                if len(part) == 1:
                    leaf = part[0]
                    target = root if leaf % 2 == 0 else self.build(args[leaf // 2])
                    self.edge(node, letter, target)
                else:
                    child = self.fresh()
                    self.edge(node, letter, child)
                    attach(child, part)

        attach(root, leaves)
        return root


def term_to_automaton(t: Term) -> Dfa:
    """Binary automaton whose linguage is isomorphic to ``t``."""
    b = _Builder()
    start = b.build(t)
    return make_dfa(b.edges, start, b.accepting, states=range(b.count))
