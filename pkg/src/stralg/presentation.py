"""Bound-quiver presentations of string algebras and their sign maps."""

from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Optional


class PresentationError(ValueError):
    """Raised for malformed documents or unusable presentations."""


class SignMapError(PresentationError):
    """Provided sign maps break a condition, or none exist."""


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class SignMaps:
    sigma: Mapping[str, int]
    tau: Mapping[str, int]

    def negated(self) -> "SignMaps":
        return SignMaps({k: -v for k, v in self.sigma.items()},
                        {k: -v for k, v in self.tau.items()})

    def to_json(self) -> dict:
        return {"sigma": dict(sorted(self.sigma.items())),
                "tau": dict(sorted(self.tau.items()))}


@dataclass(frozen=True)
class QuiverPresentation:
    """Quiver (vertices, arrows) with a finite set of path relations.

    A relation is a tuple of arrow names in writing order; like walks it is
    composed right to left, so ``("a", "b")`` means "b, then a".
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[tuple[str, ...], ...] = ()
    provided_signs: Optional[SignMaps] = field(default=None, compare=False)

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def relation_set(self) -> frozenset:
        return frozenset(self.relations)

    @property
    def r(self) -> int:
        return max((len(rel) for rel in self.relations), default=0)

    @cached_property
    def signs(self) -> SignMaps:
        """Sign maps: the provided ones (verified) or inferred ones."""
        return infer_sign_maps(self, self.provided_signs)

    def source(self, name: str) -> str:
        return self.arrow_map[name].source

    def target(self, name: str) -> str:
        return self.arrow_map[name].target

    def composable_unblocked(self, left: str, right: str) -> bool:
        """True when ``left right`` is a path that is not itself a relation."""
        return (self.source(left) == self.target(right)
                and (left, right) not in self.relation_set)

    def to_json(self) -> dict:
        doc = {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "source": a.source, "target": a.target}
                       for a in self.arrows],
            "relations": [list(rel) for rel in self.relations],
        }
        if self.provided_signs is not None:
            doc.update(self.provided_signs.to_json())
        return doc


def _fail_at(text: str, pos: int, message: str) -> PresentationError:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return PresentationError(f"line {line}, column {col}: {message}")


def parse_presentation(text: str) -> QuiverPresentation:
    """Parse the JSON presentation document."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PresentationError(
            f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise _fail_at(text, 0, "top level must be an object")
    return presentation_from_json(doc)


def presentation_from_json(doc: dict) -> QuiverPresentation:
    try:
        vertices = [str(v) for v in doc["vertices"]]
        raw_arrows = doc["arrows"]
    except (KeyError, TypeError) as exc:
        raise PresentationError(f"missing field {exc}") from None
    if len(set(vertices)) != len(vertices):
        dup = next(v for v in vertices if vertices.count(v) > 1)
        raise PresentationError(f"duplicate vertex {dup!r}")

    arrows = []
    seen = set()
    for entry in raw_arrows:
        try:
            name, src, tgt = str(entry["name"]), str(entry["source"]), str(entry["target"])
        except (KeyError, TypeError):
            raise PresentationError(f"arrow entry {entry!r} needs name, source, target") from None
        if name in seen:
            raise PresentationError(f"duplicate arrow {name!r}")
        if name.endswith("-") or not name or any(ch.isspace() for ch in name):
            raise PresentationError(f"bad arrow name {name!r}")
        for vertex in (src, tgt):
            if vertex not in vertices:
                raise PresentationError(f"arrow {name!r} references unknown vertex {vertex!r}")
        seen.add(name)
        arrows.append(Arrow(name, src, tgt))

    relations = []
    for rel in doc.get("relations", []):
        rel = tuple(str(x) for x in rel)
        if not rel:
            raise PresentationError("empty relation")
        for name in rel:
            if name not in seen:
                raise PresentationError(f"relation {list(rel)} references unknown arrow {name!r}")
        relations.append(rel)

    provided = None
    if "sigma" in doc or "tau" in doc:
        provided = SignMaps({str(k): int(v) for k, v in doc.get("sigma", {}).items()},
                            {str(k): int(v) for k, v in doc.get("tau", {}).items()})
    return QuiverPresentation(tuple(vertices), tuple(arrows), tuple(relations), provided)


def validate_string_algebra(p: QuiverPresentation) -> list[str]:
    """List every violated string-algebra condition; empty means valid."""
    problems = []
    for rel in p.relations:
        for left, right in zip(rel, rel[1:]):
            if p.source(left) != p.target(right):
                problems.append(f"relation {' '.join(rel)} is not a path: "
                                f"{left} does not follow {right}")
    outgoing = defaultdict(list)
    incoming = defaultdict(list)
    for a in p.arrows:
        outgoing[a.source].append(a.name)
        incoming[a.target].append(a.name)
    for v in p.vertices:
        if len(outgoing[v]) > 2:
            problems.append(f"more than two arrows with source {v}: {outgoing[v]}")
        if len(incoming[v]) > 2:
            problems.append(f"more than two arrows with target {v}: {incoming[v]}")
    for b in p.arrows:
        after = [a.name for a in p.arrows if p.composable_unblocked(a.name, b.name)]
        if len(after) > 1:
            problems.append(f"arrows {after} all continue {b.name} without a relation")
        before = [c.name for c in p.arrows if p.composable_unblocked(b.name, c.name)]
        if len(before) > 1:
            problems.append(f"{b.name} continues arrows {before} without a relation")
    return problems


def _constraints(p: QuiverPresentation):
    """Yield (node, node, reason); each pair of sign values must differ.

    Nodes are ("sigma", arrow) or ("tau", arrow).
    """
    for i, x in enumerate(p.arrows):
        for y in p.arrows[i + 1:]:
            if x.source == y.source:
                yield ("sigma", x.name), ("sigma", y.name), f"condition (1) at vertex {x.source}"
            if x.target == y.target:
                yield ("tau", x.name), ("tau", y.name), f"condition (2) at vertex {x.target}"
    for x in p.arrows:
        for y in p.arrows:
            if p.composable_unblocked(x.name, y.name):
                yield ("sigma", x.name), ("tau", y.name), f"condition (3) for {x.name}{y.name}"


def verify_sign_maps(p: QuiverPresentation, signs: SignMaps) -> None:
    for a in p.arrows:
        for table, label in ((signs.sigma, "sigma"), (signs.tau, "tau")):
            if table.get(a.name) not in (-1, 1):
                raise SignMapError(f"{label}({a.name}) must be -1 or +1")
    for (k1, a1), (k2, a2), reason in _constraints(p):
        v1 = getattr(signs, k1)[a1]
        v2 = getattr(signs, k2)[a2]
        if v1 == v2:
            raise SignMapError(f"{reason}: {k1}({a1}) = {k2}({a2}) = {v1:+d}")


def infer_sign_maps(p: QuiverPresentation,
                    provided: Optional[SignMaps] = None) -> SignMaps:
    """Return verified sign maps, inferring them by 2-colouring if needed.

    Each connected constraint component is seeded at its first arrow in
    name order: sigma = -1 if that arrow's sigma is in the component,
    otherwise tau = +1.
    """
    if provided is not None:
        verify_sign_maps(p, provided)
        return provided

    adj = defaultdict(list)
    for n1, n2, reason in _constraints(p):
        adj[n1].append((n2, reason))
        adj[n2].append((n1, reason))

    value: dict = {}
    parent: dict = {}
    nodes = sorted([("sigma", a.name) for a in p.arrows] + [("tau", a.name) for a in p.arrows],
                   key=lambda n: (n[1], n[0]))
    for seed in nodes:
        if seed in value:
            continue
        value[seed] = -1 if seed[0] == "sigma" else 1
        parent[seed] = None
        queue = deque([seed])
        while queue:
            node = queue.popleft()
            for other, reason in adj[node]:
                if other not in value:
                    value[other] = -value[node]
                    parent[other] = node
                    queue.append(other)
                elif value[other] == value[node]:
                    raise SignMapError("no sign maps exist: odd constraint cycle "
                                       + _cycle_text(parent, node, other))
    sigma = {a.name: value[("sigma", a.name)] for a in p.arrows}
    tau = {a.name: value[("tau", a.name)] for a in p.arrows}
    return SignMaps(sigma, tau)


def _cycle_text(parent: dict, u, w) -> str:
    def path(n):
        out = []
        while n is not None:
            out.append(n)
            n = parent[n]
        return out

    pu, pw = path(u), path(w)
    common = next(n for n in pu if n in pw)
    cycle = pu[:pu.index(common) + 1] + list(reversed(pw[:pw.index(common)]))
    return " - ".join(f"{k}({a})" for k, a in cycle) + f" - {u[0]}({u[1]})"
