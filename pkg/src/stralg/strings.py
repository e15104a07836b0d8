"""Walks, strings and bands over a string-algebra presentation.

Words are stored leftmost syllable first and read right to left as walks,
so the rightmost syllable is traversed first.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .presentation import PresentationError, QuiverPresentation

RIGHTMOST_DIRECT = "rightmost-direct"
LEFTMOST_DIRECT = "leftmost-direct"


class StringError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Syllable:
    arrow: str
    inverse: bool = False

    def inv(self) -> "Syllable":
        return Syllable(self.arrow, not self.inverse)

    @property
    def bit(self) -> str:
        return "1" if self.inverse else "0"

    def __str__(self) -> str:
        return self.arrow + ("-" if self.inverse else "")

    @classmethod
    def parse(cls, token: str) -> "Syllable":
        token = token.strip()
        for suffix in ("-", "⁻"):
            if token.endswith(suffix):
                return cls(token[: -len(suffix)], True)
        return cls(token, False)


@dataclass(frozen=True)
class Word:
    """A walk: either ``syllables`` (nonempty) or a trivial ``1_(vertex, i)``."""

    syllables: tuple[Syllable, ...] = ()
    vertex: Optional[str] = None
    i: int = 0

    @classmethod
    def trivial(cls, vertex: str, i: int) -> "Word":
        if i not in (-1, 1):
            raise StringError("trivial strings carry i = +1 or -1")
        return cls((), vertex, i)

    @classmethod
    def of(cls, syllables: Iterable[Syllable]) -> "Word":
        syls = tuple(syllables)
        if not syls:
            raise StringError("use Word.trivial for zero-length strings")
        return cls(syls)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``"b- a"`` (space separated) or compact ``"b-a"``."""
        text = text.strip()
        if text.startswith("1_("):
            vertex, _, sign = text[3:-1].rpartition(",")
            return cls.trivial(vertex, int(sign))
        tokens = text.split()
        if len(tokens) == 1 and len(tokens[0]) > 1:
            tokens = _split_compact(tokens[0])
        return cls.of(Syllable.parse(t) for t in tokens)

    @property
    def is_trivial(self) -> bool:
        return not self.syllables

    def __len__(self) -> int:
        return len(self.syllables)

    def tokens(self) -> list[str]:
        return [str(s) for s in self.syllables]

    def __str__(self) -> str:
        if self.is_trivial:
            return f"1_({self.vertex},{self.i:+d})"
        sep = "" if all(len(s.arrow) == 1 for s in self.syllables) else " "
        return sep.join(self.tokens())

    def pretty(self) -> str:
        """Label with superscript inverses, as used in diagrams."""
        if self.is_trivial:
            return str(self)
        sep = "" if all(len(s.arrow) == 1 for s in self.syllables) else " "
        return sep.join(s.arrow + ("⁻" if s.inverse else "") for s in self.syllables)

    def to_json(self):
        if self.is_trivial:
            return {"vertex": self.vertex, "i": self.i}
        return self.tokens()

    @classmethod
    def from_json(cls, doc) -> "Word":
        if isinstance(doc, dict):
            return cls.trivial(str(doc["vertex"]), int(doc["i"]))
        return cls.of(Syllable.parse(t) for t in doc)

    def prepend(self, syl: Syllable) -> "Word":
        return Word((syl,) + self.syllables)


def _split_compact(token: str) -> list[str]:
    out = []
    for ch in token:
        if ch in "-⁻" and out:
            out[-1] += "-"
        else:
            out.append(ch)
    return out


def all_syllables(p: QuiverPresentation) -> list[Syllable]:
    return sorted(Syllable(a.name, inv) for a in p.arrows for inv in (False, True))


def _check_known(p: QuiverPresentation, w: Word) -> None:
    for s in w.syllables:
        if s.arrow not in p.arrow_map:
            raise StringError(f"unknown arrow {s.arrow!r}")
    if w.is_trivial and w.vertex not in p.vertices:
        raise StringError(f"unknown vertex {w.vertex!r}")


# syllable-level data

def syl_source(p: QuiverPresentation, s: Syllable) -> str:
    return p.target(s.arrow) if s.inverse else p.source(s.arrow)


def syl_target(p: QuiverPresentation, s: Syllable) -> str:
    return p.source(s.arrow) if s.inverse else p.target(s.arrow)


def syl_sigma(p: QuiverPresentation, s: Syllable) -> int:
    signs = p.signs
    return signs.tau[s.arrow] if s.inverse else signs.sigma[s.arrow]


def syl_tau(p: QuiverPresentation, s: Syllable) -> int:
    signs = p.signs
    return signs.sigma[s.arrow] if s.inverse else signs.tau[s.arrow]


# word-level data

def source(p: QuiverPresentation, w: Word) -> str:
    return w.vertex if w.is_trivial else syl_source(p, w.syllables[-1])


def target(p: QuiverPresentation, w: Word) -> str:
    return w.vertex if w.is_trivial else syl_target(p, w.syllables[0])


def sigma(p: QuiverPresentation, w: Word) -> int:
    return -w.i if w.is_trivial else syl_sigma(p, w.syllables[-1])


def tau(p: QuiverPresentation, w: Word) -> int:
    return w.i if w.is_trivial else syl_tau(p, w.syllables[0])


def _blocked(p: QuiverPresentation, block: Sequence[Syllable]) -> bool:
    """Is ``block`` a relation or the inverse of one?"""
    if all(not s.inverse for s in block):
        return tuple(s.arrow for s in block) in p.relation_set
    if all(s.inverse for s in block):
        return tuple(s.arrow for s in reversed(block)) in p.relation_set
    return False


def _walk_step_ok(p: QuiverPresentation, left: Syllable, right: Syllable) -> bool:
    return syl_source(p, left) == syl_target(p, right) and left != right.inv()


def is_walk(p: QuiverPresentation, w: Word) -> bool:
    _check_known(p, w)
    return all(syl_source(p, x) == syl_target(p, y)
               for x, y in zip(w.syllables, w.syllables[1:]))


def is_string(p: QuiverPresentation, w: Word) -> bool:
    _check_known(p, w)
    syls = w.syllables
    for x, y in zip(syls, syls[1:]):
        if not _walk_step_ok(p, x, y):
            return False
    lengths = {len(rel) for rel in p.relations}
    for n in lengths:
        for start in range(len(syls) - n + 1):
            if _blocked(p, syls[start:start + n]):
                return False
    return True


def can_prepend(p: QuiverPresentation, syl: Syllable, w: Word) -> bool:
    """Is ``syl w`` a string, given that ``w`` is one?

    Only relations that involve the new syllable are examined, so ``w`` may
    be a leftmost window of a longer string. At a trivial ``1_(v,i)`` the
    composite ``syl 1_(v,i)`` also needs sigma(syl) = -i.
    """
    if w.is_trivial:
        if syl_source(p, syl) != w.vertex or syl_sigma(p, syl) != -w.i:
            return False
        return not _blocked(p, (syl,))
    if not _walk_step_ok(p, syl, w.syllables[0]):
        return False
    full = (syl,) + w.syllables
    for n in {len(rel) for rel in p.relations}:
        if n <= len(full) and _blocked(p, full[:n]):
            return False
    return True


def can_append(p: QuiverPresentation, w: Word, syl: Syllable) -> bool:
    """Is ``w syl`` a string, given that ``w`` is a nonempty string?"""
    if not _walk_step_ok(p, w.syllables[-1], syl):
        return False
    full = w.syllables + (syl,)
    for n in {len(rel) for rel in p.relations}:
        if n <= len(full) and _blocked(p, full[-n:]):
            return False
    return True


def inverse(w: Word) -> Word:
    if w.is_trivial:
        return Word.trivial(w.vertex, -w.i)
    return Word(tuple(s.inv() for s in reversed(w.syllables)))


def sign_sequence(w: Word) -> str:
    """Binary word: 0 per direct, 1 per inverse syllable, rightmost first."""
    return "".join(s.bit for s in reversed(w.syllables))


def in_left_hammock(p: QuiverPresentation, w: Word, v: str) -> bool:
    return source(p, w) == v and sigma(p, w) == -1


def compare_l(p: QuiverPresentation, x: Word, y: Word) -> int:
    """Three-way comparison in the left order; -1 means x comes first."""
    if (source(p, x), sigma(p, x)) != (source(p, y), sigma(p, y)):
        raise StringError(f"{x} and {y} do not lie in a common hammock")
    xs, ys = x.syllables, y.syllables
    k = 0
    while k < len(xs) and k < len(ys) and xs[-1 - k] == ys[-1 - k]:
        k += 1
    if k == len(xs) and k == len(ys):
        return 0
    x_rest, y_rest = xs[: len(xs) - k], ys[: len(ys) - k]
    if x_rest and not x_rest[-1].inverse:
        return -1
    if y_rest and y_rest[-1].inverse:
        return -1
    return 1


def compare_r(p: QuiverPresentation, x: Word, y: Word) -> int:
    return compare_l(p, inverse(x), inverse(y))


def is_primitive(syls: Sequence) -> bool:
    n = len(syls)
    for d in range(1, n):
        if n % d == 0 and tuple(syls[:d]) * (n // d) == tuple(syls):
            return False
    return True


def primitive_root(syls: Sequence) -> tuple:
    n = len(syls)
    for d in range(1, n + 1):
        if n % d == 0 and tuple(syls[:d]) * (n // d) == tuple(syls):
            return tuple(syls[:d])
    return tuple(syls)


def rotations(syls: Sequence) -> list[tuple]:
    syls = tuple(syls)
    return [syls[k:] + syls[:k] for k in range(len(syls))]


def powers_are_strings(p: QuiverPresentation, w: Word) -> bool:
    """Every power of ``w`` is a string.

    Any relation window in a high power already occurs in the power with
    enough copies to cover one window plus one wrap-around.
    """
    if w.is_trivial:
        return False
    n = len(w)
    copies = max(2, -(-p.r // n) + 1)
    return is_string(p, Word(w.syllables * copies))


def is_oriented(w: Word, orientation: str = RIGHTMOST_DIRECT) -> bool:
    first, last = w.syllables[-1], w.syllables[0]
    if orientation == LEFTMOST_DIRECT:
        first, last = last, first
    return not first.inverse and last.inverse


def is_band(p: QuiverPresentation, w: Word, orientation: str = RIGHTMOST_DIRECT) -> bool:
    """Band test on the cyclic word of ``w``.

    Accepts any rotation; the orientation only picks which rotation is
    canonical (see ``canonical_band``).
    """
    if w.is_trivial or not is_string(p, w):
        return False
    if not is_primitive(w.syllables) or not powers_are_strings(p, w):
        return False
    return any(is_oriented(Word(rot), orientation) for rot in rotations(w.syllables))


def canonical_band(w: Word, orientation: str = RIGHTMOST_DIRECT) -> Word:
    """Least oriented rotation, comparing syllable tokens left to right."""
    candidates = [rot for rot in rotations(w.syllables) if is_oriented(Word(rot), orientation)]
    if not candidates:
        raise StringError(f"{w} has no oriented rotation")
    return Word(min(candidates, key=lambda rot: [str(s) for s in rot]))


class ShortUniverse:
    """All strings of length at most ``window`` plus every trivial string."""

    def __init__(self, p: QuiverPresentation):
        self.window = max(p.r - 1, 1)
        members = [Word.trivial(v, i) for v in p.vertices for i in (1, -1)]
        layer = [Word((s,)) for s in all_syllables(p) if is_string(p, Word((s,)))]
        length = 1
        while layer and length <= self.window:
            members.extend(layer)
            if length == self.window:
                break
            layer = [w.prepend(s) for w in layer for s in all_syllables(p)
                     if can_prepend(p, s, w)]
            length += 1
        self.members = tuple(members)
        self._index = {m: k for k, m in enumerate(self.members)}

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, w: Word) -> bool:
        return w in self._index

    def bracket(self, w: Word) -> Word:
        """Longest member that is a leftmost part of ``w``."""
        if w.is_trivial or len(w) <= self.window:
            return w
        return Word(w.syllables[: self.window])

    def suffix_bracket(self, w: Word) -> Word:
        """Longest member that is a rightmost part of ``w``."""
        if w.is_trivial or len(w) <= self.window:
            return w
        return Word(w.syllables[-self.window:])


def short_universe(p: QuiverPresentation) -> ShortUniverse:
    return ShortUniverse(p)


def bracket(u: ShortUniverse, w: Word) -> Word:
    return u.bracket(w)


def enumerate_strings(p: QuiverPresentation, maxlen: int) -> list[Word]:
    """Every nonempty string of length at most ``maxlen``, by naive search."""
    found = []
    layer = [Word((s,)) for s in all_syllables(p) if is_string(p, Word((s,)))]
    for _ in range(maxlen):
        found.extend(layer)
        layer = [w.prepend(s) for w in layer for s in all_syllables(p)
                 if is_string(p, w.prepend(s))]
    return found


def enumerate_hl_naive(p: QuiverPresentation, v: str, maxlen: int) -> list[Word]:
    """Left hammock strings of length <= maxlen, sorted by ``compare_l``.

    Grows strings one syllable at a time on the left, re-checking the full
    string each time. No automaton is involved.
    """
    if v not in p.vertices:
        raise PresentationError(f"unknown vertex {v!r}")
    start = Word.trivial(v, 1)
    found = [start]
    layer = [Word((s,)) for s in all_syllables(p)
             if syl_source(p, s) == v and syl_sigma(p, s) == -1 and is_string(p, Word((s,)))]
    for _ in range(maxlen):
        found.extend(layer)
        layer = [w.prepend(s) for w in layer for s in all_syllables(p)
                 if is_string(p, w.prepend(s))]
    return sorted(found, key=functools.cmp_to_key(lambda x, y: compare_l(p, x, y)))


def enumerate_bands(p: QuiverPresentation, maxlen: int,
                    orientation: str = RIGHTMOST_DIRECT) -> list[Word]:
    """Canonical forms of all bands of length <= maxlen (band and its inverse
    listed separately)."""
    bands = set()
    for w in enumerate_strings(p, maxlen):
        if is_band(p, w, orientation):
            bands.add(canonical_band(w, orientation))
    return sorted(bands, key=lambda b: (len(b), b.tokens()))


def iter_band_rotations_at(p: QuiverPresentation, band: Word, v: str) -> Iterator[Word]:
    """Rotations of ``band`` that lie in the left hammock at ``v``."""
    for rot in rotations(band.syllables):
        w = Word(rot)
        if in_left_hammock(p, w, v):
            yield w
