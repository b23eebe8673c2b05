"""Cylinder sets on the space of infinite reduced words, with exact measure.

A cylinder is the set of infinite reduced words extending a fixed finite
word; the empty word gives the whole boundary.  The distinguished
probability measure splits the total mass evenly over the ``degree``
depth-one cylinders and then evenly over the ``branching`` children at
every deeper level, so a depth-m cylinder has mass
``(1/degree) * (1/branching)**(m-1)``.  All measures are exact rationals;
no floating point enters any computation here.

Finite unions of cylinders form the computable set algebra used by the
rest of the package.  A union is kept in canonical form: no base word is
a prefix of another, complete sibling families are merged into their
parent, and the bases are sorted shortlex.  Intersections and
differences are computed by refining to a common depth, so every
operation stays exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .words import Presentation, Word


@dataclass(frozen=True)
class Cylinder:
    """All infinite reduced words beginning with ``base``."""

    base: Word

    @property
    def presentation(self) -> Presentation:
        return self.base.presentation

    @property
    def depth(self) -> int:
        return len(self.base)

    @property
    def measure(self) -> Fraction:
        p = self.presentation
        if self.depth == 0:
            return Fraction(1)
        return Fraction(1, p.degree) * Fraction(1, p.branching) ** (self.depth - 1)

    def allowed_codes(self) -> list[int]:
        """Letter codes that extend the base to a reduced word."""
        p = self.presentation
        if self.depth == 0:
            return list(range(p.degree))
        forbidden = p.inverse_code(self.base.last_code)
        return [z for z in range(p.degree) if z != forbidden]

    def children(self) -> tuple["Cylinder", ...]:
        return tuple(Cylinder(self.base.append_code(z)) for z in self.allowed_codes())

    def descendants(self, depth: int) -> list["Cylinder"]:
        """All sub-cylinders at the given absolute depth (>= own depth)."""
        if depth < self.depth:
            raise ValueError("target depth is above this cylinder")
        level = [self]
        for _ in range(depth - self.depth):
            level = [child for cyl in level for child in cyl.children()]
        return level

    def contains(self, other: "Cylinder") -> bool:
        return other.base.startswith(self.base)

    def overlaps(self, other: "Cylinder") -> bool:
        return self.contains(other) or other.contains(self)

    def __str__(self) -> str:
        return str(self.base)


def _sort_key(base: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (len(base), base)


def _normalize_bases(p: Presentation, bases: Iterable[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    pool = set(bases)
    # drop anything below another base
    pool = {b for b in pool if not any(b[:i] in pool for i in range(len(b)))}
    if not pool:
        return ()
    # merge complete sibling families, deepest level first
    by_len: dict[int, set[tuple[int, ...]]] = {}
    for b in pool:
        by_len.setdefault(len(b), set()).add(b)
    for length in range(max(by_len), 0, -1):
        level = by_len.get(length, set())
        for parent in {b[:-1] for b in level}:
            if parent:
                forbidden = p.inverse_code(parent[-1])
                family = [parent + (z,) for z in range(p.degree) if z != forbidden]
            else:
                family = [(z,) for z in range(p.degree)]
            if all(child in level for child in family):
                level.difference_update(family)
                by_len.setdefault(length - 1, set()).add(parent)
    merged = [b for level in by_len.values() for b in level]
    return tuple(sorted(merged, key=_sort_key))


@dataclass(frozen=True)
class CylinderUnion:
    """A finite union of cylinders, always held in canonical form."""

    presentation: Presentation
    cylinders: tuple[Cylinder, ...]

    def __post_init__(self):
        for cyl in self.cylinders:
            if cyl.presentation != self.presentation:
                raise ValueError("cylinder from a different presentation")
        bases = _normalize_bases(self.presentation, (cyl.base.codes for cyl in self.cylinders))
        canonical = tuple(Cylinder(Word(self.presentation, b)) for b in bases)
        object.__setattr__(self, "cylinders", canonical)

    @classmethod
    def empty(cls, p: Presentation) -> "CylinderUnion":
        return cls(p, ())

    @classmethod
    def full(cls, p: Presentation) -> "CylinderUnion":
        return cls(p, (Cylinder(p.identity()),))

    @classmethod
    def of_words(cls, p: Presentation, words: Iterable[Word]) -> "CylinderUnion":
        return cls(p, tuple(Cylinder(w) for w in words))

    @property
    def is_empty(self) -> bool:
        return not self.cylinders

    @property
    def measure(self) -> Fraction:
        return sum((cyl.measure for cyl in self.cylinders), Fraction(0))

    def __iter__(self) -> Iterator[Cylinder]:
        return iter(self.cylinders)

    def __or__(self, other: "CylinderUnion") -> "CylinderUnion":
        self._check(other)
        return CylinderUnion(self.presentation, self.cylinders + other.cylinders)

    def __and__(self, other: "CylinderUnion") -> "CylinderUnion":
        self._check(other)
        met = []
        for a, b in itertools.product(self.cylinders, other.cylinders):
            if a.contains(b):
                met.append(b)
            elif b.contains(a):
                met.append(a)
        return CylinderUnion(self.presentation, tuple(met))

    def __sub__(self, other: "CylinderUnion") -> "CylinderUnion":
        self._check(other)
        out: list[Cylinder] = []
        for cyl in self.cylinders:
            out.extend(_cylinder_minus(cyl, other.cylinders))
        return CylinderUnion(self.presentation, tuple(out))

    def contains(self, other: "CylinderUnion | Cylinder") -> bool:
        if isinstance(other, Cylinder):
            other = CylinderUnion(self.presentation, (other,))
        return (other - self).is_empty

    def complement(self) -> "CylinderUnion":
        return CylinderUnion.full(self.presentation) - self

    def covers_word(self, word: Word) -> bool:
        """Whether every boundary word with this finite prefix lies inside.

        Only valid when the union's bases are no deeper than the word.
        """
        for cyl in self.cylinders:
            if cyl.depth > len(word):
                raise ValueError("union is finer than the given truncation depth")
        return any(word.startswith(cyl.base) for cyl in self.cylinders)

    def bases(self) -> list[str]:
        return [str(cyl.base) for cyl in self.cylinders]

    @classmethod
    def parse(cls, p: Presentation, bases: Sequence[str]) -> "CylinderUnion":
        return cls(p, tuple(Cylinder(Word.parse(b, p)) for b in bases))

    def _check(self, other: "CylinderUnion") -> None:
        if self.presentation != other.presentation:
            raise ValueError("unions from different presentations")

    def __str__(self) -> str:
        return "{" + ", ".join(self.bases()) + "}"


def _cylinder_minus(cyl: Cylinder, holes: Sequence[Cylinder]) -> list[Cylinder]:
    relevant = [h for h in holes if h.overlaps(cyl)]
    if not relevant:
        return [cyl]
    if any(h.contains(cyl) for h in relevant):
        return []
    out: list[Cylinder] = []
    for child in cyl.children():
        out.extend(_cylinder_minus(child, relevant))
    return out


@dataclass(frozen=True)
class BoundaryPoint:
    """An eventually periodic infinite reduced word: prefix then repeating cycle.

    The representation is normalized on construction to the shortest
    possible prefix and a primitive cycle, so structural equality decides
    equality of the underlying infinite words.
    """

    prefix: Word
    cycle: Word

    def __post_init__(self):
        if self.prefix.presentation != self.cycle.presentation:
            raise ValueError("prefix and cycle from different presentations")
        if len(self.cycle) == 0:
            raise ValueError("cycle must be nonempty")
        p = self.prefix.presentation
        cyc = self.cycle.codes
        if cyc[0] == p.inverse_code(cyc[-1]):
            raise ValueError("cycle does not repeat reducibly")
        if self.prefix and cyc[0] == p.inverse_code(self.prefix.last_code):
            raise ValueError("prefix does not join the cycle reducibly")
        # primitive cycle
        period = len(cyc)
        for d in range(1, len(cyc)):
            if len(cyc) % d == 0 and cyc == cyc[:d] * (len(cyc) // d):
                period = d
                break
        cyc = cyc[:period]
        # shortest prefix: fold trailing prefix letters into the cycle
        pre = self.prefix.codes
        while pre and pre[-1] == cyc[-1]:
            pre = pre[:-1]
            cyc = cyc[-1:] + cyc[:-1]
        object.__setattr__(self, "prefix", Word(p, pre))
        object.__setattr__(self, "cycle", Word(p, cyc))

    @property
    def presentation(self) -> Presentation:
        return self.prefix.presentation

    def letter_code_at(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix.codes[i]
        return self.cycle.codes[(i - len(self.prefix)) % len(self.cycle)]

    def truncate(self, m: int) -> Word:
        if m < 0:
            raise ValueError("depth must be nonnegative")
        return Word(self.presentation, tuple(self.letter_code_at(i) for i in range(m)))

    def cylinder_at(self, m: int) -> Cylinder:
        if m < 1:
            raise ValueError("depth must be at least 1")
        return Cylinder(self.truncate(m))

    def __str__(self) -> str:
        return f"{self.prefix} | {self.cycle}"

    @classmethod
    def parse(cls, text: str, p: Presentation) -> "BoundaryPoint":
        if "|" not in text:
            raise ValueError("boundary point must look like 'prefix | cycle'")
        pre, cyc = text.split("|", 1)
        return cls(Word.parse(pre, p), Word.parse(cyc, p))


def locate(point: BoundaryPoint, depth: int) -> Cylinder:
    """The unique depth-``depth`` cylinder containing the point."""
    return point.cylinder_at(depth)


def periodic_extension(word: Word) -> BoundaryPoint:
    """The canonical eventually periodic point extending a finite word.

    Appends the lexicographically first valid cycle: a single free letter
    when one can follow, otherwise the first valid two-letter cycle.
    """
    p = word.presentation
    after = p.inverse_code(word.last_code) if word else -1
    for z in range(p.degree):
        if z != after and z != p.inverse_code(z):
            return BoundaryPoint(word, Word(p, (z,)))
    for z1 in range(p.degree):
        if z1 == after:
            continue
        for z2 in range(p.degree):
            if z2 != z1 and z2 != p.inverse_code(z1):
                return BoundaryPoint(word, Word(p, (z1, z2)))
    raise ValueError("no valid cycle exists; the tree does not branch")
