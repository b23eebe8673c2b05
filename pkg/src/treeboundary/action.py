"""Left translation on the boundary and its exact scaling tables.

A group element acts on an infinite reduced word by left multiplication
and reduction.  The action distorts the boundary measure by a locally
constant factor: on any cylinder deeper than the acting word the factor
is an integer power of the branching number, namely
``branching ** (depth - image depth)``.

Convention used throughout: the value attached to a cell C for an
element g is measure(g.C) / measure(C), i.e. the derivative of the
pushforward set map E -> measure(g.E) with respect to the base measure,
evaluated anywhere on C.  Composition then satisfies the chain rule
value(gh, C) = value(g, h.C) * value(h, C).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cylinders import BoundaryPoint, Cylinder, CylinderUnion
from .words import DEFAULT_CELL_LIMIT, Presentation, ResourceLimitError, Word, sphere


def act_point(g: Word, point: BoundaryPoint) -> BoundaryPoint:
    """The boundary point g . point, normalized."""
    if g.presentation != point.presentation:
        raise ValueError("element and point from different presentations")
    codes = point.prefix.codes
    cycle = point.cycle.codes
    # unroll far enough that reduction cannot reach into the repeating part
    while len(codes) <= len(g):
        codes = codes + cycle
    moved = g * Word(g.presentation, codes)
    return BoundaryPoint(moved, point.cycle)


def act_cylinder(g: Word, cyl: Cylinder, limit: int | None = DEFAULT_CELL_LIMIT) -> CylinderUnion:
    """The exact image of a cylinder as a disjoint union of cylinders.

    A cylinder deeper than ``g`` maps onto a single cylinder; otherwise
    the cylinder is refined to depth ``len(g) + 1`` first, which is deep
    enough that each refined cell maps onto one cylinder exactly.
    """
    p = g.presentation
    if p != cyl.presentation:
        raise ValueError("element and cylinder from different presentations")
    if cyl.depth > len(g):
        return CylinderUnion(p, (Cylinder(g * cyl.base),))
    target = len(g) + 1
    count = p.degree * p.branching ** (target - 1) if cyl.depth == 0 else p.branching ** (target - cyl.depth)
    if limit is not None and count > limit:
        raise ResourceLimitError(f"refinement to {count} cells exceeds the bound {limit}")
    pieces = [Cylinder(g * sub.base) for sub in cyl.descendants(target)]
    return CylinderUnion(p, tuple(pieces))


def rn_exponent(g: Word, base: Word) -> int:
    """Power of the branching number by which g scales the cell over ``base``."""
    if len(base) <= len(g):
        raise ValueError("cell must be deeper than the acting word")
    return len(base) - len(g * base)


def rn_value(g: Word, cyl: Cylinder) -> Fraction:
    return Fraction(g.presentation.branching) ** rn_exponent(g, cyl.base)


@dataclass(frozen=True)
class RNTable:
    """Scaling factors of one element on every cell of a fixed depth.

    The cells partition the boundary and every value is an exact power
    of the branching number.
    """

    element: Word
    depth: int
    entries: tuple[tuple[Cylinder, Fraction], ...]

    @property
    def presentation(self) -> Presentation:
        return self.element.presentation

    def restrict(self, base: Word) -> tuple[tuple[Cylinder, Fraction], ...]:
        """Entries whose cell lies inside the cylinder over ``base``."""
        return tuple((cell, v) for cell, v in self.entries if cell.base.startswith(base))

    def value_on(self, cyl: Cylinder) -> Fraction:
        """The constant value on a cylinder at least as deep as the table."""
        if cyl.depth < self.depth:
            raise ValueError("cylinder is coarser than the table")
        return rn_value(self.element, cyl)

    def to_json(self) -> list[dict]:
        rows = []
        for cell, value in self.entries:
            rows.append({
                "cell": str(cell.base),
                "value": str(value),
                "exponent": rn_exponent(self.element, cell.base),
            })
        return rows


def rn_table(g: Word, depth: int, limit: int | None = DEFAULT_CELL_LIMIT) -> RNTable:
    """The scaling table of ``g`` on the depth-``depth`` cell partition."""
    if depth <= len(g):
        raise ValueError("table depth must exceed the length of the element")
    cells = sphere(g.presentation, depth, limit)
    entries = tuple((Cylinder(y), rn_value(g, Cylinder(y))) for y in cells)
    return RNTable(g, depth, entries)


def cyclic_core(g: Word) -> tuple[Word, Word]:
    """Write g as u * core * ~u with the core cyclically reduced."""
    p = g.presentation
    codes = g.codes
    k = 0
    while len(codes) - 2 * k >= 2 and codes[k] == p.inverse_code(codes[len(codes) - 1 - k]):
        k += 1
    return Word(p, codes[:k]), Word(p, codes[k:len(codes) - k])


def fixed_points(g: Word) -> frozenset[BoundaryPoint]:
    """Boundary points fixed by ``g``, always a set of at most two.

    A nontrivial element fixes at most the two ends of its translation
    axis, reached by conjugating the periodic ends of its cyclically
    reduced core.  When the core is a single order-two letter the element
    inverts an edge of the tree and fixes no end at all.
    """
    if len(g) == 0:
        raise ValueError("the identity fixes everything; pass a nontrivial element")
    p = g.presentation
    u, core = cyclic_core(g)
    if len(core) == 1 and core.codes[0] == p.inverse_code(core.codes[0]):
        return frozenset()
    return frozenset({BoundaryPoint(u, core), BoundaryPoint(u, ~core)})
