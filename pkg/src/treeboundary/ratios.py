"""Realized scaling values and constructive ratio-set witnesses.

Every translation scales the measure on sufficiently deep cells by an
integer power of the branching number n, so the candidate ratio values
are exactly the powers n**k.  ``find_witness`` certifies that a target
power is an essential value inside any positive-measure cylinder union
E: it produces a positive-measure F inside E, a map t assembled from
two cylinder swaps and one generator, with F and t(F) both inside E and
the scaling of t identically equal to the target on F.  Because the
arithmetic is exact, the certificate works for every tolerance at once.

The witness construction for a single factor of n:

* take the first cylinder C of E (descending to a depth-one child when
  E is the whole boundary) and the first generator g;
* swap C onto a same-depth cylinder whose word starts with g (the swap
  is the identity when C already starts with g) and keep the first
  translation piece of that swap, so the move into g's shadow is by one
  fixed element;
* cancel g from the front, which multiplies measure by exactly n there;
* if the result has left E, swap it back onto C and again restrict to
  the first translation piece.

On the restricted set the composite acts by one group element, so
containment and scaling are checked cell by cell in exact arithmetic.
Larger powers chain unit witnesses through the image sets; negative
powers invert the chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .action import act_cylinder, act_point, fixed_points, rn_exponent, rn_table
from .cylinders import Cylinder, CylinderUnion
from .fullgroup import PiecewiseTranslation, build_swap, transitivity_check
from .words import DEFAULT_CELL_LIMIT, Presentation, Word, sphere


def power_exponent(value: Fraction, n: int) -> int | None:
    """The integer k with value == n**k, or None if there is none."""
    if value <= 0:
        return None
    num, den = value.numerator, value.denominator
    if num == 1 and den == 1:
        return 0
    if den == 1:
        k = 0
        while num % n == 0:
            num //= n
            k += 1
        return k if num == 1 else None
    if num == 1:
        k = 0
        while den % n == 0:
            den //= n
            k += 1
        return -k if den == 1 else None
    return None


def realized_rn_values(
    p: Presentation,
    max_len: int,
    depth: int,
    limit: int | None = DEFAULT_CELL_LIMIT,
) -> set[Fraction]:
    """All scaling values of elements up to ``max_len`` on depth-``depth`` cells."""
    if depth <= max_len:
        raise ValueError("depth must exceed the maximal element length")
    values: set[Fraction] = set()
    for length in range(max_len + 1):
        for g in sphere(p, length, limit):
            table = rn_table(g, depth, limit)
            values.update(v for _, v in table.entries)
    return values


@dataclass(frozen=True)
class WitnessStage:
    """One unit factor of the witness map: swap in, cancel a generator, swap back.

    ``mover`` is the single group element by which the whole stage acts on
    the stage's restricted set.
    """

    into_shadow: PiecewiseTranslation
    generator: Word
    back_into: PiecewiseTranslation
    mover: Word

    def to_json(self) -> dict:
        def swap_json(k: PiecewiseTranslation) -> dict | str:
            if k.is_identity:
                return "id"
            return {"x": str(k.x), "y": str(k.y)}

        return {
            "k1": {"x": str(self.into_shadow.x), "y": str(self.into_shadow.y)},
            "g": str(self.generator),
            "k2": swap_json(self.back_into),
        }

    def inverted(self) -> "WitnessStage":
        return WitnessStage(self.back_into, ~self.generator, self.into_shadow, ~self.mover)


@dataclass(frozen=True)
class Witness:
    """Certificate that ``lam`` is an essential scaling value inside ``ambient``.

    ``deviation`` is the largest gap between the scaling on a cell of F
    and the target; the construction is exact, so it is always zero and
    the certificate holds for every positive tolerance simultaneously.
    """

    lam: Fraction
    ambient: CylinderUnion
    found: CylinderUnion
    image: CylinderUnion
    stages: tuple[WitnessStage, ...]
    net_element: Word
    rn_cells: tuple[tuple[Cylinder, Fraction], ...]

    @property
    def deviation(self) -> Fraction:
        return max((abs(v - self.lam) for _, v in self.rn_cells), default=Fraction(0))

    def to_json(self) -> dict:
        out = {
            "lambda": str(self.lam),
            "E": self.ambient.bases(),
            "F": self.found.bases(),
            "tF": self.image.bases(),
            "net_element": str(self.net_element),
            "deviation": str(self.deviation),
            "stages": [st.to_json() for st in self.stages],
            "rn_checks": [{"cell": str(c.base), "value": str(v)} for c, v in self.rn_cells],
        }
        if len(self.stages) == 1:
            out.update(self.stages[0].to_json())
        return out


def _first_word_starting_with(p: Presentation, first: int, length: int) -> Word:
    codes = [first]
    while len(codes) < length:
        forbidden = p.inverse_code(codes[-1])
        codes.append(0 if forbidden != 0 else 1)
    return Word(p, tuple(codes))


def _rn_cells(f: CylinderUnion, mover: Word, lam: Fraction) -> tuple[tuple[Cylinder, Fraction], ...]:
    p = f.presentation
    n = p.branching
    cells: list[tuple[Cylinder, Fraction]] = []
    for cyl in f:
        depth = max(cyl.depth, len(mover) + 1)
        for sub in cyl.descendants(depth):
            value = Fraction(n) ** rn_exponent(mover, sub.base)
            cells.append((sub, value))
    if any(v != lam for _, v in cells):
        raise AssertionError("witness scaling is not constant at the target value")
    return tuple(cells)


def _preimage(element: Word, union: CylinderUnion) -> CylinderUnion:
    p = union.presentation
    out = CylinderUnion.empty(p)
    for cyl in union:
        out = out | act_cylinder(~element, cyl)
    return out


def _unit_stage(ambient: CylinderUnion, p: Presentation) -> tuple[WitnessStage, CylinderUnion, CylinderUnion]:
    """A witness stage for one factor of n inside ``ambient``.

    Returns the stage, the set F it is certified on, and its exact image.
    """
    first = ambient.cylinders[0]
    if first.depth == 0:
        first = first.children()[0]
    c = first.base
    gen_code = 0
    g = Word(p, (gen_code,))

    if c.codes[0] == gen_code:
        into_shadow = build_swap(c, c)
        u = p.identity()
        d1 = first.children()[0]
    else:
        w = _first_word_starting_with(p, gen_code, len(c))
        into_shadow = build_swap(c, w, max_step=1)
        piece = into_shadow.pieces_at_step(1)[0]
        u = piece.element
        d1 = piece.domain
    q1 = Cylinder(u * d1.base)

    shifted = Cylinder(~g * q1.base)
    if ambient.contains(shifted):
        back_into = build_swap(shifted.base, shifted.base)
        mover = ~g * u
        found = CylinderUnion(p, (d1,))
        image = CylinderUnion(p, (shifted,))
    else:
        back_into = build_swap(shifted.base, c, max_step=1)
        piece2 = back_into.pieces_at_step(1)[0]
        mover = piece2.element * ~g * u
        found = act_cylinder(~(~g * u), piece2.domain)
        image = CylinderUnion(p, (piece2.image,))

    stage = WitnessStage(into_shadow, g, back_into, mover)
    return stage, found, image


def find_witness(lam: Fraction, ambient: CylinderUnion, p: Presentation) -> Witness:
    """A constructive certificate that ``lam`` is realized inside ``ambient``.

    ``lam`` must be a nonzero, non-unit power of the branching number.
    The search is fully deterministic: cylinders of E are visited in
    canonical order and generators in letter order, so the same inputs
    always produce the same witness.
    """
    if ambient.presentation != p:
        raise ValueError("ambient set from a different presentation")
    if ambient.is_empty:
        raise ValueError("ambient set must have positive measure")
    lam = Fraction(lam)
    n = p.branching
    k = power_exponent(lam, n)
    if k is None or k == 0:
        raise ValueError(f"target value {lam} is not a nontrivial power of the branching number {n}")

    if k < 0:
        forward = find_witness(Fraction(n) ** (-k), ambient, p)
        mover = ~forward.net_element
        stages = tuple(st.inverted() for st in reversed(forward.stages))
        rn_cells = _rn_cells(forward.image, mover, lam)
        return Witness(lam, ambient, forward.image, forward.found, stages, mover, rn_cells)

    stage, found, image = _unit_stage(ambient, p)
    stages = [stage]
    mover = stage.mover
    while len(stages) < k:
        nxt, nxt_found, nxt_image = _unit_stage(image, p)
        found = _preimage(mover, nxt_found)
        image = nxt_image
        mover = nxt.mover * mover
        stages.append(nxt)

    if not ambient.contains(found) or not ambient.contains(image):
        raise AssertionError("witness containment failed")
    if found.measure <= 0:
        raise AssertionError("witness set has measure zero")
    rn_cells = _rn_cells(found, mover, lam)
    return Witness(lam, ambient, found, image, tuple(stages), mover, rn_cells)


@dataclass(frozen=True)
class ClassificationReport:
    """Type label for a presentation plus the computed evidence bundle."""

    presentation: Presentation
    label: str
    freeness_ok: bool
    transitivity_ok: bool
    witness_ok: bool
    detail: dict

    @property
    def ok(self) -> bool:
        return self.freeness_ok and self.transitivity_ok and self.witness_ok

    def to_json(self) -> dict:
        return {
            "s": self.presentation.s,
            "t": self.presentation.t,
            "degree": self.presentation.degree,
            "n": self.presentation.branching,
            "type": self.label,
            "evidence": {
                "freeness": self.freeness_ok,
                "transitivity": self.transitivity_ok,
                "ratio_witnesses": self.witness_ok,
                **self.detail,
            },
            "ratio_values": {
                "nonzero": f"integer powers of {self.presentation.branching}",
                "zero_included": True,
                "zero_note": "zero is part of the value set by definition; it is not witnessed constructively",
            },
            "notes": "hyperfiniteness of the associated factor is outside the scope of this tool",
        }


def classify(p: Presentation) -> ClassificationReport:
    """Label the boundary action and bundle the computed evidence.

    Freeness is sampled over every generator letter (each fixes at most
    two boundary points, a null set); ergodicity of the swap group is
    certified by depth-1 and depth-2 transitivity; and witnesses for the
    scaling values n and 1/n are built on the full boundary.
    """
    n = p.branching
    fixed_counts = {}
    freeness_ok = True
    for code in range(p.degree):
        g = p.generator(code)
        pts = fixed_points(g)
        fixed_counts[str(g)] = len(pts)
        if len(pts) > 2 or any(act_point(g, q) != q for q in pts):
            freeness_ok = False

    transitivity_ok = all(transitivity_check(p, m) for m in (1, 2))

    full = CylinderUnion.full(p)
    witness_ok = True
    witness_detail = {}
    for lam in (Fraction(n), Fraction(1, n)):
        try:
            w = find_witness(lam, full, p)
            witness_detail[str(lam)] = {"F": w.found.bases(), "measure": str(w.found.measure)}
        except (ValueError, AssertionError) as exc:
            witness_ok = False
            witness_detail[str(lam)] = {"error": str(exc)}

    label = f"III_{{1/{n}}}"
    detail = {"fixed_point_counts": fixed_counts, "witnesses": witness_detail}
    return ClassificationReport(p, label, freeness_ok, transitivity_ok, witness_ok, detail)
