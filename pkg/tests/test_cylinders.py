import random
from fractions import Fraction

import pytest

from treeboundary import (
    BoundaryPoint,
    Cylinder,
    CylinderUnion,
    Presentation,
    Word,
    locate,
    periodic_extension,
    sphere,
)

from conftest import random_union, truncation_measure, union_truncations

P30 = Presentation(3, 0)
P11 = Presentation(1, 1)


def cyl(text, p=P30):
    return Cylinder(Word.parse(text, p))


def test_measure_examples():
    assert cyl("a1").measure == Fraction(1, 3)
    assert cyl("a1 a2").measure == Fraction(1, 6)
    assert cyl("e").measure == 1
    assert Cylinder(Word.parse("b1 b1", Presentation(0, 2))).measure == Fraction(1, 12)


def test_children_examples():
    assert [str(c.base) for c in cyl("a1").children()] == ["a1 a2", "a1 a3"]
    root = cyl("e")
    assert len(root.children()) == P30.degree
    assert sum(c.measure for c in cyl("a1").children()) == Fraction(1, 3)


@pytest.mark.parametrize("m", range(1, 9))
def test_sphere_partition_is_exact(presentation, m):
    total = sum(Cylinder(w).measure for w in sphere(presentation, m))
    assert total == 1


def test_children_refine_exactly(presentation):
    for m in range(0, 5):
        for w in sphere(presentation, m):
            c = Cylinder(w)
            assert sum(child.measure for child in c.children()) == c.measure


def test_union_normalization_drops_subsumed():
    u = CylinderUnion.parse(P30, ["a1", "a1 a2", "a1 a2 a3"])
    assert u.bases() == ["a1"]


def test_union_coalesces_complete_families():
    u = CylinderUnion.parse(P30, ["a1 a2", "a1 a3"])
    assert u.bases() == ["a1"]
    everything = CylinderUnion.parse(P30, ["a1", "a2", "a3"])
    assert everything == CylinderUnion.full(P30)
    partial = CylinderUnion.parse(P30, ["a1 a2", "a2"])
    assert partial.bases() == ["a2", "a1 a2"]


def test_union_measure_matches_inclusion_exclusion_oracle():
    rng = random.Random(5)
    for p in (P30, P11, Presentation(0, 2)):
        for _ in range(25):
            u = random_union(rng, p, max_depth=3, max_parts=4)
            assert u.measure == truncation_measure(u, 4)


def test_set_operations_match_truncation_oracle():
    rng = random.Random(9)
    for p in (P30, P11):
        for _ in range(25):
            a = random_union(rng, p, max_depth=3, max_parts=3)
            b = random_union(rng, p, max_depth=3, max_parts=3)
            ta, tb = union_truncations(a, 4), union_truncations(b, 4)
            assert union_truncations(a | b, 4) == ta | tb
            assert union_truncations(a & b, 4) == ta & tb
            assert union_truncations(a - b, 4) == ta - tb
            assert a.contains(b) == (tb <= ta)


def test_complement():
    u = CylinderUnion.parse(P30, ["a1"])
    comp = u.complement()
    assert comp.bases() == ["a2", "a3"]
    assert (u | comp) == CylinderUnion.full(P30)
    assert (u & comp).is_empty
    assert u.measure + comp.measure == 1


def test_boundary_point_normalizes_primitive_cycle():
    b = Presentation(0, 2)
    pt = BoundaryPoint(Word.parse("e", b), Word.parse("b1 b1", b))
    assert str(pt) == "e | b1"


def test_boundary_point_normalizes_shortest_prefix():
    pt = BoundaryPoint(Word.parse("a2 a3", P30), Word.parse("a2 a3", P30))
    assert str(pt) == "e | a2 a3"
    pt2 = BoundaryPoint(Word.parse("a1 a2", P30), Word.parse("a3 a2", P30))
    assert str(pt2) == "a1 | a2 a3"


def test_boundary_point_rejects_bad_junctions():
    with pytest.raises(ValueError):
        BoundaryPoint(Word.parse("a1", P30), Word.parse("a1 a2", P30))
    with pytest.raises(ValueError):
        BoundaryPoint(Word.parse("e", P30), Word.parse("a1", P30))  # a1 a1 ... not reduced
    with pytest.raises(ValueError):
        BoundaryPoint(Word.parse("e", P11), Word.parse("e", P11))
    with pytest.raises(ValueError):
        BoundaryPoint(Word.parse("b1", P11), Word.parse("b1' a1", P11))


def test_boundary_point_equality_is_semantic():
    a = BoundaryPoint(Word.parse("a1", P30), Word.parse("a2 a1", P30))
    b = BoundaryPoint(Word.parse("e", P30), Word.parse("a1 a2", P30))
    assert a == b
    assert hash(a) == hash(b)
    assert a.truncate(5) == b.truncate(5)


def test_locate_examples():
    om = BoundaryPoint(P30.identity(), Word.parse("a1 a2", P30))
    assert str(locate(om, 3).base) == "a1 a2 a1"
    om2 = BoundaryPoint(Word.parse("a3", P30), Word.parse("a1 a2", P30))
    assert str(locate(om2, 1).base) == "a3"
    with pytest.raises(ValueError):
        locate(om, 0)


def test_locate_nesting():
    om = BoundaryPoint(Word.parse("a3", P30), Word.parse("a1 a2", P30))
    for m in range(1, 8):
        assert locate(om, m + 1).base.startswith(locate(om, m).base)


def test_periodic_extension():
    w = Word.parse("a1 a2", P30)
    pt = periodic_extension(w)
    assert pt.truncate(2) == w
    free = periodic_extension(Word.parse("a1", P11))
    assert str(free.cycle) == "b1"


def test_parse_point():
    pt = BoundaryPoint.parse("a3 | a1 a2", P30)
    assert pt.prefix == Word.parse("a3", P30)
    assert BoundaryPoint.parse(str(pt), P30) == pt
    with pytest.raises(ValueError):
        BoundaryPoint.parse("a3", P30)
