import random
from fractions import Fraction

import pytest

from burnside.errors import CapExceeded, GroupMismatch
from burnside.groups import Subgroup, builtin, trivial_group, whole_group
from burnside.ring import (
    BurnsideElement,
    MarkVector,
    fix_n,
    from_marks,
    get_ring,
    gluck_idempotent,
    idempotent_census_oracle,
    inflate,
    integral_idempotents,
    marks,
    multiply,
    table_of_marks,
)

import oracles


def rand_elem(ring, rng, lo=-3, hi=3, density=0.7):
    coeffs = {c: Fraction(rng.randint(lo, hi))
              for c in range(ring.class_count) if rng.random() < density}
    return ring.element(coeffs)


def test_tom_trivial_group():
    tom = table_of_marks(trivial_group())
    assert tom.rows == ((1,),)


def test_tom_s3_frozen():
    g = builtin("sym:3")
    tom = table_of_marks(g)
    assert tom.rows == ((6, 0, 0, 0), (3, 1, 0, 0), (2, 0, 2, 0), (1, 1, 1, 1))


def test_tom_cyclic4():
    g = builtin("cyclic:4")
    tom = table_of_marks(g)
    assert tom.rows == ((4, 0, 0), (2, 2, 0), (1, 1, 1))


@pytest.mark.parametrize("spec", ["sym:3", "dihedral:4", "alt:4", "quaternion:8"])
def test_tom_matches_fixed_point_oracle(spec):
    g = builtin(spec)
    ring = get_ring(g)
    tom = ring.table_of_marks
    lat = ring.lattice
    for k in range(lat.class_count):
        for h in range(lat.class_count):
            oracle = oracles.coset_fixed_points(g, lat.classes[k].elems,
                                                lat.classes[h].elems)
            assert tom.rows[k][h] == oracle, (k, h)


def test_tom_triangular_with_positive_diagonal():
    g = builtin("sym:4")
    ring = get_ring(g)
    tom = ring.table_of_marks
    n = ring.class_count
    for k in range(n):
        assert tom.rows[k][k] > 0
        for h in range(k + 1, n):
            assert tom.rows[k][h] == 0
        assert tom.rows[k][0] == g.order // ring.lattice.classes[k].order


def test_marks_of_unit_and_free_orbit():
    g = builtin("sym:4")
    ring = get_ring(g)
    n = ring.class_count
    assert marks(ring.one).as_list(n) == [Fraction(1)] * n
    free = marks(ring.basis(0)).as_list(n)
    assert free == [Fraction(24)] + [Fraction(0)] * (n - 1)


def test_from_marks_round_trip_s4():
    g = builtin("sym:4")
    ring = get_ring(g)
    rng = random.Random(12)
    for _ in range(100):
        x = rand_elem(ring, rng)
        assert from_marks(marks(x)) == x


def test_multiply_unit():
    g = builtin("sym:3")
    ring = get_ring(g)
    rng = random.Random(5)
    for _ in range(20):
        x = rand_elem(ring, rng)
        assert multiply(ring.one, x) == x


def test_multiply_s3_c2_squared():
    g = builtin("sym:3")
    ring = get_ring(g)
    c2 = next(c for c in range(ring.class_count)
              if ring.lattice.classes[c].order == 2)
    sq = multiply(ring.basis(c2), ring.basis(c2))
    assert sq == ring.basis(c2) + ring.basis(0)
    v = marks(ring.basis(c2)).as_list(4)
    assert v == [3, 1, 0, 0]
    assert marks(sq).as_list(4) == [9, 1, 0, 0]


def test_multiply_free_orbit_scaling():
    g = builtin("sym:3")
    ring = get_ring(g)
    c2 = next(c for c in range(ring.class_count)
              if ring.lattice.classes[c].order == 2)
    prod = multiply(ring.basis(0), ring.basis(c2))
    assert prod == ring.basis(0).scale(3)
    assert marks(prod)[0] == Fraction(36, 2)


@pytest.mark.parametrize("spec", ["cyclic:6", "sym:3", "dihedral:4",
                                  "quaternion:8", "alt:4", "sym:4"])
def test_ring_axioms_and_route_agreement(spec):
    g = builtin(spec)
    ring = get_ring(g)
    rng = random.Random(hash(spec) & 0xFFFF)
    for _ in range(25):
        x, y, z = (rand_elem(ring, rng) for _ in range(3))
        fast = ring.multiply(x, y, "marks")
        slow = ring.multiply(x, y, "cosets")
        assert fast == slow
        assert ring.multiply(x, y) == ring.multiply(y, x)
        assert ring.multiply(ring.multiply(x, y), z) == ring.multiply(x, ring.multiply(y, z))
        assert ring.multiply(x, y + z) == ring.multiply(x, y) + ring.multiply(x, z)
        assert marks(ring.multiply(x, y)) == marks(x).pointwise(marks(y))


def test_marks_injective():
    g = builtin("sym:4")
    ring = get_ring(g)
    rng = random.Random(77)
    for _ in range(50):
        x, y = rand_elem(ring, rng), rand_elem(ring, rng)
        if x != y:
            assert marks(x) != marks(y)


def test_gluck_trivial_class():
    g = builtin("sym:3")
    e = gluck_idempotent(g, 0)
    assert e == BurnsideElement(g, {0: Fraction(1, 6)})


def test_gluck_cyclic_p():
    g = builtin("cyclic:3")
    ring = get_ring(g)
    e = gluck_idempotent(g, 1)  # full group class
    assert e == ring.one + ring.basis(0).scale(Fraction(-1, 3))


@pytest.mark.parametrize("spec", ["cyclic:6", "sym:3", "dihedral:4", "alt:4",
                                  "sym:4", "alt:5"])
def test_gluck_ghost_basis(spec):
    g = builtin(spec)
    ring = get_ring(g)
    n = ring.class_count
    total = ring.zero
    for h in range(n):
        e = ring.gluck(h)
        v = marks(e)
        for u in range(n):
            assert v[u] == (1 if u == h else 0)
        assert multiply(e, e) == e
        total = total + e
    assert total == ring.one
    for h in range(n):
        for k in range(h + 1, n):
            assert multiply(ring.gluck(h), ring.gluck(k)).is_zero()


def test_integral_idempotents_soluble():
    for spec in ["cyclic:6", "sym:4"]:
        g = builtin(spec)
        idems = integral_idempotents(g)
        assert len(idems) == 1
        label, f = idems[0]
        assert label == 0
        assert f == get_ring(g).one


def test_integral_idempotents_a5():
    g = builtin("alt:5")
    ring = get_ring(g)
    idems = integral_idempotents(g)
    assert len(idems) == 2
    labels = [lab for lab, _ in idems]
    assert ring.lattice.classes[labels[0]].order == 1
    assert ring.lattice.classes[labels[1]].order == 60
    f = dict(idems)[labels[1]]
    # the displayed 7-term integral combination, keyed by subgroup order
    by_order = {ring.lattice.classes[c].order: v for c, v in f.coeffs.items()}
    assert by_order == {60: 1, 12: -1, 10: -1, 6: -1, 3: 1, 2: 2, 1: -1}
    assert f.is_integral()
    assert multiply(f, f) == f
    one = ring.one
    assert multiply(f, one - f).is_zero()
    assert sum((e for _, e in idems), ring.zero) == one


def test_census_counts():
    assert len(idempotent_census_oracle(builtin("sym:4"))) == 2
    assert len(idempotent_census_oracle(builtin("cyclic:6"))) == 2
    a5 = builtin("alt:5")
    census = idempotent_census_oracle(a5)
    assert len(census) == 4
    ring = get_ring(a5)
    idems = {str(sorted(e.coeffs.items())) for e in census}
    f = dict(integral_idempotents(a5))
    expected = {ring.zero, ring.one, f[max(f)], ring.one - f[max(f)]}
    assert idems == {str(sorted(e.coeffs.items())) for e in expected}


def test_census_cap():
    with pytest.raises(CapExceeded):
        idempotent_census_oracle(builtin("sym:4"), max_classes=5)


def test_census_members_are_idempotent():
    g = builtin("dihedral:4")
    for e in idempotent_census_oracle(g):
        assert multiply(e, e) == e
        assert e.is_integral()


def test_fix_whole_group():
    g = builtin("sym:3")
    ring = get_ring(g)
    q, proj, img = fix_n(ring.one, whole_group(g))
    assert q.order == 1
    assert img == get_ring(q).one


def test_fix_kills_free_orbit():
    g = builtin("sym:4")
    ring = get_ring(g)
    norm = [x for x in g.elements()
            if g.element_order(x) == 2
            and len({g.conj(y, x) for y in g.elements()}) == 3]
    v4 = Subgroup(g, tuple([g.identity] + norm))
    q, proj, img = fix_n(ring.basis(0), v4)
    assert img.is_zero()


def test_fix_is_ring_hom_and_inflation_section():
    g = builtin("sym:4")
    ring = get_ring(g)
    norm = [x for x in g.elements()
            if g.element_order(x) == 2
            and len({g.conj(y, x) for y in g.elements()}) == 3]
    v4 = Subgroup(g, tuple([g.identity] + norm))
    _, proj, _ = fix_n(ring.zero, v4)
    qring = get_ring(proj.target)
    rng = random.Random(3)
    for _ in range(50):
        x, y = rand_elem(ring, rng), rand_elem(ring, rng)
        fx = ring.fix_along(x, proj)
        fy = ring.fix_along(y, proj)
        assert ring.fix_along(multiply(x, y), proj) == multiply(fx, fy)
        assert ring.fix_along(x + y, proj) == fx + fy
    for _ in range(25):
        z = rand_elem(qring, rng)
        assert ring.fix_along(inflate(z, proj), proj) == z


def test_group_mismatch():
    x = get_ring(builtin("sym:3")).one
    y = get_ring(builtin("cyclic:6")).one
    with pytest.raises(GroupMismatch):
        multiply(x, y)


def test_element_json_shape_independent_scaling():
    g = builtin("sym:3")
    ring = get_ring(g)
    x = ring.basis(1).scale(Fraction(2, 3))
    assert (x + x) == ring.basis(1).scale(Fraction(4, 3))
    assert (x - x).is_zero()
