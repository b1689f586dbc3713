import random
from fractions import Fraction

import pytest

from burnside.crossed import (
    CrossedElement,
    crossed_basis,
    crossed_fix_n,
    crossed_multiply,
    embed_burnside,
    get_crossed_ring,
    group_algebra_product,
    hom_count,
    iso_by_homcount,
    zeta,
)
from burnside.errors import NonIntegerCoefficients
from burnside.groups import builtin, quotient_group, subgroup_generated, trivial_group
from burnside.linalg import QQ, rank
from burnside.ring import get_ring

import oracles


def rand_crossed(ring, rng, lo=-2, hi=2, density=0.4, integer=True):
    coeffs = {}
    for b in ring.basis:
        if rng.random() < density:
            coeffs[b.key()] = Fraction(rng.randint(lo, hi))
    return CrossedElement(ring.group, coeffs)


def rand_effective(ring, rng, hi=2, density=0.4):
    coeffs = {b.key(): Fraction(rng.randint(1, hi))
              for b in ring.basis if rng.random() < density}
    return CrossedElement(ring.group, coeffs)


def test_basis_trivial_group():
    assert len(crossed_basis(trivial_group())) == 1


def test_basis_c2():
    g = builtin("cyclic:2")
    basis = crossed_basis(g)
    assert len(basis) == 4
    keys = {b.key() for b in basis}
    # classes: 0 = trivial subgroup, 1 = whole group; markers 0 = e, 1 = g
    assert keys == {(0, 0), (0, 1), (1, 0), (1, 1)}


def test_basis_s3():
    g = builtin("sym:3")
    basis = crossed_basis(g)
    assert len(basis) == 8
    per_class = {}
    for b in basis:
        per_class[b.class_index] = per_class.get(b.class_index, 0) + 1
    ring = get_crossed_ring(g)
    by_order = {ring.lattice.classes[c].order: n for c, n in per_class.items()}
    assert by_order == {1: 3, 2: 2, 3: 2, 6: 1}


@pytest.mark.parametrize("spec", ["cyclic:4", "sym:3", "dihedral:4", "quaternion:8"])
def test_rank_matches_pair_orbit_oracle(spec):
    g = builtin(spec)
    assert len(crossed_basis(g)) == len(oracles.crossed_pair_orbits(g))


def test_unit_law():
    g = builtin("sym:3")
    ring = get_crossed_ring(g)
    rng = random.Random(1)
    for _ in range(20):
        x = rand_crossed(ring, rng)
        assert crossed_multiply(ring.unit, x) == x
        assert crossed_multiply(x, ring.unit) == x


def test_c2_marker_square():
    g = builtin("cyclic:2")
    ring = get_crossed_ring(g)
    x = ring.pair_element((0,), 1)  # (trivial subgroup, marker g)
    sq = crossed_multiply(x, x)
    assert sq == ring.pair_element((0,), 0, Fraction(2))


@pytest.mark.parametrize("spec", ["cyclic:2", "cyclic:4", "sym:3",
                                  "quaternion:8", "dihedral:4"])
def test_commutative_associative(spec):
    g = builtin(spec)
    ring = get_crossed_ring(g)
    rng = random.Random(len(spec))
    for _ in range(25):
        x, y, z = (rand_crossed(ring, rng) for _ in range(3))
        assert ring.multiply(x, y) == ring.multiply(y, x)
        assert ring.multiply(ring.multiply(x, y), z) == ring.multiply(x, ring.multiply(y, z))
        assert ring.multiply(x, y + z) == ring.multiply(x, y) + ring.multiply(x, z)


@pytest.mark.parametrize("spec", ["sym:3", "dihedral:4"])
def test_representative_independence(spec):
    g = builtin(spec)
    ring = get_crossed_ring(g)
    rng = random.Random(9)
    for _ in range(20):
        x, y = rand_crossed(ring, rng), rand_crossed(ring, rng)
        assert ring.multiply_checked(x, y) == ring.multiply(x, y)


def test_embed_is_ring_monomorphism():
    g = builtin("sym:3")
    bring = get_ring(g)
    ring = get_crossed_ring(g)
    rng = random.Random(4)
    assert embed_burnside(bring.one) == ring.unit
    for _ in range(50):
        u = bring.element({c: Fraction(rng.randint(-3, 3))
                           for c in range(bring.class_count)})
        v = bring.element({c: Fraction(rng.randint(-3, 3))
                           for c in range(bring.class_count)})
        eu, ev = embed_burnside(u), embed_burnside(v)
        assert embed_burnside(u + v) == eu + ev
        assert crossed_multiply(eu, ev) == embed_burnside(bring.multiply(u, v))
        if not u.is_zero():
            assert not eu.is_zero()
        assert ring.forget_markers(eu) == u


def test_embed_c3_class():
    g = builtin("sym:3")
    bring = get_ring(g)
    c3 = next(c for c in range(bring.class_count)
              if bring.lattice.classes[c].order == 3)
    e = embed_burnside(bring.basis(c3))
    assert e.coeffs == {(c3, g.identity): Fraction(1)}


def test_hom_count_unit():
    g = builtin("sym:3")
    ring = get_crossed_ring(g)
    top = ring.lattice.class_count - 1
    assert ring.hom_count((top, g.identity), ring.unit) == 1


def test_hom_count_c2():
    g = builtin("cyclic:2")
    ring = get_crossed_ring(g)
    x = ring.pair_element((0,), 1)
    assert ring.hom_count((0, 1), x) == 2


def test_iso_by_homcount():
    g = builtin("sym:3")
    ring = get_crossed_ring(g)
    rng = random.Random(8)
    for _ in range(10):
        x = rand_effective(ring, rng)
        assert iso_by_homcount(x, x)
    for _ in range(20):
        x, y = rand_effective(ring, rng), rand_effective(ring, rng)
        assert iso_by_homcount(x, y) == (x == y)


def test_zeta_unit():
    g = builtin("sym:3")
    ring = get_crossed_ring(g)
    z = zeta(ring.unit)
    for u_cls in range(ring.lattice.class_count):
        assert z[u_cls] == {g.identity: 1}


@pytest.mark.parametrize("spec", ["sym:3", "quaternion:8"])
def test_zeta_lands_in_centre(spec):
    g = builtin(spec)
    ring = get_crossed_ring(g)
    rng = random.Random(11)
    for _ in range(15):
        x = rand_crossed(ring, rng)
        z = ring.zeta(x)
        for u_cls, comp in z.items():
            assert ring.zeta_component_is_central(u_cls, comp)


@pytest.mark.parametrize("spec", ["quaternion:8", "sym:3"])
def test_zeta_ring_homomorphism(spec):
    g = builtin(spec)
    ring = get_crossed_ring(g)
    rng = random.Random(13)
    for _ in range(50):
        x, y = rand_crossed(ring, rng), rand_crossed(ring, rng)
        zx, zy = ring.zeta(x), ring.zeta(y)
        zxy = ring.zeta(ring.multiply(x, y))
        for u_cls in zxy:
            prod = group_algebra_product(g, zx.get(u_cls, {}), zy.get(u_cls, {}))
            assert zxy[u_cls] == prod, u_cls


def test_zeta_full_rank_c4():
    g = builtin("cyclic:4")
    ring = get_crossed_ring(g)
    m = ring.zeta_matrix()
    assert len(m) == 12  # 3 classes x 4 markers each
    qm = [[Fraction(v) for v in row] for row in m]
    assert rank(qm, QQ) == len(m)


def test_zeta_rejects_non_integer():
    g = builtin("sym:3")
    ring = get_crossed_ring(g)
    x = ring.unit.scale(Fraction(1, 2))
    with pytest.raises(NonIntegerCoefficients):
        zeta(x)


def test_crossed_fix_trivial_kernel():
    g = builtin("cyclic:4")
    ring = get_crossed_ring(g)
    n = subgroup_generated(g, [g.identity])
    rng = random.Random(2)
    for _ in range(10):
        x = rand_crossed(ring, rng)
        q, proj, img = crossed_fix_n(x, n)
        assert q.order == 4
        assert sorted(img.coeffs.values()) == sorted(x.coeffs.values())


def test_crossed_fix_kills_missing_kernel():
    g = builtin("cyclic:4")
    ring = get_crossed_ring(g)
    two = next(x for x in g.elements() if g.element_order(x) == 2)
    n = subgroup_generated(g, [two])
    x = ring.pair_element((g.identity,), two)  # trivial subgroup misses N
    _, _, img = crossed_fix_n(x, n)
    assert img.is_zero()


def test_crossed_fix_composition():
    g = builtin("cyclic:4")
    ring = get_crossed_ring(g)
    two = next(x for x in g.elements() if g.element_order(x) == 2)
    n2 = subgroup_generated(g, [two])
    q1, proj1 = quotient_group(g, n2)             # C4 -> C2
    qring1 = get_crossed_ring(q1)
    full_q1 = subgroup_generated(q1, list(q1.elements()))
    q0, proj0 = quotient_group(q1, full_q1)       # C2 -> 1
    whole = subgroup_generated(g, list(g.elements()))
    q_direct, proj_direct = quotient_group(g, whole)
    rng = random.Random(21)
    for _ in range(20):
        x = rand_crossed(ring, rng)
        two_step = qring1.fix_along(ring.fix_along(x, proj1), proj0)
        one_step = ring.fix_along(x, proj_direct)
        assert sorted(two_step.coeffs.values()) == sorted(one_step.coeffs.values())
