import random
from fractions import Fraction

import pytest

from burnside.crossed import CrossedElement
from burnside.errors import (
    BadDivisorChain,
    CapExceeded,
    IncoherentMarkers,
    LevelOrder,
    SpecUnresolvable,
)
from burnside.ring import BurnsideElement
from burnside.towers import (
    CompatibleFamily,
    crossed_family_marker_recovery,
    idempotent_family,
    is_compatible,
    prosoluble_census,
    resolve_subgroup_spec,
    tower_build,
    transition,
)


def rand_elem(ring, rng, lo=-2, hi=2):
    return ring.element({c: Fraction(rng.randint(lo, hi))
                         for c in range(ring.class_count) if rng.random() < 0.6})


@pytest.fixture(scope="module")
def zp2():
    return tower_build("zp", 2, depth=4)


@pytest.fixture(scope="module")
def a5xz():
    return tower_build("a5xz", (1, 2, 4))


def test_tower_orders(zp2):
    assert [g.order for g in zp2.levels] == [2, 4, 8, 16]
    zhat = tower_build("zhat", None, depth=4)
    assert [g.order for g in zhat.levels] == [1, 2, 6, 24]


def test_a5xz_orders(a5xz):
    assert [g.order for g in a5xz.levels] == [60, 120, 240]


def test_tower_errors():
    with pytest.raises(BadDivisorChain):
        tower_build("a5xz", (2, 3))
    with pytest.raises(CapExceeded):
        tower_build("zhat", None, depth=6)
    with pytest.raises(SpecUnresolvable):
        tower_build("nope", None, depth=2)


def test_transition_identity_and_order(zp2):
    ring = zp2.ring(2)
    rng = random.Random(0)
    x = rand_elem(ring, rng)
    assert transition(zp2, 2, 2, x) == x
    with pytest.raises(LevelOrder):
        transition(zp2, 1, 2, x)


def test_transition_kills_small_classes(zp2):
    ring = zp2.ring(1)  # Z/4
    img = transition(zp2, 1, 0, ring.basis(0))  # free orbit dies
    assert img.is_zero()
    img1 = transition(zp2, 1, 0, ring.one)
    assert img1 == zp2.ring(0).one


def test_transition_functorial(zp2):
    top = zp2.depth - 1
    ring = zp2.ring(top)
    rng = random.Random(3)
    for _ in range(20):
        x = rand_elem(ring, rng)
        assert transition(zp2, top, 0, x) == transition(
            zp2, 1, 0, transition(zp2, top, 1, x))


def test_transition_is_ring_homomorphism(zp2):
    ring = zp2.ring(2)
    rng = random.Random(4)
    for _ in range(20):
        x, y = rand_elem(ring, rng), rand_elem(ring, rng)
        down = transition(zp2, 2, 1, ring.multiply(x, y))
        assert down == zp2.ring(1).multiply(
            transition(zp2, 2, 1, x), transition(zp2, 2, 1, y))


def test_constant_one_family_compatible(zp2):
    fam = CompatibleFamily(zp2, "plain",
                           tuple(zp2.ring(i).one for i in range(zp2.depth)))
    ok, bad = is_compatible(fam)
    assert ok and bad is None


def test_family_ring_closure(zp2):
    f1 = idempotent_family(zp2, "index:p^1")
    f2 = idempotent_family(zp2, "index:p^2")
    for fam in (f1 + f2, f1 * f2):
        ok, _ = is_compatible(fam)
        assert ok


def test_corrupted_family_detected(zp2):
    fam = idempotent_family(zp2, "index:p^1")
    bad_elems = list(fam.elements)
    bad_elems[1] = bad_elems[1] + zp2.ring(1).basis(0)
    bad = CompatibleFamily(zp2, "plain", tuple(bad_elems))
    ok, level = is_compatible(bad)
    assert not ok and level == 1


def test_zp_closed_form(zp2):
    p = 2
    for n in (0, 1, 2):
        fam = idempotent_family(zp2, f"index:p^{n}")
        ok, _ = is_compatible(fam)
        assert ok
        for m in range(n + 1, zp2.depth + 1):  # level index m-1, group Z/p^m
            ring = zp2.ring(m - 1)
            by_order = {ring.lattice.classes[c].order: v
                        for c, v in fam.elements[m - 1].coeffs.items()}
            want = {p ** (m - n): Fraction(1, p ** n),
                    p ** (m - n - 1): Fraction(-1, p ** (n + 1))}
            assert by_order == want, (n, m)
        if n >= 1:
            ring = zp2.ring(n - 1)  # group Z/p^n: single-term idempotent
            assert fam.elements[n - 1] == ring.basis(0).scale(Fraction(1, p ** n))
        for lvl in range(n - 1):
            assert fam.elements[lvl].is_zero()


def test_zhat_full_family_squarefree_support():
    tower = tower_build("zhat", None, depth=4)
    fam = idempotent_family(tower, "full")
    ok, _ = is_compatible(fam)
    assert ok
    ring = tower.ring(3)  # Z/24

    def squarefree(n):
        k = 2
        while k * k <= n:
            if n % (k * k) == 0:
                return False
            k += 1
        return True

    support_orders = {ring.lattice.classes[c].order for c in fam.elements[3].coeffs}
    expected = {o for o in (1, 2, 3, 4, 6, 8, 12, 24) if squarefree(24 // o)}
    assert support_orders == expected


def test_depth_one_tower_reduces_to_gluck():
    tower = tower_build("zp", 3, depth=1)
    fam = idempotent_family(tower, "index:p^1")
    ring = tower.ring(0)
    assert fam.elements[0] == ring.gluck(ring.lattice.class_index((0,)))


def test_spec_unresolvable():
    tower = tower_build("zp", 2, depth=2)
    with pytest.raises(SpecUnresolvable):
        idempotent_family(tower, "index:7")  # divides no level order
    a5 = tower_build("a5xz", (1, 2))
    with pytest.raises(SpecUnresolvable):
        idempotent_family(a5, "A5x1")


def test_census_zp(zp2):
    report = prosoluble_census(zp2)
    assert report.per_level_counts == (2, 2, 2, 2)
    assert len(report.coherent) == 2
    assert not report.nontrivial_exists


def test_census_zhat():
    tower = tower_build("zhat", None, depth=3)
    report = prosoluble_census(tower)
    assert report.per_level_counts == (2, 2, 2)
    assert not report.nontrivial_exists


def test_census_a5xz(a5xz):
    report = prosoluble_census(a5xz)
    assert report.per_level_counts == (4, 4, 4)
    assert len(report.coherent) == 4
    assert report.nontrivial_exists
    # the nontrivial families are levelwise the inflated integral idempotent
    f_families = [fam for fam in report.coherent
                  if not all(e.is_zero() for e in fam.elements)
                  and not all(e == a5xz.ring(i).one for i, e in enumerate(fam.elements))]
    assert len(f_families) == 2
    ring0 = a5xz.ring(0)
    f_a5 = dict(ring0.integral_idempotents())
    nontrivial_label = max(f_a5)
    assert any(fam.elements[0] == f_a5[nontrivial_label] for fam in f_families)


def test_a5xz_idempotent_families(a5xz):
    for spec in ("A5xZ", "1xZ"):
        fam = idempotent_family(a5xz, spec)
        ok, _ = is_compatible(fam)
        assert ok, spec


def test_crossed_family_and_marker_recovery(a5xz):
    top = a5xz.depth - 1
    cring = a5xz.crossed_ring(top)
    g = a5xz.levels[top]
    # marker = central element (identity of A5, generator of Z/4)
    z = 1
    x_top = cring.pair_element(tuple(range(g.order)), z)
    elems = [x_top]
    for i in range(top - 1, -1, -1):
        elems.insert(0, transition(a5xz, i + 1, i, elems[0]))
    fam = CompatibleFamily(a5xz, "crossed", tuple(elems))
    chains = crossed_family_marker_recovery(a5xz, fam)
    assert len(chains) == 1
    chain = chains[0]
    assert chain.levels == (2, 1, 0)
    assert chain.markers[0] == z
    # nested marker cosets: each level down is a coarser coset
    assert set(chain.marker_cosets[0]) <= set(chain.marker_cosets[1])
    assert set(chain.marker_cosets[1]) <= set(chain.marker_cosets[2])
    assert len(chain.marker_cosets[0]) == 1
    assert len(chain.marker_cosets[1]) == 2
    assert len(chain.marker_cosets[2]) == 4


def test_plain_as_crossed_identity_markers(a5xz):
    from burnside.crossed import embed_burnside

    fam_plain = idempotent_family(a5xz, "A5xZ")
    elems = tuple(embed_burnside(e) for e in fam_plain.elements)
    fam = CompatibleFamily(a5xz, "crossed", elems)
    chains = crossed_family_marker_recovery(a5xz, fam)
    for chain in chains:
        assert all(m == a5xz.levels[lvl].identity
                   for lvl, m in zip(chain.levels, chain.markers))


def test_injected_marker_mismatch(a5xz):
    top = a5xz.depth - 1
    cring = a5xz.crossed_ring(top)
    g = a5xz.levels[top]
    x_top = cring.pair_element(tuple(range(g.order)), 1)
    elems = [x_top]
    for i in range(top - 1, -1, -1):
        elems.insert(0, transition(a5xz, i + 1, i, elems[0]))
    # corrupt the middle level: swap the central marker for the identity
    mid_ring = a5xz.crossed_ring(1)
    g1 = a5xz.levels[1]
    elems[1] = mid_ring.pair_element(tuple(range(g1.order)), g1.identity)
    fam = CompatibleFamily(a5xz, "crossed", tuple(elems))
    with pytest.raises(IncoherentMarkers) as exc:
        crossed_family_marker_recovery(a5xz, fam)
    assert exc.value.level == 1


def test_crossed_fix_functoriality_on_tower(a5xz):
    top = a5xz.depth - 1
    cring = a5xz.crossed_ring(top)
    rng = random.Random(17)
    keys = [b.key() for b in cring.basis]
    for _ in range(10):
        coeffs = {rng.choice(keys): Fraction(rng.randint(-2, 2)) for _ in range(4)}
        x = CrossedElement(a5xz.levels[top], coeffs)
        assert transition(a5xz, top, 0, x) == transition(
            a5xz, 1, 0, transition(a5xz, top, 1, x))
