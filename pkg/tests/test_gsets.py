import random
from fractions import Fraction

import numpy as np
import pytest

from burnside.errors import GroupValidationError, TargetMismatch
from burnside.gsets import (
    GMap,
    GSet,
    disjoint_union,
    empty_gset,
    from_subgroup,
    gset_from_element,
    orbit_element,
    point_gset,
    product,
    pullback,
)
from burnside.groups import builtin, subgroup_generated, whole_group
from burnside.ring import get_ring, multiply


def inclusion_projection(g, h_sub, l_sub):
    """G/H -> G/L for H <= L, as a GMap."""
    x = from_subgroup(g, h_sub)
    z = from_subgroup(g, l_sub)
    from burnside.gsets import coset_representatives

    reps = coset_representatives(g, h_sub)
    zreps = coset_representatives(g, l_sub)
    coset_of = {}
    for i, r in enumerate(zreps):
        for s in l_sub.elems:
            coset_of[g.mul(r, s)] = i
    return GMap(x, z, np.array([coset_of[r] for r in reps], dtype=np.int32))


def double_coset_decomposition_inside(g, l_sub, h_sub, k_sub):
    """Oracle: orbit types of the pullback, via double cosets H\\L/K."""
    ring = get_ring(g)
    remaining = set(l_sub.elems)
    out = {}
    while remaining:
        u = min(remaining)
        dc = {g.mul(g.mul(a, u), b) for a in h_sub.elems for b in k_sub.elems}
        remaining -= dc
        ku = {g.conj(u, x) for x in k_sub.elems}
        inter = tuple(sorted(set(h_sub.elems) & ku))
        cls = ring.lattice.class_index(inter)
        out[cls] = out.get(cls, 0) + 1
    return {c: Fraction(v) for c, v in out.items()}


def test_from_subgroup_basics():
    g = builtin("sym:3")
    h = subgroup_generated(g, [next(x for x in g.elements() if g.element_order(x) == 2)])
    x = from_subgroup(g, h)
    assert x.size == 3
    assert len(x.orbits()) == 1
    assert set(x.stabilizer(0).elems) == set(h.elems)


def test_action_validation():
    g = builtin("cyclic:2")
    GSet(g, [[0, 1], [0, 1]])  # trivial action is fine
    with pytest.raises(GroupValidationError):
        GSet(g, [[1, 0], [0, 1]])  # identity must act trivially
    g4 = builtin("cyclic:4")
    with pytest.raises(GroupValidationError):
        # g acts as a swap but g^2 also claims to swap: not an action
        GSet(g4, [[0, 1], [1, 0], [1, 0], [0, 1]])


def test_orbits_and_fixed_points():
    g = builtin("sym:3")
    lat = get_ring(g).lattice
    c3 = next(s for s in lat.classes if s.order == 3)
    x = from_subgroup(g, c3)
    u, _, _ = disjoint_union(x, point_gset(g))
    assert len(u.orbits()) == 2
    assert u.fixed_points(c3.elems) == (0, 1, 2)
    assert u.fixed_points(range(g.order)) == (2,)


def test_product_diagonal():
    g = builtin("cyclic:4")
    x = from_subgroup(g, whole_group(g))
    y = from_subgroup(g, subgroup_generated(g, [g.identity]))
    p, prx, pry = product(x, y)
    assert p.size == 4
    assert len(p.orbits()) == 1


def test_pullback_over_point_is_product():
    g = builtin("sym:3")
    lat = get_ring(g).lattice
    c2 = next(s for s in lat.classes if s.order == 2)
    c3 = next(s for s in lat.classes if s.order == 3)
    f = inclusion_projection(g, c2, whole_group(g))
    h = inclusion_projection(g, c3, whole_group(g))
    w, _, _ = pullback(f, h)
    assert w.size == 6
    assert orbit_element(w) == multiply(orbit_element(f.source),
                                        orbit_element(h.source))


def test_pullback_s3_two_orbits():
    g = builtin("sym:3")
    lat = get_ring(g).lattice
    c2 = next(s for s in lat.classes if s.order == 2)
    f = inclusion_projection(g, c2, whole_group(g))
    w, _, _ = pullback(f, f)
    decomp = orbit_element(w)
    ring = get_ring(g)
    c2_idx = ring.lattice.class_index(c2.elems)
    assert decomp == ring.basis(c2_idx) + ring.basis(0)
    assert len(w.orbits()) == 2


def test_pullback_of_identity_is_diagonal():
    g = builtin("sym:3")
    lat = get_ring(g).lattice
    c2 = next(s for s in lat.classes if s.order == 2)
    x = from_subgroup(g, c2)
    ident = GMap(x, x, np.arange(x.size, dtype=np.int32))
    w, px, _ = pullback(ident, ident)
    assert w.size == x.size
    assert orbit_element(w) == orbit_element(x)


@pytest.mark.parametrize("spec", ["sym:3", "dihedral:4", "alt:4", "sym:4"])
def test_pullback_matches_double_coset_formula(spec):
    g = builtin(spec)
    ring = get_ring(g)
    lat = ring.lattice
    rng = random.Random(len(spec) * 17)
    full = list(range(lat.class_count))
    for _ in range(20):
        l_cls = rng.choice(full)
        l_sub = lat.classes[l_cls]
        sub_classes = [lat.all_subgroups[i] for i in lat.below(lat.rep_full_index(l_cls))]
        h_sub = rng.choice(sub_classes)
        k_sub = rng.choice(sub_classes)
        f = inclusion_projection(g, h_sub, l_sub)
        h_map = inclusion_projection(g, k_sub, l_sub)
        w, _, _ = pullback(f, h_map)
        got = orbit_element(w).coeffs
        want = double_coset_decomposition_inside(g, l_sub, h_sub, k_sub)
        assert got == want


def test_gmap_target_mismatch():
    g = builtin("sym:3")
    x = point_gset(g)
    y = empty_gset(g)
    ident = GMap(x, x, np.array([0], dtype=np.int32))
    other = GMap(y, y, np.array([], dtype=np.int32))
    with pytest.raises(TargetMismatch):
        pullback(ident, other)


def test_gset_from_element_round_trip():
    g = builtin("dihedral:4")
    ring = get_ring(g)
    e = ring.basis(0) + ring.basis(2).scale(2)
    x = gset_from_element(e)
    assert orbit_element(x) == e
