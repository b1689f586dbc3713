"""Subgroup lattices: one canonical representative per conjugacy class.

Enumeration is layered join closure: starting from the trivial subgroup,
every known class representative is joined with cyclic subgroups (taken up
to conjugation by the representative itself).  Every subgroup is a join of
cyclic subgroups, so the closure reaches all classes, including perfect
subgroups that plain normalizing-element extensions cannot produce.

The canonical representative of a class is the conjugate with the
lexicographically smallest sorted element tuple; classes are ordered by
(order, representative tuple).
"""

from __future__ import annotations

import weakref
from fractions import Fraction

from . import _kernels
from .errors import CapExceeded, NotContained
from .groups import FiniteGroup, Subgroup, conjugate_elems

#: default order cap for lattice-grade work
DEFAULT_LATTICE_CAP = 200


def _closure(group: FiniteGroup, gens) -> tuple[int, ...]:
    return _kernels.subset_closure(group.mul_table, list(gens), group.identity)


def _generating_set(group: FiniteGroup, elems: tuple[int, ...]) -> list[int]:
    """Small generating set of the subgroup with the given elements."""
    gens: list[int] = []
    have: frozenset[int] = frozenset((group.identity,))
    for x in elems:
        if x not in have:
            gens.append(x)
            have = frozenset(_closure(group, gens))
            if len(have) == len(elems):
                break
    return gens


def _conjugates(group: FiniteGroup, elems: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Distinct conjugates of the subgroup, sorted lexicographically."""
    seen = {conjugate_elems(group, elems, g) for g in group.elements()}
    return sorted(seen)


class SubgroupLattice:
    """Complete subgroup data of a finite group.

    classes: canonical Subgroup per conjugacy class, in (order, rep) order.
    all_subgroups: every subgroup, grouped by class in class order.
    """

    def __init__(self, group: FiniteGroup, class_tuples: list[tuple[int, ...]],
                 orbits: list[list[tuple[int, ...]]]):
        self.group = group
        order_key = lambda t: (len(t), t)
        perm = sorted(range(len(class_tuples)), key=lambda i: order_key(class_tuples[i]))
        self.classes = tuple(Subgroup(group, class_tuples[i]) for i in perm)
        all_subs: list[Subgroup] = []
        class_of: list[int] = []
        members: list[tuple[int, ...]] = []
        for new_idx, i in enumerate(perm):
            start = len(all_subs)
            for t in sorted(orbits[i]):
                all_subs.append(Subgroup(group, t))
                class_of.append(new_idx)
            members.append(tuple(range(start, len(all_subs))))
        self.all_subgroups = tuple(all_subs)
        self.class_of = tuple(class_of)
        self.class_members = tuple(members)
        self.normalizer_orders = tuple(
            group.order // len(members[c]) for c in range(len(self.classes)))
        self.is_normal = tuple(len(m) == 1 for m in members)
        self._full_index = {s.elems: i for i, s in enumerate(all_subs)}
        self._full_sets = [s.member_set() for s in all_subs]
        below: list[frozenset[int]] = []
        for i, big in enumerate(self._full_sets):
            nb = len(big)
            below.append(frozenset(
                j for j, small in enumerate(self._full_sets)
                if len(small) <= nb and nb % len(small) == 0 and small <= big))
        self._below = tuple(below)
        self._mobius_columns: dict[int, dict[int, int]] = {}
        self._aligners: dict[tuple[int, ...], tuple[tuple[int, ...], tuple[int, ...]]] = {}

    # -- lookups ---------------------------------------------------------

    @property
    def class_count(self) -> int:
        return len(self.classes)

    def rep_full_index(self, class_idx: int) -> int:
        return self.class_members[class_idx][0]

    def full_index(self, elems: tuple[int, ...]) -> int:
        try:
            return self._full_index[tuple(elems)]
        except KeyError:
            raise NotContained(f"not a recorded subgroup: {tuple(elems)}") from None

    def class_index(self, elems) -> int:
        """Class index of any subgroup given by its element tuple."""
        return self.class_of[self.full_index(tuple(sorted(elems)))]

    def below(self, full_idx: int) -> frozenset[int]:
        """Full indices of all subgroups contained in the given one."""
        return self._below[full_idx]

    def canonicalize(self, elems) -> tuple[int, tuple[int, ...]]:
        """(class index, aligners g with g S g^-1 = canonical representative)."""
        key = tuple(sorted(int(x) for x in elems))
        hit = self._aligners.get(key)
        if hit is None:
            g0 = self.group
            cls = self.class_index(key)
            target = self.classes[cls].elems
            aligners = tuple(g for g in g0.elements()
                             if conjugate_elems(g0, key, g) == target)
            hit = ((cls,), aligners)
            self._aligners[key] = hit
        return hit[0][0], hit[1]

    # -- Moebius ----------------------------------------------------------

    def mobius_column(self, h_full_idx: int) -> dict[int, int]:
        """mu(K, H) for every subgroup K <= H, keyed by full index of K."""
        col = self._mobius_columns.get(h_full_idx)
        if col is not None:
            return col
        interval = sorted(self._below[h_full_idx],
                          key=lambda j: -len(self._full_sets[j]))
        col = {h_full_idx: 1}
        for k in interval:
            if k == h_full_idx:
                continue
            kb = self._below  # containment via "k below l"
            acc = 0
            for l in interval:
                if l != k and k in kb[l]:
                    acc += col[l]
            col[k] = -acc
        self._mobius_columns[h_full_idx] = col
        return col

    def mobius(self, k: Subgroup, h: Subgroup) -> int:
        """Poset Moebius function mu(K, H) for actual containment K <= H."""
        ki = self.full_index(k.elems)
        hi = self.full_index(h.elems)
        if ki not in self._below[hi]:
            raise NotContained(f"K (order {k.order}) not contained in H (order {h.order})")
        return self.mobius_column(hi)[ki]

    # -- sanity -----------------------------------------------------------

    def class_size_identity_holds(self) -> bool:
        """Sum over classes of |G:N_G(H)| equals the total subgroup count."""
        total = sum(self.group.order // n for n in self.normalizer_orders)
        return total == len(self.all_subgroups)


def subgroup_lattice(group: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """Enumerate all subgroups of the group, organized by conjugacy class."""
    if group.order > cap:
        raise CapExceeded(group.order, cap, "group order for lattice work")
    cyc = sorted({_closure(group, (g,)) for g in group.elements()},
                 key=lambda t: (len(t), t))
    cyc_index = {t: i for i, t in enumerate(cyc)}

    class_tuples: list[tuple[int, ...]] = []
    orbits: list[list[tuple[int, ...]]] = []
    full_map: dict[tuple[int, ...], int] = {}
    queue: list[int] = []

    def register(elems: tuple[int, ...]) -> None:
        orbit = _conjugates(group, elems)
        idx = len(class_tuples)
        class_tuples.append(orbit[0])
        orbits.append(orbit)
        for t in orbit:
            full_map[t] = idx
        queue.append(idx)

    register((group.identity,))
    qi = 0
    while qi < len(queue):
        rep = class_tuples[queue[qi]]
        qi += 1
        gens_h = _generating_set(group, rep)
        # cyclic subgroups up to conjugation by the representative itself:
        # <H, gCg^-1> = g'<H, C>g'^-1 for g in H, so one join per H-orbit suffices
        seen_cyc = [False] * len(cyc)
        rep_set = frozenset(rep)
        for ci, c in enumerate(cyc):
            if seen_cyc[ci]:
                continue
            stack = [ci]
            seen_cyc[ci] = True
            while stack:
                cj = stack.pop()
                for g in gens_h:
                    ck = cyc_index[conjugate_elems(group, cyc[cj], g)]
                    if not seen_cyc[ck]:
                        seen_cyc[ck] = True
                        stack.append(ck)
            if set(c) <= rep_set:
                continue
            joined = _closure(group, rep + c)
            if joined not in full_map:
                register(joined)
    return SubgroupLattice(group, class_tuples, orbits)


_lattice_cache: "weakref.WeakKeyDictionary[FiniteGroup, SubgroupLattice]" = (
    weakref.WeakKeyDictionary())


def get_lattice(group: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP) -> SubgroupLattice:
    """Cached lattice per group instance."""
    lat = _lattice_cache.get(group)
    if lat is None:
        lat = subgroup_lattice(group, cap)
        _lattice_cache[group] = lat
    return lat


def mobius(lattice: SubgroupLattice, k: Subgroup, h: Subgroup) -> int:
    return lattice.mobius(k, h)


def gluck_coefficients(lattice: SubgroupLattice, class_idx: int) -> dict[int, Fraction]:
    """Coefficients of the rational idempotent supported on the given class.

    e_H = sum over all K <= H of mu(K,H)/[N_G(H):K] * [G/K], collected by
    the class of K.
    """
    h_full = lattice.rep_full_index(class_idx)
    n_order = lattice.normalizer_orders[class_idx]
    col = lattice.mobius_column(h_full)
    out: dict[int, Fraction] = {}
    for k_full, mu in col.items():
        if mu == 0:
            continue
        k_cls = lattice.class_of[k_full]
        k_order = lattice.all_subgroups[k_full].order
        out[k_cls] = out.get(k_cls, Fraction(0)) + Fraction(mu * k_order, n_order)
    return {c: v for c, v in out.items() if v != 0}
