"""Concrete finite G-sets, equivariant maps, and pointwise pullbacks.

Everything is explicit: a GSet is an action table over point indices, and
pullbacks are computed on actual pairs.  The double-coset description of a
pullback of transitive sets is used downstream as a cross-check, never as
the implementation.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import GroupMismatch, GroupValidationError, TargetMismatch
from .groups import FiniteGroup, Subgroup
from .ring import BurnsideElement, get_ring


class GSet:
    """A finite left G-set: action[g, x] is the image of point x under g."""

    __slots__ = ("group", "size", "action", "_hash")

    def __init__(self, group: FiniteGroup, action, *, validate: bool = True):
        arr = np.ascontiguousarray(np.asarray(action, dtype=np.int32))
        if arr.ndim != 2 or arr.shape[0] != group.order:
            raise GroupValidationError("action table must have one row per group element")
        self.group = group
        self.size = int(arr.shape[1])
        if validate and self.size:
            if arr.min() < 0 or arr.max() >= self.size:
                raise GroupValidationError("action entries out of range")
            if not np.array_equal(arr[group.identity], np.arange(self.size)):
                raise GroupValidationError("identity must act trivially")
            left = arr[:, arr]          # [g, h, x] -> g.(h.x)
            right = arr[group.mul_table]  # [g, h, x] -> (gh).x
            if not np.array_equal(left, right):
                raise GroupValidationError("action is not compatible with the product")
        arr.setflags(write=False)
        self.action = arr
        self._hash = hash((id(group), arr.tobytes()))

    def act(self, g: int, x: int) -> int:
        return int(self.action[g, x])

    def points(self) -> range:
        return range(self.size)

    def orbits(self) -> list[tuple[int, ...]]:
        seen = np.zeros(self.size, dtype=bool)
        out = []
        for x in range(self.size):
            if seen[x]:
                continue
            orbit = np.unique(self.action[:, x])
            seen[orbit] = True
            out.append(tuple(int(v) for v in orbit))
        return out

    def orbit_of(self, x: int) -> tuple[int, ...]:
        return tuple(int(v) for v in np.unique(self.action[:, x]))

    def stabilizer(self, x: int) -> Subgroup:
        hits = np.nonzero(self.action[:, x] == x)[0]
        return Subgroup(self.group, tuple(int(v) for v in hits))

    def fixed_points(self, elems) -> tuple[int, ...]:
        ok = np.ones(self.size, dtype=bool)
        for h in elems:
            ok &= self.action[h] == np.arange(self.size)
        return tuple(int(v) for v in np.nonzero(ok)[0])

    def transversal(self, x: int) -> dict[int, int]:
        """Per orbit point p, one group element u with u.x = p (BFS, u_x = e)."""
        g = self.group
        out = {x: g.identity}
        frontier = [x]
        while frontier:
            p = frontier.pop(0)
            for s in g.elements():
                q = self.act(s, p)
                if q not in out:
                    out[q] = g.mul(s, out[p])
                    frontier.append(q)
        return out

    def __eq__(self, other):
        return (isinstance(other, GSet) and other.group is self.group
                and other.size == self.size
                and np.array_equal(other.action, self.action))

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"GSet({self.group.label}, {self.size} points)"


class GMap:
    """An equivariant map between G-sets over the same group."""

    __slots__ = ("source", "target", "mapping", "_hash")

    def __init__(self, source: GSet, target: GSet, mapping, *, validate: bool = True):
        if source.group is not target.group:
            raise GroupMismatch("map between G-sets of different groups")
        arr = np.ascontiguousarray(np.asarray(mapping, dtype=np.int32))
        if arr.shape != (source.size,):
            raise GroupValidationError("point map has wrong length")
        if validate and source.size:
            if source.size and (arr.min() < 0 or arr.max() >= target.size):
                raise GroupValidationError("point map out of range")
            # f(g.x) == g.f(x)
            if not np.array_equal(arr[source.action], target.action[:, arr]):
                raise GroupValidationError("map is not equivariant")
        arr.setflags(write=False)
        self.source = source
        self.target = target
        self.mapping = arr
        self._hash = hash((hash(source), hash(target), arr.tobytes()))

    def __call__(self, x: int) -> int:
        return int(self.mapping[x])

    def compose(self, earlier: "GMap") -> "GMap":
        if earlier.target != self.source:
            raise TargetMismatch("composition mismatch")
        return GMap(earlier.source, self.target, self.mapping[earlier.mapping],
                    validate=False)

    def __eq__(self, other):
        return (isinstance(other, GMap) and other.source == self.source
                and other.target == self.target
                and np.array_equal(other.mapping, self.mapping))

    def __hash__(self):
        return self._hash


def empty_gset(group: FiniteGroup) -> GSet:
    return GSet(group, np.zeros((group.order, 0), dtype=np.int32), validate=False)


def point_gset(group: FiniteGroup) -> GSet:
    return GSet(group, np.zeros((group.order, 1), dtype=np.int32), validate=False)


def from_subgroup(group: FiniteGroup, h: Subgroup) -> GSet:
    """The coset space G/H with cosets ordered by smallest member."""
    t = group.mul_table
    h_arr = np.asarray(h.elems, dtype=np.intp)
    coset_of = np.full(group.order, -1, dtype=np.int64)
    reps = []
    for g in group.elements():
        if coset_of[g] >= 0:
            continue
        members = t[np.full(h_arr.shape, g, dtype=np.intp), h_arr]
        coset_of[members] = len(reps)
        reps.append(g)
    action = coset_of[t[:, reps]]
    return GSet(group, action.astype(np.int32), validate=False)


def coset_representatives(group: FiniteGroup, h: Subgroup) -> list[int]:
    t = group.mul_table
    h_arr = np.asarray(h.elems, dtype=np.intp)
    taken = np.zeros(group.order, dtype=bool)
    reps = []
    for g in group.elements():
        if not taken[g]:
            reps.append(g)
            taken[t[np.full(h_arr.shape, g, dtype=np.intp), h_arr]] = True
    return reps


def disjoint_union(x: GSet, y: GSet) -> tuple[GSet, GMap, GMap]:
    """X | Y with the two canonical injections."""
    if x.group is not y.group:
        raise GroupMismatch("disjoint union over different groups")
    action = np.concatenate([x.action, y.action + x.size], axis=1)
    u = GSet(x.group, action, validate=False)
    inl = GMap(x, u, np.arange(x.size, dtype=np.int32), validate=False)
    inr = GMap(y, u, np.arange(y.size, dtype=np.int32) + x.size, validate=False)
    return u, inl, inr


def product(x: GSet, y: GSet) -> tuple[GSet, GMap, GMap]:
    """X x Y with the diagonal action and the two projections."""
    if x.group is not y.group:
        raise GroupMismatch("product over different groups")
    action = x.action[:, :, None] * y.size + y.action[:, None, :]
    u = GSet(x.group, action.reshape(x.group.order, x.size * y.size), validate=False)
    idx = np.arange(x.size * y.size)
    prx = GMap(u, x, (idx // y.size).astype(np.int32), validate=False)
    pry = GMap(u, y, (idx % y.size).astype(np.int32), validate=False)
    return u, prx, pry


def pullback(f: GMap, h: GMap) -> tuple[GSet, GMap, GMap]:
    """W = X x_Z Y for f: X -> Z, h: Y -> Z, with its two projections."""
    if f.target != h.target:
        raise TargetMismatch("pullback legs must share a target")
    x, y = f.source, h.source
    pairs = [(a, b) for a in range(x.size) for b in range(y.size)
             if f.mapping[a] == h.mapping[b]]
    index = {p: i for i, p in enumerate(pairs)}
    action = np.empty((x.group.order, len(pairs)), dtype=np.int32)
    for g in x.group.elements():
        ax, ay = x.action[g], y.action[g]
        for i, (a, b) in enumerate(pairs):
            action[g, i] = index[(int(ax[a]), int(ay[b]))]
    w = GSet(x.group, action, validate=False)
    px = GMap(w, x, np.array([a for a, _ in pairs] or [], dtype=np.int32), validate=False)
    py = GMap(w, y, np.array([b for _, b in pairs] or [], dtype=np.int32), validate=False)
    return w, px, py


def orbit_element(x: GSet) -> BurnsideElement:
    """Class of X in the Burnside ring, via stabilizers of orbit representatives."""
    ring = get_ring(x.group)
    coeffs: dict[int, Fraction] = {}
    for orbit in x.orbits():
        stab = x.stabilizer(orbit[0])
        cls = ring.lattice.class_index(stab.elems)
        coeffs[cls] = coeffs.get(cls, Fraction(0)) + 1
    return BurnsideElement(x.group, coeffs)


def gset_from_element(e: BurnsideElement) -> GSet:
    """A concrete G-set realizing an effective element."""
    ring = get_ring(e.group)
    out = empty_gset(e.group)
    for cls, mult in sorted(e.coeffs.items()):
        if mult < 0 or Fraction(mult).denominator != 1:
            raise GroupValidationError("only effective elements have a G-set model")
        piece = from_subgroup(e.group, ring.lattice.classes[cls])
        for _ in range(int(mult)):
            out, _, _ = disjoint_union(out, piece)
    return out
