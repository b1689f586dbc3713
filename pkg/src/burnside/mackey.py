"""Mackey functor instances and the endomorphisms induced by crossed G-sets.

Three instances are provided: the span (Burnside) functor, the fixed-point
module functor and the fixed-quotient module functor, the latter two for a
representation over an exact field (rationals or GF(p)).  A concrete
crossed G-set (X, w) acts on every instance through the composite
star(tau) . upperstar(pi) for the two maps X x Y -> Y, and the action laws
are exact matrix identities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .crossed import CrossedElement
from .errors import (
    CoefficientMismatch,
    GroupMismatch,
    GroupValidationError,
    NonFieldCoefficients,
)
from .groups import FiniteGroup, Subgroup, normalizer
from .gsets import (
    GMap,
    GSet,
    coset_representatives,
    disjoint_union,
    from_subgroup,
    product,
    pullback,
)
from .lattice import get_lattice
from .linalg import QQ, identity, mat_mul, solve_in_basis, nullspace, quotient_map

_FIELD_NAMES = ("Q", "F")


def _check_field(field) -> None:
    if not hasattr(field, "of") or not hasattr(field, "zero"):
        raise NonFieldCoefficients("coefficients must form a field (QQ or GF(p))")


class Representation:
    """A matrix representation of the group over an exact field."""

    def __init__(self, group: FiniteGroup, field, matrices):
        _check_field(field)
        self.group = group
        self.field = field
        mats = []
        for m in matrices:
            mats.append(tuple(tuple(field.of(x) for x in row) for row in m))
        if len(mats) != group.order:
            raise GroupValidationError("one matrix per group element required")
        self.matrices = tuple(mats)
        self.dim = len(mats[0]) if mats else 0
        ident = identity(self.dim, field)
        if [list(r) for r in mats[group.identity]] != ident:
            raise GroupValidationError("identity must map to the identity matrix")
        for g in group.elements():
            for h in group.elements():
                prod = mat_mul([list(r) for r in mats[g]],
                               [list(r) for r in mats[h]], field)
                if prod != [list(r) for r in mats[group.mul(g, h)]]:
                    raise GroupValidationError(f"not a representation at ({g},{h})")

    def mat(self, g: int) -> list[list]:
        return [list(r) for r in self.matrices[g]]


def trivial_representation(group: FiniteGroup, field=QQ) -> Representation:
    return Representation(group, field, [[[field.one]] for _ in group.elements()])


def regular_representation(group: FiniteGroup, field=QQ) -> Representation:
    n = group.order
    mats = []
    for g in group.elements():
        m = [[field.zero] * n for _ in range(n)]
        for x in group.elements():
            m[group.mul(g, x)][x] = field.one
        mats.append(m)
    return Representation(group, field, mats)


class MackeyFunctorInstance:
    """Shared caching surface for the three instances."""

    name = "abstract"

    def __init__(self, group: FiniteGroup, field):
        _check_field(field)
        self.group = group
        self.field = field
        self._data: dict[GSet, object] = {}
        self._star: dict[GMap, list[list]] = {}
        self._upper: dict[GMap, list[list]] = {}

    def dim(self, x: GSet) -> int:
        raise NotImplementedError

    def labels(self, x: GSet):
        raise NotImplementedError

    def star(self, f: GMap) -> list[list]:
        self._check_map(f)
        m = self._star.get(f)
        if m is None:
            m = self._star_matrix(f)
            self._star[f] = m
        return m

    def upperstar(self, f: GMap) -> list[list]:
        self._check_map(f)
        m = self._upper.get(f)
        if m is None:
            m = self._upper_matrix(f)
            self._upper[f] = m
        return m

    def _check_map(self, f: GMap) -> None:
        if f.source.group is not self.group:
            raise GroupMismatch("map over a different group")

    def _star_matrix(self, f: GMap) -> list[list]:
        raise NotImplementedError

    def _upper_matrix(self, f: GMap) -> list[list]:
        raise NotImplementedError


class BurnsideMackey(MackeyFunctorInstance):
    """The span functor: M(X) is free on spans (G/H -> X) up to isomorphism.

    A span is a pair (subgroup class H, point x fixed by the canonical
    representative), taken modulo the normalizer action; star is
    post-composition and upperstar decomposes a concrete pullback.
    """

    name = "burnside"

    def __init__(self, group: FiniteGroup, field=QQ):
        super().__init__(group, field)
        self.lattice = get_lattice(group)
        self._normalizers = [normalizer(group, rep).elems
                             for rep in self.lattice.classes]
        self._coset_sets: dict[int, tuple[GSet, list[int]]] = {}

    # basis: sorted pairs (class index, minimal point of the N(H)-orbit)
    def _basis(self, x: GSet) -> list[tuple[int, int]]:
        data = self._data.get(x)
        if data is None:
            pairs = []
            for c, rep in enumerate(self.lattice.classes):
                fixed = set(x.fixed_points(rep.elems))
                while fixed:
                    p = min(fixed)
                    orbit = {x.act(n, p) for n in self._normalizers[c]}
                    fixed -= orbit
                    pairs.append((c, p))
            data = sorted(pairs)
            self._data[x] = data
        return data

    def dim(self, x: GSet) -> int:
        return len(self._basis(x))

    def labels(self, x: GSet):
        return list(self._basis(x))

    def _canonical_pair(self, y: GSet, c: int, p: int) -> tuple[int, int]:
        return (c, min(y.act(n, p) for n in self._normalizers[c]))

    def _star_matrix(self, f: GMap) -> list[list]:
        src = self._basis(f.source)
        dst = self._basis(f.target)
        pos = {b: i for i, b in enumerate(dst)}
        out = [[self.field.zero] * len(src) for _ in range(len(dst))]
        one = self.field.one
        for j, (c, p) in enumerate(src):
            key = self._canonical_pair(f.target, c, f(p))
            out[pos[key]][j] = out[pos[key]][j] + one
        return out

    def _coset_gset(self, c: int) -> tuple[GSet, list[int]]:
        hit = self._coset_sets.get(c)
        if hit is None:
            rep = self.lattice.classes[c]
            hit = (from_subgroup(self.group, rep),
                   coset_representatives(self.group, rep))
            self._coset_sets[c] = hit
        return hit

    def _upper_matrix(self, f: GMap) -> list[list]:
        x, y = f.source, f.target
        src = self._basis(y)
        dst = self._basis(x)
        pos = {b: i for i, b in enumerate(dst)}
        out = [[self.field.zero] * len(src) for _ in range(len(dst))]
        one = self.field.one
        for j, (c, yp) in enumerate(src):
            cosets, reps = self._coset_gset(c)
            marker = GMap(cosets, y,
                          np.array([y.act(r, yp) for r in reps], dtype=np.int32),
                          validate=False)
            w, px, _ = pullback(f, marker)
            for orbit in w.orbits():
                stab = w.stabilizer(orbit[0])
                cls, aligners = self.lattice.canonicalize(stab.elems)
                xp = px(orbit[0])
                point = min(x.act(g, xp) for g in aligners)
                key = self._canonical_pair(x, cls, point)
                out[pos[key]][j] = out[pos[key]][j] + one
        return out


@dataclass
class _ModuleBlock:
    rep_point: int
    transversal: dict[int, int]
    basis: list[list]     # FP: d x k fixed-space basis; FQ: d x k lift
    proj: list[list] | None  # FQ only: k x d quotient map


class _ModuleMackey(MackeyFunctorInstance):
    """Shared block bookkeeping for the module functors."""

    def __init__(self, rep: Representation):
        super().__init__(rep.group, rep.field)
        self.rep = rep

    def _blocks(self, x: GSet) -> list[_ModuleBlock]:
        data = self._data.get(x)
        if data is None:
            data = [self._make_block(x, orbit) for orbit in x.orbits()]
            self._data[x] = data
        return data

    def _make_block(self, x: GSet, orbit) -> _ModuleBlock:
        raise NotImplementedError

    def _block_of(self, x: GSet) -> dict[int, int]:
        return {p: i for i, b in enumerate(self._blocks(x))
                for p in b.transversal}

    def dim(self, x: GSet) -> int:
        return sum(len(b.basis[0]) if b.basis else 0 for b in self._blocks(x))

    def labels(self, x: GSet):
        return [(i, j) for i, b in enumerate(self._blocks(x))
                for j in range(len(b.basis[0]) if b.basis else 0)]

    def _offsets(self, blocks) -> list[int]:
        offs = [0]
        for b in blocks:
            offs.append(offs[-1] + (len(b.basis[0]) if b.basis else 0))
        return offs

    def _stacked_fixed_equations(self, stab_elems) -> list[list]:
        d = self.rep.dim
        rows = []
        for s in stab_elems:
            m = self.rep.mat(s)
            for i in range(d):
                row = list(m[i])
                row[i] = row[i] - self.field.one
                rows.append(row)
        return rows


class FixedPointMackey(_ModuleMackey):
    """FP_V: products of fixed subspaces, transfer along fibers."""

    name = "fixed-point"

    def _make_block(self, x: GSet, orbit) -> _ModuleBlock:
        p = orbit[0]
        stab = x.stabilizer(p)
        eqs = self._stacked_fixed_equations(stab.elems)
        cols = nullspace(eqs, self.field)  # list of column vectors
        d = self.rep.dim
        basis = [[col[i] for col in cols] for i in range(d)]
        return _ModuleBlock(p, x.transversal(p), basis, None)

    def _star_matrix(self, f: GMap) -> list[list]:
        x, y = f.source, f.target
        xb, yb = self._blocks(x), self._blocks(y)
        block_of_x = self._block_of(x)
        xo, yo = self._offsets(xb), self._offsets(yb)
        out = [[self.field.zero] * xo[-1] for _ in range(yo[-1])]
        for jb, by in enumerate(yb):
            fiber = [p for p in x.points() if f(p) == by.rep_point]
            # sum the whole fiber before expressing in the target fixed basis:
            # single summands land only in the larger fixed space of G_x
            acc: dict[int, list[list]] = {}
            for p in fiber:
                ib = block_of_x[p]
                bx = xb[ib]
                if not bx.basis or not bx.basis[0]:
                    continue
                contrib = mat_mul(self.rep.mat(bx.transversal[p]), bx.basis, self.field)
                if ib in acc:
                    acc[ib] = [[a + b for a, b in zip(ra, rb)]
                               for ra, rb in zip(acc[ib], contrib)]
                else:
                    acc[ib] = contrib
            for ib, total in acc.items():
                coords = solve_in_basis(by.basis, total, self.field)
                for r, row in enumerate(coords):
                    for cidx, v in enumerate(row):
                        out[yo[jb] + r][xo[ib] + cidx] = (
                            out[yo[jb] + r][xo[ib] + cidx] + v)
        return out

    def _upper_matrix(self, f: GMap) -> list[list]:
        x, y = f.source, f.target
        xb, yb = self._blocks(x), self._blocks(y)
        block_of_y = self._block_of(y)
        xo, yo = self._offsets(xb), self._offsets(yb)
        out = [[self.field.zero] * yo[-1] for _ in range(xo[-1])]
        for ib, bx in enumerate(xb):
            if not bx.basis or not bx.basis[0]:
                continue
            q = f(bx.rep_point)
            jb = block_of_y[q]
            by = yb[jb]
            if not by.basis or not by.basis[0]:
                continue
            moved = mat_mul(self.rep.mat(by.transversal[q]), by.basis, self.field)
            coords = solve_in_basis(bx.basis, moved, self.field)
            for r, row in enumerate(coords):
                for cidx, v in enumerate(row):
                    out[xo[ib] + r][yo[jb] + cidx] = v
        return out


class FixedQuotientMackey(_ModuleMackey):
    """FQ_V: products of coinvariants; the coinvariant tensor model."""

    name = "fixed-quotient"

    def _make_block(self, x: GSet, orbit) -> _ModuleBlock:
        p = orbit[0]
        stab = x.stabilizer(p)
        d = self.rep.dim
        w_cols: list[list] = [[] for _ in range(d)]
        for s in stab.elems:
            m = self.rep.mat(s)
            for j in range(d):
                for i in range(d):
                    w_cols[i].append(m[i][j] - (self.field.one if i == j else self.field.zero))
        proj, lift = quotient_map(w_cols if any(w_cols) else [], d, self.field)
        return _ModuleBlock(p, x.transversal(p), lift, proj)

    def _star_matrix(self, f: GMap) -> list[list]:
        x, y = f.source, f.target
        xb, yb = self._blocks(x), self._blocks(y)
        block_of_y = self._block_of(y)
        xo, yo = self._offsets(xb), self._offsets(yb)
        out = [[self.field.zero] * xo[-1] for _ in range(yo[-1])]
        for ib, bx in enumerate(xb):
            if not bx.basis or not bx.basis[0]:
                continue
            q = f(bx.rep_point)
            jb = block_of_y[q]
            by = yb[jb]
            u = by.transversal[q]
            mat = mat_mul(by.proj,
                          mat_mul(self.rep.mat(self.group.inv(u)), bx.basis, self.field),
                          self.field)
            for r, row in enumerate(mat):
                for cidx, v in enumerate(row):
                    out[yo[jb] + r][xo[ib] + cidx] = (
                        out[yo[jb] + r][xo[ib] + cidx] + v)
        return out

    def _upper_matrix(self, f: GMap) -> list[list]:
        x, y = f.source, f.target
        xb, yb = self._blocks(x), self._blocks(y)
        block_of_x = self._block_of(x)
        xo, yo = self._offsets(xb), self._offsets(yb)
        out = [[self.field.zero] * yo[-1] for _ in range(xo[-1])]
        for jb, by in enumerate(yb):
            if not by.basis or not by.basis[0]:
                continue
            fiber = [p for p in x.points() if f(p) == by.rep_point]
            for p in fiber:
                ib = block_of_x[p]
                bx = xb[ib]
                u = bx.transversal[p]
                mat = mat_mul(bx.proj,
                              mat_mul(self.rep.mat(self.group.inv(u)), by.basis,
                                      self.field),
                              self.field)
                for r, row in enumerate(mat):
                    for cidx, v in enumerate(row):
                        out[xo[ib] + r][yo[jb] + cidx] = (
                            out[xo[ib] + r][yo[jb] + cidx] + v)
        return out


def burnside_mackey(group: FiniteGroup, field=QQ) -> BurnsideMackey:
    return BurnsideMackey(group, field)


def fixed_point_mackey(group: FiniteGroup, rep: Representation) -> FixedPointMackey:
    if rep.group is not group:
        raise GroupMismatch("representation over a different group")
    return FixedPointMackey(rep)


def fixed_quotient_mackey(group: FiniteGroup, rep: Representation) -> FixedQuotientMackey:
    if rep.group is not group:
        raise GroupMismatch("representation over a different group")
    return FixedQuotientMackey(rep)


# -- concrete crossed G-sets and the action ------------------------------------


class CrossedGSet:
    """A G-set with an equivariant marker map into the group (conjugation)."""

    __slots__ = ("gset", "markers")

    def __init__(self, gset: GSet, markers, *, validate: bool = True):
        markers = tuple(int(m) for m in markers)
        if len(markers) != gset.size:
            raise GroupValidationError("one marker per point required")
        if validate:
            g = gset.group
            for s in g.elements():
                for p in gset.points():
                    if markers[gset.act(s, p)] != g.conj(s, markers[p]):
                        raise GroupValidationError("marker map is not equivariant")
        self.gset = gset
        self.markers = markers

    @property
    def group(self) -> FiniteGroup:
        return self.gset.group


def crossed_unit(group: FiniteGroup) -> CrossedGSet:
    from .gsets import point_gset

    return CrossedGSet(point_gset(group), (group.identity,), validate=False)


def crossed_from_pair(group: FiniteGroup, h: Subgroup, a: int) -> CrossedGSet:
    """The transitive crossed G-set (G/H, gH -> g a g^-1)."""
    x = from_subgroup(group, h)
    reps = coset_representatives(group, h)
    markers = [group.conj(r, a) for r in reps]
    return CrossedGSet(x, markers)


def crossed_union(c1: CrossedGSet, c2: CrossedGSet) -> CrossedGSet:
    u, _, _ = disjoint_union(c1.gset, c2.gset)
    return CrossedGSet(u, c1.markers + c2.markers, validate=False)


def crossed_product(c1: CrossedGSet, c2: CrossedGSet) -> CrossedGSet:
    g = c1.group
    u, _, _ = product(c1.gset, c2.gset)
    markers = [g.mul(c1.markers[i], c2.markers[j])
               for i in range(c1.gset.size) for j in range(c2.gset.size)]
    return CrossedGSet(u, markers, validate=False)


def eta(c: CrossedGSet, m: MackeyFunctorInstance, y: GSet) -> list[list]:
    """The endomorphism star(tau) . upperstar(pi) of M(Y)."""
    if c.group is not m.group or y.group is not m.group:
        raise GroupMismatch("crossed set, functor and G-set must share a group")
    p, _, pry = product(c.gset, y)
    tau_map = np.empty(p.size, dtype=np.int32)
    for i in range(c.gset.size):
        for j in range(y.size):
            tau_map[i * y.size + j] = y.act(c.markers[i], j)
    tau = GMap(p, y, tau_map, validate=False)
    return mat_mul(m.star(tau), m.upperstar(pry), m.field, cols=m.dim(y))


def crossed_to_endomorphism(x: CrossedElement, m: MackeyFunctorInstance,
                            y: GSet) -> list[list]:
    """Linear extension of eta over the canonical basis pairs of x."""
    if x.group is not m.group:
        raise GroupMismatch("element over a different group")
    from .crossed import get_crossed_ring

    ring = get_crossed_ring(x.group)
    n = m.dim(y)
    out = [[m.field.zero] * n for _ in range(n)]
    for (cls, a), coeff in sorted(x.coeffs.items()):
        try:
            scalar = m.field.of(coeff)
        except (ZeroDivisionError, ValueError) as exc:
            raise CoefficientMismatch(
                f"coefficient {coeff} has no image in {m.field!r}") from exc
        concrete = crossed_from_pair(x.group, ring.lattice.classes[cls], a)
        mat = eta(concrete, m, y)
        for i in range(n):
            for j in range(n):
                out[i][j] = out[i][j] + scalar * mat[i][j]
    return out
