"""The crossed Burnside ring of a finite group.

Basis lines are pairs (H, a) with a centralizing H, taken up to simultaneous
conjugation; the product follows the double-coset formula with conjugated
markers.  The ghost-style map zeta lands in the centres of the integral
group algebras of centralizers of subgroups, one component per subgroup
class, and is injective over torsion-free coefficients.
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import GroupMismatch, InternalCheckError, NonIntegerCoefficients
from .groups import (
    FiniteGroup,
    Homomorphism,
    Subgroup,
    centralizer,
    conjugate_elems,
    double_cosets,
    normalizer,
)
from .lattice import DEFAULT_LATTICE_CAP, get_lattice
from .ring import BurnsideElement, get_ring


@dataclass(frozen=True)
class CrossedBasisElement:
    """Canonical pair: class representative subgroup and minimal marker."""

    class_index: int
    marker: int
    subgroup: Subgroup

    def key(self) -> tuple[int, int]:
        return (self.class_index, self.marker)


class CrossedElement:
    """Rational combination of canonical (subgroup class, marker) pairs."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: dict[tuple[int, int], Fraction]):
        self.group = group
        self.coeffs = {(int(c), int(a)): Fraction(v)
                       for (c, a), v in coeffs.items() if v != 0}

    def __add__(self, other: "CrossedElement") -> "CrossedElement":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return CrossedElement(self.group, out)

    def __sub__(self, other: "CrossedElement") -> "CrossedElement":
        return self + (-other)

    def __neg__(self) -> "CrossedElement":
        return CrossedElement(self.group, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, CrossedElement):
            return get_crossed_ring(self.group).multiply(self, other)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, scalar) -> "CrossedElement":
        s = Fraction(scalar)
        return CrossedElement(self.group, {k: s * v for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, CrossedElement) and other.group is self.group
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((id(self.group), tuple(sorted(self.coeffs.items()))))

    def _check(self, other: "CrossedElement") -> None:
        if other.group is not self.group:
            raise GroupMismatch("crossed elements over different groups")

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coeffs.values())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"{v}*(c{c},a{a})" for (c, a), v in sorted(self.coeffs.items()))


class CrossedRing:
    """Computation context for the crossed Burnside ring of one group."""

    def __init__(self, group: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP):
        self.group = group
        self.lattice = get_lattice(group, cap)
        lat = self.lattice
        self._centralizers = [centralizer(group, lat.classes[c].elems)
                              for c in range(lat.class_count)]
        self._pair_cache: dict[tuple[tuple[int, int], tuple[int, int]], CrossedElement] = {}
        basis: list[CrossedBasisElement] = []
        for c in range(lat.class_count):
            rep = lat.classes[c]
            n_h = normalizer(group, rep)
            cent = self._centralizers[c].elems
            seen: set[int] = set()
            for a in cent:
                if a in seen:
                    continue
                orbit = {group.conj(g, a) for g in n_h.elems}
                seen |= orbit
                basis.append(CrossedBasisElement(c, min(orbit), rep))
        basis.sort(key=lambda b: b.key())
        self.basis = tuple(basis)
        self.basis_index = {b.key(): i for i, b in enumerate(basis)}

    # -- canonical form -----------------------------------------------------

    def canonical_pair(self, h_elems, a: int) -> tuple[int, int]:
        """Canonical (class, marker) of a pair under simultaneous conjugation."""
        g = self.group
        elems = tuple(sorted(int(x) for x in h_elems))
        for x in elems:
            if g.mul(a, x) != g.mul(x, a):
                raise InternalCheckError(f"marker {a} does not centralize subgroup")
        cls, aligners = self.lattice.canonicalize(elems)
        marker = min(g.conj(t, a) for t in aligners)
        return (cls, marker)

    def pair_element(self, h_elems, a: int, coeff=Fraction(1)) -> CrossedElement:
        return CrossedElement(self.group, {self.canonical_pair(h_elems, a): coeff})

    @property
    def unit(self) -> CrossedElement:
        top = self.lattice.class_count - 1
        return CrossedElement(self.group, {(top, self.group.identity): Fraction(1)})

    @property
    def zero(self) -> CrossedElement:
        return CrossedElement(self.group, {})

    @property
    def rank(self) -> int:
        return len(self.basis)

    # -- product --------------------------------------------------------------

    def _pair_product(self, p1: tuple[int, int], p2: tuple[int, int],
                      alt_reps: bool = False) -> CrossedElement:
        if not alt_reps:
            cached = self._pair_cache.get((p1, p2))
            if cached is not None:
                return cached
        g = self.group
        lat = self.lattice
        (c1, a1), (c2, a2) = p1, p2
        h = lat.classes[c1]
        k = lat.classes[c2]
        reps = double_cosets(g, h, k)
        if alt_reps:
            # replace each representative by the largest member of its coset
            alt = []
            for u in reps:
                members = {g.mul(g.mul(x, u), y) for x in h.elems for y in k.elems}
                alt.append(max(members))
            reps = alt
        out: dict[tuple[int, int], Fraction] = {}
        k_set_cache = {}
        for u in reps:
            ku = k_set_cache.get(u)
            if ku is None:
                ku = set(conjugate_elems(g, k.elems, u))
                k_set_cache[u] = ku
            inter = tuple(sorted(set(h.elems) & ku))
            m = g.mul(a1, g.conj(u, a2))
            key = self.canonical_pair(inter, m)
            out[key] = out.get(key, Fraction(0)) + 1
        prod = CrossedElement(g, out)
        if not alt_reps:
            self._pair_cache[(p1, p2)] = prod
        return prod

    def multiply(self, x: CrossedElement, y: CrossedElement,
                 alt_reps: bool = False) -> CrossedElement:
        self._own(x)
        self._own(y)
        out = self.zero
        for p1, a in x.coeffs.items():
            for p2, b in y.coeffs.items():
                out = out + self._pair_product(p1, p2, alt_reps).scale(a * b)
        return out

    def multiply_checked(self, x: CrossedElement, y: CrossedElement) -> CrossedElement:
        """Product recomputed with a second double-coset representative set."""
        first = self.multiply(x, y)
        second = self.multiply(x, y, alt_reps=True)
        if first != second:
            raise InternalCheckError("crossed product depends on coset representatives")
        return first

    # -- embedding of B(G) ------------------------------------------------------

    def embed(self, x: BurnsideElement) -> CrossedElement:
        if x.group is not self.group:
            raise GroupMismatch("element lives over a different group")
        e = self.group.identity
        return CrossedElement(self.group, {(c, e): v for c, v in x.coeffs.items()})

    def forget_markers(self, x: CrossedElement) -> BurnsideElement:
        """Underlying virtual G-set (markers dropped)."""
        out: dict[int, Fraction] = {}
        for (c, _a), v in x.coeffs.items():
            out[c] = out.get(c, Fraction(0)) + v
        return BurnsideElement(self.group, out)

    # -- hom counting (transitive into effective) --------------------------------

    def hom_count(self, t: tuple[int, int], x: CrossedElement) -> int:
        """Number of crossed maps from the transitive pair t into x.

        x must be effective: nonnegative integer coefficients.
        """
        self._own(x)
        g = self.group
        h_cls, marker = t
        h = self.lattice.classes[h_cls]
        h_set = set(h.elems)
        total = 0
        for (k_cls, b), mult in x.coeffs.items():
            if mult < 0 or mult.denominator != 1:
                raise NonIntegerCoefficients("hom counting needs an effective element")
            k = self.lattice.classes[k_cls]
            count = 0
            for s in self._coset_reps(k):
                if h_set <= set(conjugate_elems(g, k.elems, s)):
                    if g.conj(s, b) == marker:
                        count += 1
            total += int(mult) * count
        return total

    def _coset_reps(self, k: Subgroup) -> list[int]:
        g = self.group
        taken = np.zeros(g.order, dtype=bool)
        reps = []
        k_arr = np.asarray(k.elems, dtype=np.intp)
        for s in g.elements():
            if not taken[s]:
                reps.append(s)
                taken[g.mul_table[np.full(k_arr.shape, s, dtype=np.intp), k_arr]] = True
        return reps

    def iso_by_homcount(self, x: CrossedElement, y: CrossedElement) -> bool:
        """Lemma-style isomorphism test for effective elements."""
        return all(self.hom_count(b.key(), x) == self.hom_count(b.key(), y)
                   for b in self.basis)

    # -- zeta ---------------------------------------------------------------------

    def zeta(self, x: CrossedElement) -> dict[int, dict[int, int]]:
        """Per subgroup class U: the image of x in Z(Z C_G(U)).

        The U-component is the sum of w(z) over the U-fixed points z of the
        underlying crossed G-set, a central element of the group algebra of
        C_G(U), returned as a sparse integer vector over element indices.
        """
        self._own(x)
        if not x.is_integral():
            raise NonIntegerCoefficients("zeta requires integer coefficients")
        g = self.group
        lat = self.lattice
        out: dict[int, dict[int, int]] = {}
        for u_cls in range(lat.class_count):
            u_elems = lat.classes[u_cls].elems
            comp: dict[int, int] = {}
            for (h_cls, a), coeff in x.coeffs.items():
                h = lat.classes[h_cls]
                if h.order % len(u_elems) != 0:  # U can't embed in any conjugate
                    continue
                for s in self._coset_reps(h):
                    hs = set(conjugate_elems(g, h.elems, s))
                    if all(u in hs for u in u_elems):
                        key = g.conj(s, a)
                        comp[key] = comp.get(key, 0) + int(coeff)
            out[u_cls] = {k: v for k, v in comp.items() if v != 0}
        return out

    def zeta_component_is_central(self, u_cls: int, comp: dict[int, int]) -> bool:
        g = self.group
        cent = self._centralizers[u_cls].elems
        for c in cent:
            moved = {g.conj(c, k): v for k, v in comp.items()}
            if moved != comp:
                return False
        return True

    def zeta_matrix(self) -> list[list[int]]:
        """Integer matrix of zeta on the basis; full row rank <=> injective."""
        offsets = []
        total = 0
        for c in range(self.lattice.class_count):
            offsets.append(total)
            total += self._centralizers[c].order
        col_of = [{e: offsets[c] + i for i, e in enumerate(self._centralizers[c].elems)}
                  for c in range(self.lattice.class_count)]
        rows = []
        for b in self.basis:
            x = CrossedElement(self.group, {b.key(): Fraction(1)})
            z = self.zeta(x)
            row = [0] * total
            for u_cls, comp in z.items():
                for e, v in comp.items():
                    row[col_of[u_cls][e]] = v
            rows.append(row)
        return rows

    # -- Fix ------------------------------------------------------------------------

    def fix_along(self, x: CrossedElement, pi: Homomorphism) -> CrossedElement:
        """Crossed Fix: kill pairs whose subgroup misses ker(pi), push the rest."""
        self._own(x)
        if pi.source is not self.group:
            raise GroupMismatch("surjection does not start at this group")
        target = get_crossed_ring(pi.target,
                                  cap=max(DEFAULT_LATTICE_CAP, pi.target.order))
        ker = set(pi.kernel().elems)
        out = target.zero
        for (h_cls, a), coeff in x.coeffs.items():
            h = self.lattice.classes[h_cls]
            if not ker <= set(h.elems):
                continue
            img = pi.image_elems(h.elems)
            out = out + target.pair_element(img, pi(a), coeff)
        return out

    def _own(self, x: CrossedElement) -> None:
        if x.group is not self.group:
            raise GroupMismatch("element lives over a different group")


def group_algebra_product(group: FiniteGroup, f: dict[int, int],
                          g: dict[int, int]) -> dict[int, int]:
    """Convolution product of sparse integral group-algebra elements."""
    out: dict[int, int] = {}
    for a, x in f.items():
        for b, y in g.items():
            k = group.mul(a, b)
            out[k] = out.get(k, 0) + x * y
    return {k: v for k, v in out.items() if v != 0}


_crossed_cache: "weakref.WeakKeyDictionary[FiniteGroup, CrossedRing]" = (
    weakref.WeakKeyDictionary())


def get_crossed_ring(group: FiniteGroup, cap: int | None = None) -> CrossedRing:
    ring = _crossed_cache.get(group)
    if ring is None:
        ring = CrossedRing(group, cap if cap is not None else DEFAULT_LATTICE_CAP)
        _crossed_cache[group] = ring
    return ring


# -- spec-facing wrappers -----------------------------------------------------------


def crossed_basis(group: FiniteGroup) -> tuple[CrossedBasisElement, ...]:
    return get_crossed_ring(group).basis


def crossed_multiply(x: CrossedElement, y: CrossedElement) -> CrossedElement:
    return get_crossed_ring(x.group).multiply(x, y)


def embed_burnside(x: BurnsideElement) -> CrossedElement:
    return get_crossed_ring(x.group).embed(x)


def hom_count(t, x: CrossedElement) -> int:
    ring = get_crossed_ring(x.group)
    key = t.key() if isinstance(t, CrossedBasisElement) else tuple(t)
    return ring.hom_count(key, x)


def iso_by_homcount(x: CrossedElement, y: CrossedElement) -> bool:
    return get_crossed_ring(x.group).iso_by_homcount(x, y)


def zeta(x: CrossedElement) -> dict[int, dict[int, int]]:
    return get_crossed_ring(x.group).zeta(x)


def crossed_fix_n(x: CrossedElement, n: Subgroup):
    """Crossed Fix along G -> G/N.  Returns (quotient, projection, element)."""
    from .groups import quotient_group

    q, proj = quotient_group(x.group, n)
    return q, proj, get_crossed_ring(x.group).fix_along(x, proj)
