"""Quotient towers: a profinite group modelled by finitely many quotients.

A tower is a chain of finite groups G_1 <- G_2 <- ... <- G_d with surjections
downward; level data are Burnside (or crossed Burnside) elements and the
transition maps are the fixed-point maps along the kernels.  Families that
commute with every transition are the artifact's model of elements of the
limit ring at truncation depth d.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .crossed import CrossedElement, CrossedRing, get_crossed_ring
from .errors import (
    BadDivisorChain,
    CapExceeded,
    GroupMismatch,
    IncoherentMarkers,
    LevelOrder,
    SpecUnresolvable,
)
from .groups import FiniteGroup, Homomorphism, Subgroup, builtin, direct_product
from .ring import DEFAULT_CENSUS_CAP, BurnsideElement, BurnsideRing, get_ring

#: default bound on the order of any tower level
DEFAULT_TOWER_CAP = 300

#: bound on the compatibility product scan in the census
_COMBO_CAP = 200_000


@dataclass(frozen=True)
class QuotientTower:
    kind: str
    params: tuple
    levels: tuple[FiniteGroup, ...]
    maps: tuple[Homomorphism, ...]  # maps[i]: levels[i+1] -> levels[i]
    spec: str

    def __post_init__(self):
        for i, pi in enumerate(self.maps):
            if pi.source is not self.levels[i + 1] or pi.target is not self.levels[i]:
                raise GroupMismatch(f"tower map {i} does not match its levels")
            if not pi.is_surjective():
                raise GroupMismatch(f"tower map {i} is not surjective")

    @property
    def depth(self) -> int:
        return len(self.levels)

    def ring(self, level: int) -> BurnsideRing:
        g = self.levels[level]
        return get_ring(g, cap=max(o.order for o in self.levels))

    def crossed_ring(self, level: int) -> CrossedRing:
        g = self.levels[level]
        return get_crossed_ring(g, cap=max(o.order for o in self.levels))

    def projection(self, from_level: int, to_level: int) -> Homomorphism:
        """Composed surjection levels[from] -> levels[to], from >= to."""
        if to_level > from_level:
            raise LevelOrder("transitions only go down the tower")
        pi = None
        for i in range(from_level - 1, to_level - 1, -1):
            pi = self.maps[i] if pi is None else self.maps[i].compose(pi)
        if pi is None:  # from == to
            g = self.levels[from_level]
            pi = Homomorphism(g, g, tuple(range(g.order)))
        return pi


def tower_build(kind: str, params, depth: int | None = None,
                cap: int = DEFAULT_TOWER_CAP) -> QuotientTower:
    """Build one of the named towers.

    zp: params = prime p, levels Z/p .. Z/p^depth.
    zhat: levels Z/1! .. Z/depth!.
    a5xz: params = divisor chain (m_1 | m_2 | ...), levels A5 x Z/m_i.
    custom: params = (groups, maps).
    """
    if kind == "zp":
        p = int(params)
        if depth is None or depth < 1:
            raise SpecUnresolvable("zp tower needs a positive depth")
        orders = [p ** i for i in range(1, depth + 1)]
        _check_cap(orders, cap)
        levels = [builtin(f"cyclic:{n}") for n in orders]
        maps = [Homomorphism(levels[i + 1], levels[i],
                             tuple(x % orders[i] for x in range(orders[i + 1])))
                for i in range(depth - 1)]
        return QuotientTower("zp", (p,), tuple(levels), tuple(maps),
                             f"zp:p={p},depth={depth}")
    if kind == "zhat":
        if depth is None or depth < 1:
            raise SpecUnresolvable("zhat tower needs a positive depth")
        orders = [factorial(i) for i in range(1, depth + 1)]
        _check_cap(orders, cap)
        levels = [builtin(f"cyclic:{n}") for n in orders]
        maps = [Homomorphism(levels[i + 1], levels[i],
                             tuple(x % orders[i] for x in range(orders[i + 1])))
                for i in range(depth - 1)]
        return QuotientTower("zhat", (), tuple(levels), tuple(maps),
                             f"zhat:depth={depth}")
    if kind == "a5xz":
        chain = tuple(int(m) for m in params)
        if not chain or any(m < 1 for m in chain):
            raise BadDivisorChain("chain must be positive integers")
        for a, b in itertools.pairwise(chain):
            if b % a != 0:
                raise BadDivisorChain(f"{a} does not divide {b}")
        _check_cap([60 * m for m in chain], cap)
        a5 = builtin("alt:5")
        levels = [direct_product(a5, builtin(f"cyclic:{m}")) for m in chain]
        maps = []
        for i in range(len(chain) - 1):
            m_hi, m_lo = chain[i + 1], chain[i]
            table = tuple((x // m_hi) * m_lo + (x % m_hi) % m_lo
                          for x in range(60 * m_hi))
            maps.append(Homomorphism(levels[i + 1], levels[i], table))
        return QuotientTower("a5xz", chain, tuple(levels), tuple(maps),
                             "a5xz:chain=" + ",".join(str(m) for m in chain))
    if kind == "custom":
        groups, maps = params
        _check_cap([g.order for g in groups], cap)
        return QuotientTower("custom", (), tuple(groups), tuple(maps), "custom")
    raise SpecUnresolvable(f"unknown tower kind {kind!r}")


def _check_cap(orders, cap: int) -> None:
    big = max(orders)
    if big > cap:
        raise CapExceeded(big, cap, "tower level order")


# -- transitions and families ---------------------------------------------------


def transition(tower: QuotientTower, from_level: int, to_level: int, x):
    """Fix (plain) or crossed Fix (crossed) along the composed kernel."""
    if to_level > from_level:
        raise LevelOrder("transitions only go down the tower")
    if from_level == to_level:
        return x
    pi = tower.projection(from_level, to_level)
    if isinstance(x, CrossedElement):
        return tower.crossed_ring(from_level).fix_along(x, pi)
    return tower.ring(from_level).fix_along(x, pi)


@dataclass(frozen=True)
class CompatibleFamily:
    """Per-level elements, intended to commute with the transitions."""

    tower: QuotientTower
    flavor: str  # "plain" | "crossed"
    elements: tuple

    def __post_init__(self):
        if self.flavor not in ("plain", "crossed"):
            raise SpecUnresolvable(f"unknown family flavor {self.flavor!r}")
        if len(self.elements) != self.tower.depth:
            raise GroupMismatch("one element per tower level required")
        for i, e in enumerate(self.elements):
            if e.group is not self.tower.levels[i]:
                raise GroupMismatch(f"level {i} element lives over the wrong group")

    def __add__(self, other: "CompatibleFamily") -> "CompatibleFamily":
        self._match(other)
        return CompatibleFamily(self.tower, self.flavor,
                                tuple(a + b for a, b in zip(self.elements, other.elements)))

    def __mul__(self, other: "CompatibleFamily") -> "CompatibleFamily":
        self._match(other)
        if self.flavor == "plain":
            prods = tuple(self.tower.ring(i).multiply(a, b)
                          for i, (a, b) in enumerate(zip(self.elements, other.elements)))
        else:
            prods = tuple(self.tower.crossed_ring(i).multiply(a, b)
                          for i, (a, b) in enumerate(zip(self.elements, other.elements)))
        return CompatibleFamily(self.tower, self.flavor, prods)

    def _match(self, other: "CompatibleFamily") -> None:
        if other.tower is not self.tower or other.flavor != self.flavor:
            raise GroupMismatch("families over different towers or flavors")

    def __eq__(self, other):
        return (isinstance(other, CompatibleFamily) and other.tower is self.tower
                and other.flavor == self.flavor and other.elements == self.elements)

    def __hash__(self):
        return hash((id(self.tower), self.flavor, self.elements))


def is_compatible(family: CompatibleFamily):
    """(ok, lower level of the first failing transition from the top, or None)."""
    for i in range(family.tower.depth - 2, -1, -1):
        down = transition(family.tower, i + 1, i, family.elements[i + 1])
        if down != family.elements[i]:
            return False, i
    return True, None


# -- functorial subgroup specs ---------------------------------------------------


def resolve_subgroup_spec(tower: QuotientTower, level: int, hspec: str) -> Subgroup | None:
    """The subgroup named by hspec at the given level, or None if unresolvable."""
    g = tower.levels[level]
    if hspec == "full":
        return Subgroup(g, tuple(range(g.order)))
    if hspec.startswith("index:"):
        body = hspec[len("index:"):]
        if tower.kind == "zp" and body.startswith("p^"):
            index = tower.params[0] ** int(body[2:])
        elif tower.kind == "zp" and body == "p":
            index = tower.params[0]
        else:
            try:
                index = int(body)
            except ValueError:
                raise SpecUnresolvable(f"bad index spec {hspec!r}") from None
        if tower.kind not in ("zp", "zhat"):
            raise SpecUnresolvable("index specs resolve only on procyclic towers")
        if index < 1 or g.order % index != 0:
            return None
        return Subgroup(g, tuple(range(0, g.order, index)))
    if tower.kind == "a5xz":
        m = tower.params[level]
        if hspec == "A5xZ":
            return Subgroup(g, tuple(range(g.order)))
        if hspec == "1xZ":
            return Subgroup(g, tuple(range(m)))
        if hspec == "1x1":
            return Subgroup(g, (g.identity,))
        raise SpecUnresolvable(f"unknown a5xz subgroup spec {hspec!r}")
    raise SpecUnresolvable(f"cannot resolve {hspec!r} on a {tower.kind} tower")


def idempotent_family(tower: QuotientTower, hspec: str) -> CompatibleFamily:
    """The levelwise rational idempotent family for a functorial subgroup spec.

    Below the first level where the spec resolves the family is zero (the
    kernel is not yet contained in the subgroup), matching the global
    fixed-point picture.
    """
    subs = [resolve_subgroup_spec(tower, i, hspec) for i in range(tower.depth)]
    if all(s is None for s in subs):
        raise SpecUnresolvable(f"{hspec!r} resolves at no level")
    elements = []
    for i, s in enumerate(subs):
        ring = tower.ring(i)
        if s is None:
            elements.append(ring.zero)
        else:
            elements.append(ring.gluck(ring.lattice.class_index(s.elems)))
    return CompatibleFamily(tower, "plain", tuple(elements))


# -- census -----------------------------------------------------------------------


@dataclass(frozen=True)
class CensusReport:
    per_level_counts: tuple[int, ...]
    per_level_bruteforce: tuple[bool, ...]
    coherent: tuple[CompatibleFamily, ...]
    nontrivial_exists: bool


def prosoluble_census(tower: QuotientTower,
                      census_cap: int = DEFAULT_CENSUS_CAP) -> CensusReport:
    """Idempotent census per level plus the coherent-family scan.

    Levels with at most census_cap subgroup classes are scanned by brute
    force; larger levels use the Boolean algebra generated by the primitive
    integral idempotents (the two agree wherever both are computable, which
    the test suite asserts).
    """
    per_level: list[list[BurnsideElement]] = []
    brute: list[bool] = []
    for i in range(tower.depth):
        ring = tower.ring(i)
        if ring.class_count <= census_cap:
            per_level.append(ring.census(census_cap))
            brute.append(True)
        else:
            prims = [e for _, e in ring.integral_idempotents()]
            idems = []
            for rmask in range(1 << len(prims)):
                total = ring.zero
                for j, e in enumerate(prims):
                    if (rmask >> j) & 1:
                        total = total + e
                idems.append(total)
            # dedupe while keeping deterministic order
            seen = set()
            uniq = []
            for e in idems:
                key = tuple(sorted(e.coeffs.items()))
                if key not in seen:
                    seen.add(key)
                    uniq.append(e)
            per_level.append(uniq)
            brute.append(False)
    total = 1
    for lvl in per_level:
        total *= len(lvl)
    if total > _COMBO_CAP:
        raise CapExceeded(total, _COMBO_CAP, "census combination scan")
    coherent = []
    for combo in itertools.product(*per_level):
        fam = CompatibleFamily(tower, "plain", tuple(combo))
        ok, _ = is_compatible(fam)
        if ok:
            coherent.append(fam)
    nontrivial = any(
        any(e.coeffs for e in fam.elements)
        and any(e != tower.ring(i).one for i, e in enumerate(fam.elements))
        for fam in coherent)
    return CensusReport(tuple(len(lvl) for lvl in per_level), tuple(brute),
                        tuple(coherent), nontrivial)


# -- crossed marker recovery ---------------------------------------------------------


@dataclass(frozen=True)
class MarkerChain:
    """One surviving basis line of a crossed family, walked down the tower."""

    pair: tuple[int, int]
    levels: tuple[int, ...]
    subgroups: tuple[tuple[int, ...], ...]
    markers: tuple[int, ...]
    marker_cosets: tuple[tuple[int, ...], ...]  # preimages in the top group


def crossed_family_marker_recovery(tower: QuotientTower,
                                   family: CompatibleFamily) -> list[MarkerChain]:
    """Verify a crossed family levelwise and extract its marker-coset chains.

    Raises IncoherentMarkers at the first lower level whose element does not
    equal the crossed Fix image of the level above.  For each basis line of
    the top element, returns the chain of image subgroups and markers with
    the marker's preimage coset at the top level; the centralizing condition
    (image marker commutes with image subgroup) is asserted along the way.
    """
    if family.flavor != "crossed":
        raise SpecUnresolvable("marker recovery applies to crossed families")
    for i in range(tower.depth - 2, -1, -1):
        down = transition(tower, i + 1, i, family.elements[i + 1])
        if down != family.elements[i]:
            missing = set(down.coeffs.items()) ^ set(family.elements[i].coeffs.items())
            raise IncoherentMarkers(i, f"mismatching lines {sorted(missing)}")
    top = tower.depth - 1
    top_ring = tower.crossed_ring(top)
    top_group = tower.levels[top]
    chains = []
    for (cls, marker), _coeff in sorted(family.elements[top].coeffs.items()):
        h = top_ring.lattice.classes[cls]
        levels = []
        subgroups = []
        markers = []
        cosets = []
        for j in range(top, -1, -1):
            pi = tower.projection(top, j)
            if not set(pi.kernel().elems) <= set(h.elems):
                break
            img_h = pi.image_elems(h.elems)
            img_a = pi(marker)
            tg = tower.levels[j]
            for x in img_h:  # centralizing condition at every level
                if tg.mul(img_a, x) != tg.mul(x, img_a):
                    raise IncoherentMarkers(j, "image marker fails to centralize")
            levels.append(j)
            subgroups.append(img_h)
            markers.append(img_a)
            cosets.append(tuple(sorted(pi.preimage_elems((img_a,)))))
        chains.append(MarkerChain((cls, marker), tuple(levels), tuple(subgroups),
                                  tuple(markers), tuple(cosets)))
    return chains
