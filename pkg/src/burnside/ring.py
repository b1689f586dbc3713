"""The Burnside ring of a finite group.

Elements are exact-rational combinations of transitive G-sets [G/H], one
basis line per conjugacy class of subgroups.  Multiplication has two
independent routes, the mark (ghost) route and the double-coset route, kept
side by side as the main correctness instrument.
"""

from __future__ import annotations

import math
import weakref
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import (
    CapExceeded,
    GroupMismatch,
    InternalCheckError,
    NotNormal,
)
from .groups import (
    FiniteGroup,
    Homomorphism,
    Subgroup,
    conjugate_elems,
    double_cosets,
    is_normal_subgroup,
    is_perfect,
    perfect_core,
    quotient_group,
)
from .lattice import DEFAULT_LATTICE_CAP, SubgroupLattice, get_lattice, gluck_coefficients

#: default bound on subgroup-class count for the brute-force idempotent census
DEFAULT_CENSUS_CAP = 16


class BurnsideElement:
    """A rational linear combination of subgroup classes of one group."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: dict[int, Fraction]):
        self.group = group
        self.coeffs = {int(c): Fraction(v) for c, v in coeffs.items() if v != 0}

    def __add__(self, other: "BurnsideElement") -> "BurnsideElement":
        self._check(other)
        out = dict(self.coeffs)
        for c, v in other.coeffs.items():
            out[c] = out.get(c, Fraction(0)) + v
        return BurnsideElement(self.group, out)

    def __sub__(self, other: "BurnsideElement") -> "BurnsideElement":
        return self + (-other)

    def __neg__(self) -> "BurnsideElement":
        return BurnsideElement(self.group, {c: -v for c, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, BurnsideElement):
            return get_ring(self.group).multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, scalar) -> "BurnsideElement":
        s = Fraction(scalar)
        return BurnsideElement(self.group, {c: s * v for c, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (isinstance(other, BurnsideElement) and other.group is self.group
                and other.coeffs == self.coeffs)

    def __hash__(self):
        return hash((id(self.group), tuple(sorted(self.coeffs.items()))))

    def _check(self, other: "BurnsideElement") -> None:
        if other.group is not self.group:
            raise GroupMismatch("elements live over different groups")

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in self.coeffs.values())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = [f"{v}*[G/c{c}]" for c, v in sorted(self.coeffs.items())]
        return " + ".join(parts)


class MarkVector:
    """Fixed-point counts of an element, one coordinate per subgroup class."""

    __slots__ = ("group", "marks")

    def __init__(self, group: FiniteGroup, marks: dict[int, Fraction]):
        self.group = group
        self.marks = {int(c): Fraction(v) for c, v in marks.items() if v != 0}

    def __getitem__(self, cls: int) -> Fraction:
        return self.marks.get(cls, Fraction(0))

    def __eq__(self, other):
        return (isinstance(other, MarkVector) and other.group is self.group
                and other.marks == self.marks)

    def __hash__(self):
        return hash((id(self.group), tuple(sorted(self.marks.items()))))

    def pointwise(self, other: "MarkVector") -> "MarkVector":
        if other.group is not self.group:
            raise GroupMismatch("mark vectors over different groups")
        out = {}
        for c, v in self.marks.items():
            w = other.marks.get(c)
            if w is not None:
                out[c] = v * w
        return MarkVector(self.group, out)

    def as_list(self, class_count: int) -> list[Fraction]:
        return [self.marks.get(c, Fraction(0)) for c in range(class_count)]

    def __repr__(self):
        return f"MarkVector({self.marks})"


class TableOfMarks:
    """Integer matrix of marks: rows are coset classes K, columns fixers H.

    Lower triangular under the (order, representative) class ordering, with
    diagonal |N_G(K)|/|K|.
    """

    __slots__ = ("group", "lattice", "rows")

    def __init__(self, group: FiniteGroup, lattice: SubgroupLattice, rows):
        self.group = group
        self.lattice = lattice
        self.rows = tuple(tuple(int(x) for x in r) for r in rows)

    def mark(self, coset_class: int, fixing_class: int) -> int:
        return self.rows[coset_class][fixing_class]


class BurnsideRing:
    """Computation context: lattice, table of marks, cached basis products."""

    def __init__(self, group: FiniteGroup, cap: int = DEFAULT_LATTICE_CAP):
        self.group = group
        self.lattice = get_lattice(group, cap)
        self._tom: TableOfMarks | None = None
        self._coset_products: dict[tuple[int, int], BurnsideElement] = {}
        self._gluck: dict[int, BurnsideElement] = {}
        self._inverse_data: tuple[np.ndarray, np.ndarray, int] | None = None

    # -- basic elements ----------------------------------------------------

    @property
    def class_count(self) -> int:
        return self.lattice.class_count

    def element(self, coeffs: dict[int, Fraction]) -> BurnsideElement:
        for c in coeffs:
            if not 0 <= int(c) < self.class_count:
                raise GroupMismatch(f"no subgroup class {c}")
        return BurnsideElement(self.group, coeffs)

    def basis(self, cls: int) -> BurnsideElement:
        return self.element({cls: Fraction(1)})

    @property
    def zero(self) -> BurnsideElement:
        return BurnsideElement(self.group, {})

    @property
    def one(self) -> BurnsideElement:
        return self.basis(self.class_count - 1)  # [G/G]: the full group is last

    # -- marks ---------------------------------------------------------------

    @property
    def table_of_marks(self) -> TableOfMarks:
        if self._tom is None:
            lat = self.lattice
            n = lat.class_count
            g = self.group
            masks = []
            for k in range(n):
                mask = np.zeros(g.order, dtype=bool)
                mask[list(lat.classes[k].elems)] = True
                masks.append(mask)
            rows = []
            for k in range(n):
                k_elems = lat.classes[k].elems
                row = []
                for h in range(n):
                    if lat.classes[h].order > lat.classes[k].order:
                        row.append(0)
                        continue
                    row.append(_kernels.mark_count(
                        g.mul_table, g.inv_table, lat.classes[h].elems,
                        masks[k], len(k_elems)))
                rows.append(row)
            tom = TableOfMarks(g, lat, rows)
            for k in range(n):  # triangularity sanity
                if tom.rows[k][k] * lat.classes[k].order != lat.normalizer_orders[k]:
                    raise InternalCheckError("table of marks diagonal mismatch")
            self._tom = tom
        return self._tom

    def marks(self, x: BurnsideElement) -> MarkVector:
        self._own(x)
        tom = self.table_of_marks
        out: dict[int, Fraction] = {}
        for k, coeff in x.coeffs.items():
            for h, m in enumerate(tom.rows[k]):
                if m:
                    out[h] = out.get(h, Fraction(0)) + coeff * m
        return MarkVector(self.group, out)

    def from_marks(self, v: MarkVector) -> BurnsideElement:
        if v.group is not self.group:
            raise GroupMismatch("mark vector over a different group")
        tom = self.table_of_marks
        n = self.class_count
        coeffs: dict[int, Fraction] = {}
        for k in range(n - 1, -1, -1):
            acc = v[k]
            for kk, c in coeffs.items():
                acc -= c * tom.rows[kk][k]
            if acc:
                coeffs[k] = acc / tom.rows[k][k]
        return BurnsideElement(self.group, coeffs)

    # -- multiplication ------------------------------------------------------

    def basis_product_cosets(self, i: int, j: int) -> BurnsideElement:
        """[G/H][G/K] expanded over double cosets (Mackey formula)."""
        if i > j:
            i, j = j, i
        cached = self._coset_products.get((i, j))
        if cached is not None:
            return cached
        lat = self.lattice
        h = lat.classes[i]
        k = lat.classes[j]
        out: dict[int, Fraction] = {}
        for u in double_cosets(self.group, h, k):
            ku = set(conjugate_elems(self.group, k.elems, u))
            inter = tuple(sorted(set(h.elems) & ku))
            cls = lat.class_index(inter)
            out[cls] = out.get(cls, Fraction(0)) + 1
        prod = BurnsideElement(self.group, out)
        self._coset_products[(i, j)] = prod
        return prod

    def multiply(self, x: BurnsideElement, y: BurnsideElement,
                 route: str = "marks") -> BurnsideElement:
        self._own(x)
        self._own(y)
        if route == "marks":
            return self.from_marks(self.marks(x).pointwise(self.marks(y)))
        if route == "cosets":
            out = self.zero
            for i, a in x.coeffs.items():
                for j, b in y.coeffs.items():
                    out = out + self.basis_product_cosets(i, j).scale(a * b)
            return out
        raise ValueError(f"unknown multiplication route {route!r}")

    def multiply_checked(self, x: BurnsideElement, y: BurnsideElement) -> BurnsideElement:
        """Both routes, asserted equal; used by the CLI --oracle path."""
        fast = self.multiply(x, y, "marks")
        slow = self.multiply(x, y, "cosets")
        if fast != slow:
            raise InternalCheckError("mark and double-coset products disagree")
        return fast

    # -- idempotents -----------------------------------------------------------

    def gluck(self, cls: int) -> BurnsideElement:
        """Rational idempotent whose marks are the indicator of the class."""
        e = self._gluck.get(cls)
        if e is None:
            e = BurnsideElement(self.group, gluck_coefficients(self.lattice, cls))
            self._gluck[cls] = e
        return e

    def all_gluck(self) -> list[BurnsideElement]:
        return [self.gluck(c) for c in range(self.class_count)]

    def perfect_class_indices(self) -> list[int]:
        return [c for c in range(self.class_count)
                if is_perfect(self.group, self.lattice.classes[c])]

    def core_class_of(self, cls: int) -> int:
        core = perfect_core(self.group, self.lattice.classes[cls])
        return self.lattice.class_index(core.elems)

    def integral_idempotents(self) -> list[tuple[int, BurnsideElement]]:
        """Primitive integral idempotents, labelled by perfect class (or class 0).

        The label is the class index of the common perfect core: class 0 (the
        trivial subgroup) collects all soluble classes, and each conjugacy
        class of perfect subgroups contributes one more idempotent.
        """
        groups: dict[int, BurnsideElement] = {}
        for c in range(self.class_count):
            label = self.core_class_of(c)
            cur = groups.get(label, self.zero)
            groups[label] = cur + self.gluck(c)
        return sorted(groups.items())

    # -- census ------------------------------------------------------------------

    def _mark_inverse(self):
        """(A, mods, bound): row-scaled integer transpose-inverse of the marks."""
        if self._inverse_data is None:
            tom = self.table_of_marks
            n = self.class_count
            # invert the lower-triangular integer matrix exactly
            inv = [[Fraction(0)] * n for _ in range(n)]
            for col in range(n):
                # solve c^T M = e_col^T by back substitution
                coeffs: dict[int, Fraction] = {}
                for k in range(n - 1, -1, -1):
                    acc = Fraction(1) if k == col else Fraction(0)
                    for kk, c in coeffs.items():
                        acc -= c * tom.rows[kk][k]
                    if acc:
                        coeffs[k] = acc / tom.rows[k][k]
                for k, c in coeffs.items():
                    inv[k][col] = c  # inv = M^-T: row k, col=mark coordinate
            mods = []
            a_rows = []
            for row in inv:
                d = 1
                for x in row:
                    d = d * x.denominator // math.gcd(d, x.denominator)
                mods.append(int(d))
                a_rows.append([int(x * d) for x in row])
            bound = max((sum(abs(x) for x in row) for row in a_rows), default=0)
            self._inverse_data = (a_rows, mods, bound)
        return self._inverse_data

    def census(self, max_classes: int = DEFAULT_CENSUS_CAP) -> list[BurnsideElement]:
        """All idempotents of the integral ring, by exhaustive ghost scan.

        Enumerates every 0/1 mark vector and keeps those whose preimage is
        integral.  Exact; exponential in the class count, hence the cap.
        """
        n = self.class_count
        if n > max_classes:
            raise CapExceeded(n, max_classes, "subgroup class count for census")
        a_rows, mods, bound = self._mark_inverse()
        if bound < 2 ** 62:
            hits = _kernels.census_scan(np.array(a_rows, dtype=np.int64),
                                        np.array(mods, dtype=np.int64))
        else:  # big integers: same Gray-code scan in pure Python
            hits = self._census_bigint(a_rows, mods)
        out = []
        for mask in hits:
            v = MarkVector(self.group,
                           {c: Fraction(1) for c in range(n) if (mask >> c) & 1})
            e = self.from_marks(v)
            if not e.is_integral():
                raise InternalCheckError("census scan accepted a non-integral mask")
            out.append(e)
        return out

    @staticmethod
    def _census_bigint(a_rows, mods) -> list[int]:
        k = len(a_rows)
        cols = [[a_rows[i][j] for i in range(k)] for j in range(k)]
        acc = [0] * k
        hits = [0] if all(x % m == 0 for x, m in zip(acc, mods)) else []
        v = 0
        for i in range(1, 1 << k):
            j = (i & -i).bit_length() - 1
            col = cols[j]
            if (v >> j) & 1:
                acc = [x - y for x, y in zip(acc, col)]
                v &= ~(1 << j)
            else:
                acc = [x + y for x, y in zip(acc, col)]
                v |= 1 << j
            if all(x % m == 0 for x, m in zip(acc, mods)):
                hits.append(v)
        hits.sort()
        return hits

    # -- Fix and inflation ---------------------------------------------------

    def fix_along(self, x: BurnsideElement, pi: Homomorphism) -> BurnsideElement:
        """Image of x under Fix for the kernel of the surjection pi."""
        self._own(x)
        if pi.source is not self.group:
            raise GroupMismatch("surjection does not start at this group")
        target_ring = get_ring(pi.target, cap=max(DEFAULT_LATTICE_CAP, pi.target.order))
        ker = set(pi.kernel().elems)
        out: dict[int, Fraction] = {}
        for c, coeff in x.coeffs.items():
            v = self.lattice.classes[c]
            if not ker <= set(v.elems):
                continue
            img = pi.image_elems(v.elems)
            cls = target_ring.lattice.class_index(img)
            out[cls] = out.get(cls, Fraction(0)) + coeff
        return BurnsideElement(pi.target, out)

    def inflate_along(self, x: BurnsideElement, pi: Homomorphism) -> BurnsideElement:
        """Section of fix_along: [Q/W] pulls back to [G/preimage(W)]."""
        if pi.source is not self.group:
            raise GroupMismatch("surjection does not start at this group")
        if x.group is not pi.target:
            raise GroupMismatch("element does not live over the quotient")
        target_ring = get_ring(pi.target, cap=max(DEFAULT_LATTICE_CAP, pi.target.order))
        out: dict[int, Fraction] = {}
        for c, coeff in x.coeffs.items():
            w = target_ring.lattice.classes[c]
            pre = tuple(sorted(pi.preimage_elems(w.elems)))
            cls = self.lattice.class_index(pre)
            out[cls] = out.get(cls, Fraction(0)) + coeff
        return BurnsideElement(self.group, out)

    def _own(self, x: BurnsideElement) -> None:
        if x.group is not self.group:
            raise GroupMismatch("element lives over a different group")


_ring_cache: "weakref.WeakKeyDictionary[FiniteGroup, BurnsideRing]" = (
    weakref.WeakKeyDictionary())


def get_ring(group: FiniteGroup, cap: int | None = None) -> BurnsideRing:
    ring = _ring_cache.get(group)
    if ring is None:
        ring = BurnsideRing(group, cap if cap is not None else DEFAULT_LATTICE_CAP)
        _ring_cache[group] = ring
    return ring


# -- spec-facing wrappers -------------------------------------------------------


def table_of_marks(group: FiniteGroup) -> TableOfMarks:
    return get_ring(group).table_of_marks


def marks(x: BurnsideElement) -> MarkVector:
    return get_ring(x.group).marks(x)


def from_marks(v: MarkVector) -> BurnsideElement:
    return get_ring(v.group).from_marks(v)


def multiply(x: BurnsideElement, y: BurnsideElement, route: str = "marks") -> BurnsideElement:
    return get_ring(x.group).multiply(x, y, route)


def gluck_idempotent(group: FiniteGroup, cls: int) -> BurnsideElement:
    return get_ring(group).gluck(cls)


def integral_idempotents(group: FiniteGroup) -> list[tuple[int, BurnsideElement]]:
    return get_ring(group).integral_idempotents()


def idempotent_census_oracle(group: FiniteGroup,
                             max_classes: int = DEFAULT_CENSUS_CAP) -> list[BurnsideElement]:
    return get_ring(group).census(max_classes)


def fix_n(x: BurnsideElement, n: Subgroup):
    """Fix along G -> G/N.  Returns (quotient, projection, element over quotient)."""
    g = x.group
    if not is_normal_subgroup(g, n):
        raise NotNormal("Fix requires a normal subgroup")
    q, proj = quotient_group(g, n)
    return q, proj, get_ring(g).fix_along(x, proj)


def inflate(x: BurnsideElement, pi: Homomorphism) -> BurnsideElement:
    return get_ring(pi.source).inflate_along(x, pi)
