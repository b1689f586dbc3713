"""Explicit finite groups over element indices 0..n-1.

A FiniteGroup is a validated Cayley table; subgroups are sorted index
tuples attached to their parent.  Everything downstream (lattices, rings,
towers) works purely on these indices, so element ordering is part of each
constructor's contract and is deterministic per family.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import (
    CapExceeded,
    GroupValidationError,
    NoIdentity,
    NoInverse,
    NotAssociative,
    NotASubgroup,
    NotNormal,
    ParseError,
)

#: default closure cap for element-only work (permutation closures)
DEFAULT_ELEMENT_CAP = 10000
#: orders up to this bound get an exhaustive associativity check
EXHAUSTIVE_ASSOC_BOUND = 200
#: sample count for the randomized associativity check above the bound
ASSOC_SAMPLES = 20000


class FiniteGroup:
    """A finite group given by its Cayley table.

    Immutable after construction.  ``mul_table[a, b]`` is the index of the
    product a*b; ``identity`` and ``inv_table`` are derived and validated.
    """

    __slots__ = ("order", "label", "identity", "_mul", "_inv", "__weakref__")

    def __init__(self, table: np.ndarray, label: str, *, _validated: bool = False):
        table = np.ascontiguousarray(np.asarray(table, dtype=np.int32))
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise GroupValidationError("Cayley table must be square")
        n = int(table.shape[0])
        if n == 0:
            raise GroupValidationError("empty Cayley table")
        if table.min() < 0 or table.max() >= n:
            raise GroupValidationError("Cayley table entries out of range")
        self.order = n
        self.label = label
        if _validated:
            identity = _find_identity(table)
        else:
            identity = _validate_table(table)
        self.identity = identity
        inv = np.full(n, -1, dtype=np.int32)
        for g in range(n):
            hits = np.nonzero(table[g] == identity)[0]
            if hits.size == 0:
                raise NoInverse(g)
            inv[g] = hits[0]
        table.setflags(write=False)
        inv.setflags(write=False)
        self._mul = table
        self._inv = inv

    # -- element arithmetic -------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return int(self._mul[a, b])

    def inv(self, a: int) -> int:
        return int(self._inv[a])

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return int(self._mul[self._mul[g, x], self._inv[g]])

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a^-1 b^-1 a b."""
        t = self._mul
        return int(t[t[t[self._inv[a], self._inv[b]], a], b])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        r = self.identity
        while k:
            if k & 1:
                r = self.mul(r, g)
            g = self.mul(g, g)
            k >>= 1
        return r

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul(x, g)
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    @property
    def mul_table(self) -> np.ndarray:
        return self._mul

    @property
    def inv_table(self) -> np.ndarray:
        return self._inv

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self._mul, self._mul.T))

    def __repr__(self) -> str:
        return f"FiniteGroup({self.label}, order={self.order})"


def _find_identity(table: np.ndarray) -> int:
    n = table.shape[0]
    idx = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], idx) and np.array_equal(table[:, e], idx):
            return e
    raise NoIdentity()


def _validate_table(table: np.ndarray) -> int:
    """Check the group axioms; returns the identity index."""
    n = table.shape[0]
    identity = _find_identity(table)
    # inverses
    for g in range(n):
        row = np.nonzero(table[g] == identity)[0]
        if row.size == 0:
            raise NoInverse(g)
        h = int(row[0])
        if table[h, g] != identity:
            raise NoInverse(g)
    # associativity: (ab)c == a(bc)
    if n <= EXHAUSTIVE_ASSOC_BOUND:
        left = table[table]          # [a,b,c] -> (ab)c
        right = table[:, table]      # [a,b,c] -> a(bc)
        if not np.array_equal(left, right):
            bad = np.argwhere(left != right)[0]
            raise NotAssociative(int(bad[0]), int(bad[1]), int(bad[2]))
    else:
        rng = np.random.default_rng(0)
        trip = rng.integers(0, n, size=(ASSOC_SAMPLES, 3))
        a, b, c = trip[:, 0], trip[:, 1], trip[:, 2]
        bad = np.nonzero(table[table[a, b], c] != table[a, table[b, c]])[0]
        if bad.size:
            i = int(bad[0])
            raise NotAssociative(int(a[i]), int(b[i]), int(c[i]))
    return identity


# -- constructors -----------------------------------------------------------


def group_from_cayley(table, label: str = "custom") -> FiniteGroup:
    """Validated group from a square index matrix."""
    return FiniteGroup(np.asarray(table), label)


def group_from_permutations(degree: int, generators: Sequence[Sequence[int]],
                            cap: int = DEFAULT_ELEMENT_CAP,
                            label: str | None = None) -> FiniteGroup:
    """Closure of permutation generators, elements indexed in BFS order."""
    gens = []
    for g in generators:
        p = tuple(int(x) for x in g)
        if sorted(p) != list(range(degree)):
            raise GroupValidationError(f"not a permutation of 0..{degree - 1}: {p}")
        gens.append(p)
    elems = _kernels.perm_closure(degree, gens, cap)
    if elems is None:
        raise CapExceeded(cap + 1, cap, "closure size")
    table = _kernels.mul_table_from_perms(elems)
    return FiniteGroup(table, label or f"perm(deg={degree})", _validated=True)


def _cyclic(n: int) -> FiniteGroup:
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(table, f"cyclic:{n}", _validated=True)


def _dihedral(n: int) -> FiniteGroup:
    # index = j*n + i for r^i s^j;  (i1,j1)*(i2,j2) = (i1 + (-1)^j1 i2, j1+j2)
    m = 2 * n
    table = np.empty((m, m), dtype=np.int32)
    for j1 in range(2):
        for i1 in range(n):
            a = j1 * n + i1
            for j2 in range(2):
                for i2 in range(n):
                    b = j2 * n + i2
                    i = (i1 + (i2 if j1 == 0 else -i2)) % n
                    table[a, b] = ((j1 + j2) % 2) * n + i
    return FiniteGroup(table, f"dihedral:{n}", _validated=True)


def _sym(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    table = _kernels.mul_table_from_perms(perms)
    return FiniteGroup(table, f"sym:{n}", _validated=True)


def _perm_sign(p) -> int:
    seen = [False] * len(p)
    sign = 1
    for i in range(len(p)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = p[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _alt(n: int) -> FiniteGroup:
    perms = sorted(p for p in itertools.permutations(range(n)) if _perm_sign(p) == 1)
    table = _kernels.mul_table_from_perms(perms)
    return FiniteGroup(table, f"alt:{n}", _validated=True)


def _quaternion8() -> FiniteGroup:
    # elements [1, i, j, k, -1, -i, -j, -k]; index = basis + 4*sign
    basis_mul = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }
    table = np.empty((8, 8), dtype=np.int32)
    for a in range(8):
        ba, sa = a % 4, a // 4
        for b in range(8):
            bb, sb = b % 4, b // 4
            bc, sc = basis_mul[(ba, bb)]
            table[a, b] = bc + 4 * ((sa + sb + sc) % 2)
    return FiniteGroup(table, "quaternion:8", _validated=False)


def direct_product(a: FiniteGroup, b: FiniteGroup, label: str | None = None) -> FiniteGroup:
    """Direct product with (x, y) encoded as x*|B| + y."""
    nb = b.order
    ta, tb = a.mul_table, b.mul_table
    xa = np.repeat(np.arange(a.order), nb)
    xb = np.tile(np.arange(nb), a.order)
    table = ta[np.ix_(xa, xa)] * nb + tb[np.ix_(xb, xb)]
    return FiniteGroup(table.astype(np.int32),
                       label or f"product:{a.label}×{b.label}", _validated=True)


def trivial_group() -> FiniteGroup:
    return FiniteGroup(np.zeros((1, 1), dtype=np.int32), "cyclic:1", _validated=True)


_BUILTIN_PERM_BOUND = 6


def builtin(spec: str) -> FiniteGroup:
    """Constructor for the named families.

    Accepted: cyclic:n, dihedral:n, sym:n and alt:n (n<=6), quaternion:8,
    product:A×B (also with plain 'x' as the separator).
    """
    spec = spec.strip()
    if spec.startswith("product:"):
        body = spec[len("product:"):]
        sep = "×" if "×" in body else "x"
        parts = body.split(sep)
        if len(parts) < 2:
            raise ParseError(f"product spec needs two factors: {spec!r}")
        groups = [builtin(p) for p in parts]
        out = groups[0]
        for g in groups[1:]:
            out = direct_product(out, g)
        return out
    if ":" not in spec:
        raise ParseError(f"bad group spec {spec!r}")
    family, _, arg = spec.partition(":")
    try:
        n = int(arg)
    except ValueError as exc:
        raise ParseError(f"bad group spec {spec!r}") from exc
    if n < 1:
        raise ParseError(f"group parameter must be positive: {spec!r}")
    if family == "cyclic":
        return _cyclic(n)
    if family == "dihedral":
        return _dihedral(n)
    if family == "sym":
        if n > _BUILTIN_PERM_BOUND:
            raise CapExceeded(n, _BUILTIN_PERM_BOUND, "sym degree")
        return _sym(n)
    if family == "alt":
        if n > _BUILTIN_PERM_BOUND:
            raise CapExceeded(n, _BUILTIN_PERM_BOUND, "alt degree")
        return _alt(n) if n >= 3 else trivial_group()
    if family == "quaternion":
        if n != 8:
            raise ParseError("only quaternion:8 is supported")
        return _quaternion8()
    raise ParseError(f"unknown group family {family!r}")


# -- subgroups ----------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A subgroup as a strictly sorted tuple of element indices."""

    group: FiniteGroup
    elems: tuple[int, ...]

    def __post_init__(self):
        g = self.group
        elems = tuple(sorted(int(x) for x in set(self.elems)))
        object.__setattr__(self, "elems", elems)
        if not elems:
            raise NotASubgroup("subgroup cannot be empty")
        member = frozenset(elems)
        if g.identity not in member:
            raise NotASubgroup("subgroup misses the identity")
        for a in elems:
            if g.inv(a) not in member:
                raise NotASubgroup(f"subgroup not closed under inverse at {a}")
            for b in elems:
                if g.mul(a, b) not in member:
                    raise NotASubgroup(f"subgroup not closed at ({a},{b})")
        if g.order % len(elems) != 0:
            raise NotASubgroup("Lagrange violated")  # unreachable once closed

    @property
    def order(self) -> int:
        return len(self.elems)

    @property
    def index(self) -> int:
        return self.group.order // len(self.elems)

    def member_set(self) -> frozenset[int]:
        return frozenset(self.elems)

    def __contains__(self, g: int) -> bool:
        return g in self.member_set()

    def __repr__(self) -> str:
        return f"Subgroup(order={self.order}, elems={self.elems})"


def subgroup_generated(group: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    elems = _kernels.subset_closure(group.mul_table, list(gens), group.identity)
    return Subgroup(group, elems)


def whole_group(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, tuple(range(group.order)))


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, (group.identity,))


def conjugate_elems(group: FiniteGroup, elems: Sequence[int], g: int) -> tuple[int, ...]:
    """Sorted g S g^-1."""
    t = group.mul_table
    arr = t[t[g, np.asarray(elems, dtype=np.intp)], group.inv(g)]
    arr.sort()
    return tuple(arr.tolist())


def centralizer(group: FiniteGroup, elems: Iterable[int]) -> Subgroup:
    """C_G(S): all g commuting with every element of S."""
    s = list(elems)
    if not s:
        raise GroupValidationError("centralizer of an empty set")
    t = group.mul_table
    ok = np.ones(group.order, dtype=bool)
    for x in s:
        ok &= t[:, x] == t[x, :]
    return Subgroup(group, tuple(np.nonzero(ok)[0].tolist()))


def normalizer(group: FiniteGroup, sub: Subgroup) -> Subgroup:
    member = sub.member_set()
    out = [g for g in group.elements()
           if all(group.conj(g, x) in member for x in sub.elems)]
    return Subgroup(group, tuple(out))


def center(group: FiniteGroup) -> Subgroup:
    return centralizer(group, range(group.order))


def element_classes(group: FiniteGroup):
    """Conjugacy classes of elements: (reps, class_of, sizes)."""
    return _kernels.conjugacy_classes(group.mul_table, group.inv_table)


def double_cosets(group: FiniteGroup, h: Subgroup, k: Subgroup) -> list[int]:
    """Smallest-index representatives of H\\G/K, in ascending order."""
    t = group.mul_table
    covered = np.zeros(group.order, dtype=bool)
    k_arr = np.asarray(k.elems, dtype=np.intp)
    reps = []
    for g in group.elements():
        if covered[g]:
            continue
        reps.append(g)
        for a in h.elems:
            covered[t[np.full(k_arr.shape, t[a, g], dtype=np.intp), k_arr]] = True
    return reps


def commutator_subgroup(group: FiniteGroup, a_elems: Sequence[int],
                        b_elems: Sequence[int]) -> Subgroup:
    gens = {group.commutator(a, b) for a in a_elems for b in b_elems}
    return subgroup_generated(group, gens)


def derived_series(group: FiniteGroup, sub: Subgroup | None = None) -> list[Subgroup]:
    """Derived series of sub (default: the whole group) until stabilization."""
    cur = sub or whole_group(group)
    series = [cur]
    while True:
        nxt = commutator_subgroup(group, cur.elems, cur.elems)
        if nxt.elems == cur.elems:
            break
        series.append(nxt)
        cur = nxt
    return series


def perfect_core(group: FiniteGroup, sub: Subgroup | None = None) -> Subgroup:
    return derived_series(group, sub)[-1]


def is_perfect(group: FiniteGroup, sub: Subgroup | None = None) -> bool:
    """Perfect = nontrivial and equal to its derived subgroup."""
    cur = sub or whole_group(group)
    if cur.order == 1:
        return False
    return commutator_subgroup(group, cur.elems, cur.elems).elems == cur.elems


def is_soluble(group: FiniteGroup, sub: Subgroup | None = None) -> bool:
    return perfect_core(group, sub).order == 1


def o_p(group: FiniteGroup, p: int) -> Subgroup:
    """Smallest normal subgroup with p-group quotient: closure of p'-elements."""
    if p < 2 or any(p % q == 0 for q in range(2, p)):
        raise GroupValidationError(f"{p} is not prime")
    gens = [g for g in group.elements() if group.element_order(g) % p != 0]
    return subgroup_generated(group, gens)


# -- homomorphisms and quotients ----------------------------------------------


@dataclass(frozen=True)
class Homomorphism:
    """A homomorphism as a full index table source -> target."""

    source: FiniteGroup
    target: FiniteGroup
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != self.source.order:
            raise GroupValidationError("homomorphism table has wrong length")
        f, s, t = self.table, self.source, self.target
        for a in s.elements():
            for b in s.elements():
                if f[s.mul(a, b)] != t.mul(f[a], f[b]):
                    raise GroupValidationError(
                        f"not a homomorphism at ({a},{b})")

    def __call__(self, g: int) -> int:
        return self.table[g]

    def kernel(self) -> Subgroup:
        e = self.target.identity
        return Subgroup(self.source,
                        tuple(g for g in self.source.elements() if self.table[g] == e))

    def image_elems(self, elems: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted({self.table[g] for g in elems}))

    def preimage_elems(self, elems: Iterable[int]) -> tuple[int, ...]:
        want = set(elems)
        return tuple(g for g in self.source.elements() if self.table[g] in want)

    def is_surjective(self) -> bool:
        return len(set(self.table)) == self.target.order

    def compose(self, earlier: "Homomorphism") -> "Homomorphism":
        """self o earlier (earlier applied first)."""
        if earlier.target is not self.source:
            raise GroupValidationError("composition mismatch")
        return Homomorphism(earlier.source, self.target,
                            tuple(self.table[x] for x in earlier.table))


def is_normal_subgroup(group: FiniteGroup, sub: Subgroup) -> bool:
    member = sub.member_set()
    return all(group.conj(g, x) in member
               for g in group.elements() for x in sub.elems)


def quotient_group(group: FiniteGroup, n: Subgroup,
                   label: str | None = None) -> tuple[FiniteGroup, Homomorphism]:
    """G/N with cosets ordered by smallest member, plus the projection."""
    if not is_normal_subgroup(group, n):
        raise NotNormal(f"subgroup of order {n.order} is not normal")
    t = group.mul_table
    n_arr = np.asarray(n.elems, dtype=np.intp)
    coset_of = np.full(group.order, -1, dtype=np.int64)
    coset_reps = []
    for g in group.elements():
        if coset_of[g] >= 0:
            continue
        members = t[np.full(n_arr.shape, g, dtype=np.intp), n_arr]
        coset_of[members] = len(coset_reps)
        coset_reps.append(g)
    m = len(coset_reps)
    table = np.empty((m, m), dtype=np.int32)
    for i, a in enumerate(coset_reps):
        table[i] = coset_of[t[a, coset_reps]]
    q = FiniteGroup(table, label or f"{group.label}/N{n.order}", _validated=True)
    proj = Homomorphism(group, q, tuple(int(x) for x in coset_of))
    return q, proj
