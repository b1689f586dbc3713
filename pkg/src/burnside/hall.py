"""Finite truncation of the doubly infinite exponent-p class-2 group.

Generators g_i for |i| <= n, centre generated by z_j for -n < j <= n, with
[g_i, g_{i+1}] = z_{i+1}^{s(i)} (s(i) = +1 for odd i, -1 for even i) and all
non-adjacent generator pairs commuting.  Elements are stored in polycyclic
normal form (exponent vectors mod p), never as a Cayley table: the order
p^(4n+1) is far beyond table range, and only element-level questions are
asked of this family.

Truncation is faithful for words supported on interior indices |i| <= n-1;
no claims are made at the boundary, where the missing neighbours distort
conjugacy classes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import EvenPrime, ParseError

#: an element: (generator exponents, centre exponents), both tuples mod p
HallElement = tuple[tuple[int, ...], tuple[int, ...]]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % q for q in range(2, int(p ** 0.5) + 1))


def _sign(i: int) -> int:
    """Exponent of z_{i+1} in [g_i, g_{i+1}]."""
    return 1 if i % 2 else -1


@dataclass(frozen=True)
class HallCentralizer:
    """Closed-form centralizer of a normal-form word.

    Generated by the g_l at distance >= 2 from the support, one diagonal
    word per maximal adjacent run of the support, and the whole centre.
    """

    far_generators: tuple[int, ...]
    run_words: tuple[HallElement, ...]
    order: int


class HallGroup:
    """Exponent-p truncation with generator indices -n..n."""

    def __init__(self, p: int, n: int):
        if p == 2:
            raise EvenPrime("exponent-p extraspecial pieces need an odd prime")
        if not _is_prime(p):
            raise ParseError(f"{p} is not prime")
        if n < 1:
            raise ParseError("truncation radius must be >= 1")
        self.p = p
        self.n = n
        self.gen_indices = range(-n, n + 1)
        self.z_indices = range(-n + 1, n + 1)
        self.num_gens = 2 * n + 1
        self.num_z = 2 * n
        self.order = p ** (self.num_gens + self.num_z)

    # -- element plumbing ---------------------------------------------------

    def _gpos(self, i: int) -> int:
        if not -self.n <= i <= self.n:
            raise ParseError(f"generator index {i} outside radius {self.n}")
        return i + self.n

    def _zpos(self, j: int) -> int:
        if not -self.n + 1 <= j <= self.n:
            raise ParseError(f"centre index {j} outside radius {self.n}")
        return j + self.n - 1

    @property
    def identity(self) -> HallElement:
        return ((0,) * self.num_gens, (0,) * self.num_z)

    def generator(self, i: int) -> HallElement:
        a = [0] * self.num_gens
        a[self._gpos(i)] = 1
        return (tuple(a), (0,) * self.num_z)

    def central(self, j: int) -> HallElement:
        b = [0] * self.num_z
        b[self._zpos(j)] = 1
        return ((0,) * self.num_gens, tuple(b))

    def from_word(self, gen_exps, z_exps=()) -> HallElement:
        """Element from (index, exponent) pairs for generators and centre."""
        a = [0] * self.num_gens
        b = [0] * self.num_z
        for i, e in gen_exps:
            a[self._gpos(i)] = e % self.p
        for j, e in z_exps:
            b[self._zpos(j)] = e % self.p
        return (tuple(a), tuple(b))

    def support(self, x: HallElement) -> tuple[int, ...]:
        return tuple(i for i in self.gen_indices if x[0][self._gpos(i)])

    # -- arithmetic (collection for class 2) ---------------------------------

    def mul(self, x: HallElement, y: HallElement) -> HallElement:
        p = self.p
        a, b = x
        c, d = y
        ga = tuple((u + v) % p for u, v in zip(a, c))
        z = [(u + v) % p for u, v in zip(b, d)]
        # moving the right word's g_i past the left word's g_{i+1} picks up
        # [g_{i+1}, g_i]^(a_{i+1} c_i) = z_{i+1}^(-s(i) a_{i+1} c_i)
        for i in range(-self.n, self.n):
            corr = -_sign(i) * a[self._gpos(i + 1)] * c[self._gpos(i)]
            if corr:
                pos = self._zpos(i + 1)
                z[pos] = (z[pos] + corr) % p
        return (ga, tuple(z))

    def inv(self, x: HallElement) -> HallElement:
        p = self.p
        a, b = x
        ga = tuple((-u) % p for u in a)
        z = [(-v) % p for v in b]
        for i in range(-self.n, self.n):
            corr = -_sign(i) * a[self._gpos(i)] * a[self._gpos(i + 1)]
            if corr:
                pos = self._zpos(i + 1)
                z[pos] = (z[pos] + corr) % p
        return (ga, tuple(z))

    def conj(self, g: HallElement, x: HallElement) -> HallElement:
        return self.mul(self.mul(g, x), self.inv(g))

    def commutator(self, x: HallElement, y: HallElement) -> HallElement:
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def power(self, x: HallElement, k: int) -> HallElement:
        r = self.identity
        for _ in range(k % (self.p * self.p)):  # exponent p; small k anyway
            r = self.mul(r, x)
        return r

    def is_central(self, x: HallElement) -> bool:
        return not any(x[0])

    # -- conjugacy ----------------------------------------------------------------

    def conjugacy_class(self, w: HallElement) -> set[HallElement]:
        """Orbit closure of w under conjugation by the generators."""
        gens = [self.generator(i) for i in self.gen_indices]
        gens += [self.inv(g) for g in gens]
        orbit = {w}
        frontier = [w]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = self.conj(g, x)
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return orbit

    def claimed_centralizer(self, w: HallElement) -> HallCentralizer:
        """Closed-form C_G(w) for a normal-form word.

        A word u = prod g_l^{c_l} (mod centre) centralizes w iff
        a_{i+1} c_i = a_i c_{i+1} mod p for every adjacent pair, which pins
        c to zero next to the support, leaves it free at distance >= 2, and
        forces proportionality to w along each maximal adjacent run of the
        support.  The centre always centralizes.
        """
        supp = self.support(w)
        far = tuple(l for l in self.gen_indices
                    if all(abs(l - s) >= 2 for s in supp))
        runs: list[tuple[int, ...]] = []
        for s in supp:
            if runs and s == runs[-1][-1] + 1:
                runs[-1] = runs[-1] + (s,)
            else:
                runs.append((s,))
        run_words = tuple(
            self.from_word([(i, w[0][self._gpos(i)]) for i in run]) for run in runs)
        order = self.p ** (len(far) + len(runs) + self.num_z)
        return HallCentralizer(far, run_words, order)


def hall_truncation(p: int, n: int) -> HallGroup:
    return HallGroup(p, n)
