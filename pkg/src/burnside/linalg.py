"""Exact dense linear algebra over the rationals and prime fields.

Matrices are plain lists of rows; all arithmetic stays exact, which is what
makes idempotency and Mackey-axiom checks meaningful equalities rather than
tolerance tests.
"""

from __future__ import annotations

from fractions import Fraction


class FpElement:
    """An element of GF(p), supporting field arithmetic via operators."""

    __slots__ = ("p", "v")

    def __init__(self, p: int, v: int):
        self.p = p
        self.v = v % p

    def _lift(self, other):
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other
        if isinstance(other, int):
            return FpElement(self.p, other)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else FpElement(self.p, self.v + o.v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else FpElement(self.p, self.v - o.v)

    def __rsub__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else FpElement(self.p, o.v - self.v)

    def __mul__(self, other):
        o = self._lift(other)
        return NotImplemented if o is NotImplemented else FpElement(self.p, self.v * o.v)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        if o.v == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return FpElement(self.p, self.v * pow(o.v, self.p - 2, self.p))

    def __neg__(self):
        return FpElement(self.p, -self.v)

    def __eq__(self, other):
        o = self._lift(other) if not isinstance(other, FpElement) else other
        return isinstance(o, FpElement) and o.p == self.p and o.v == self.v

    def __hash__(self):
        return hash((self.p, self.v))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v}(mod {self.p})"


class _RationalField:
    name = "Q"
    zero = Fraction(0)
    one = Fraction(1)

    @staticmethod
    def of(x) -> Fraction:
        return Fraction(x)

    def __repr__(self):
        return "QQ"


QQ = _RationalField()


class _PrimeField:
    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.name = f"F{p}"
        self.zero = FpElement(p, 0)
        self.one = FpElement(p, 1)

    def of(self, x) -> FpElement:
        if isinstance(x, FpElement):
            if x.p != self.p:
                raise ValueError("mixed characteristics")
            return x
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return FpElement(self.p, x.numerator * pow(x.denominator % self.p,
                                                       self.p - 2, self.p))
        return FpElement(self.p, int(x))

    def __repr__(self):
        return f"GF({self.p})"


_gf_cache: dict[int, _PrimeField] = {}


def GF(p: int) -> _PrimeField:
    if p not in _gf_cache:
        _gf_cache[p] = _PrimeField(p)
    return _gf_cache[p]


# -- matrix helpers ----------------------------------------------------------


def zeros(rows: int, cols: int, field) -> list[list]:
    return [[field.zero] * cols for _ in range(rows)]


def identity(n: int, field) -> list[list]:
    m = zeros(n, n, field)
    for i in range(n):
        m[i][i] = field.one
    return m


def mat_mul(a: list[list], b: list[list], field, cols: int | None = None) -> list[list]:
    """a @ b; pass cols explicitly when b can have zero rows."""
    rows, inner = len(a), len(b)
    if cols is None:
        cols = len(b[0]) if b else 0
    out = zeros(rows, cols, field)
    for i in range(rows):
        ai, oi = a[i], out[i]
        for k in range(inner):
            x = ai[k]
            if x == field.zero:
                continue
            bk = b[k]
            for j in range(cols):
                oi[j] = oi[j] + x * bk[j]
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def rref(m: list[list], field) -> tuple[list[list], list[int]]:
    """Reduced row echelon form (copy) and the pivot column list."""
    a = [row[:] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pr = next((i for i in range(r, rows) if a[i][c] != field.zero), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        pv = a[r][c]
        a[r] = [x / pv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != field.zero:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: list[list], field) -> int:
    if not m:
        return 0
    return len(rref(m, field)[1])


def nullspace(m: list[list], field) -> list[list]:
    """Basis of the right kernel, as column vectors (lists)."""
    if not m:
        return []
    cols = len(m[0])
    r, pivots = rref(m, field)
    pivot_set = set(pivots)
    free = [c for c in range(cols) if c not in pivot_set]
    basis = []
    for f in free:
        v = [field.zero] * cols
        v[f] = field.one
        for i, p in enumerate(pivots):
            v[p] = -r[i][f]
        basis.append(v)
    return basis


def solve_in_basis(basis_cols: list[list], targets: list[list], field) -> list[list]:
    """Express target column vectors in the given (independent) column basis.

    basis_cols: d x k matrix whose columns are the basis, targets: d x m.
    Returns the k x m coefficient matrix; raises if a target is outside the span.
    """
    d = len(basis_cols)
    k = len(basis_cols[0]) if d and basis_cols[0] else 0
    m = len(targets[0]) if targets and targets[0] else 0
    if k == 0:
        for row in targets:
            if any(x != field.zero for x in row):
                raise ValueError("target outside span of empty basis")
        return [[] for _ in range(0)] if m == 0 else [[field.zero] * m for _ in range(0)]
    aug = [basis_cols[i][:] + targets[i][:] for i in range(d)]
    r, pivots = rref(aug, field)
    if any(p >= k for p in pivots):
        raise ValueError("target outside span of basis")
    out = zeros(k, m, field)
    for i, p in enumerate(pivots):
        for j in range(m):
            out[p][j] = r[i][k + j]
    return out


def quotient_map(w_cols: list[list], dim: int, field) -> tuple[list[list], list[list]]:
    """Quotient V -> V/W for W spanned by the given columns.

    Returns (q, lift): q is k x dim with k = dim - rank(W), lift is dim x k
    with q @ lift = identity.  Coordinates on the quotient are the non-pivot
    standard coordinates after reducing W to staircase form.
    """
    if w_cols and w_cols[0]:
        r, pivots = rref(transpose(w_cols), field)
        staircase = r[: len(pivots)]  # rows: reduced basis of W
    else:
        pivots, staircase = [], []
    pivot_set = set(pivots)
    free = [j for j in range(dim) if j not in pivot_set]
    q = zeros(len(free), dim, field)
    for r_i, s in enumerate(free):
        q[r_i][s] = field.one
        for w_i, p in enumerate(pivots):
            q[r_i][p] = -staircase[w_i][s]
    lift = zeros(dim, len(free), field)
    for r_i, s in enumerate(free):
        lift[s][r_i] = field.one
    return q, lift
