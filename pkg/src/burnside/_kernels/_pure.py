"""Pure-Python lane for the integer kernels.

The semantics here are the contract: the compiled lane in _speedups.pyx must
match this module output-for-output (tests/test_kernels.py asserts it).
All tables are numpy int32 arrays indexed by element ids 0..n-1.
"""

from __future__ import annotations

import numpy as np

BACKEND = "pure"


def perm_closure(degree: int, gens: list[tuple[int, ...]], cap: int):
    """BFS closure of permutation generators, identity first.

    Returns the elements (as tuples) in discovery order, or None once the
    closure grows past cap.  Products are taken as w*g with (w*g)(x)=w(g(x)).
    """
    ident = tuple(range(degree))
    elems = [ident]
    seen = {ident}
    i = 0
    while i < len(elems):
        w = elems[i]
        i += 1
        for g in gens:
            v = tuple(w[g[x]] for x in range(degree))
            if v not in seen:
                if len(elems) >= cap:
                    return None
                seen.add(v)
                elems.append(v)
    return elems


def mul_table_from_perms(perms: list[tuple[int, ...]]) -> np.ndarray:
    """Cayley table for a closed list of permutations, (a*b)(x)=a(b(x))."""
    n = len(perms)
    degree = len(perms[0]) if perms else 0
    index = {p: i for i, p in enumerate(perms)}
    table = np.empty((n, n), dtype=np.int32)
    rng = range(degree)
    for i, a in enumerate(perms):
        row = table[i]
        for j, b in enumerate(perms):
            row[j] = index[tuple(a[b[x]] for x in rng)]
    return table


def subset_closure(table: np.ndarray, gens, identity: int) -> tuple[int, ...]:
    """Sorted element set of the subgroup generated by gens."""
    n = table.shape[0]
    member = np.zeros(n, dtype=bool)
    gcol = np.unique(np.asarray(list(gens) + [identity], dtype=np.intp))
    member[gcol] = True
    frontier = gcol
    while frontier.size:
        prod = table[np.ix_(frontier, gcol)].ravel()
        new = np.unique(prod)
        new = new[~member[new]]
        member[new] = True
        frontier = new
    return tuple(np.nonzero(member)[0].tolist())


def conjugacy_classes(table: np.ndarray, inv: np.ndarray):
    """Element conjugacy classes.

    Returns (reps, class_of, sizes): smallest-index representatives in
    ascending order, the class index of every element, and class sizes.
    """
    n = table.shape[0]
    invv = np.asarray(inv, dtype=np.intp)
    class_of = np.full(n, -1, dtype=np.int64)
    reps = []
    sizes = []
    for x in range(n):
        if class_of[x] >= 0:
            continue
        conj = table[table[:, x], invv]  # g -> (g*x)*g^-1
        cls = np.unique(conj)
        class_of[cls] = len(reps)
        reps.append(x)
        sizes.append(int(cls.size))
    return reps, class_of.tolist(), sizes


def mark_count(table: np.ndarray, inv: np.ndarray, h_elems, k_mask: np.ndarray,
               k_size: int) -> int:
    """Number of cosets gK with H <= gKg^-1, i.e. |(G/K)^H|.

    Counts g with g^-1 H g <= K and divides by |K|; k_mask is the boolean
    membership vector of K.
    """
    invv = np.asarray(inv, dtype=np.intp)
    ok = np.ones(table.shape[0], dtype=bool)
    for h in h_elems:
        # g -> inv(g)*h*g for all g at once
        x = table[table[invv, h], np.arange(table.shape[0], dtype=np.intp)]
        ok &= k_mask[x]
    return int(ok.sum()) // k_size


def census_scan(a_cols: np.ndarray, mods: np.ndarray) -> list[int]:
    """Gray-code scan of all 0/1 vectors v with A @ v == 0 (mod mods).

    a_cols is the k x k integer matrix A (int64), mods the per-row moduli.
    Returns the accepted vectors as sorted bitmasks (bit j = coordinate j).
    The caller is responsible for ensuring no int64 overflow is possible.
    """
    a = np.asarray(a_cols, dtype=np.int64)
    mods = np.asarray(mods, dtype=np.int64)
    k = a.shape[1]
    cols = [a[:, j].copy() for j in range(k)]
    acc = np.zeros(a.shape[0], dtype=np.int64)
    hits = []
    if not (acc % mods).any():
        hits.append(0)
    v = 0
    for i in range(1, 1 << k):
        j = (i & -i).bit_length() - 1
        if (v >> j) & 1:
            acc -= cols[j]
            v &= ~(1 << j)
        else:
            acc += cols[j]
            v |= 1 << j
        if not (acc % mods).any():
            hits.append(v)
    hits.sort()
    return hits
