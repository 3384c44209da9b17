"""Slow, independent re-implementations used to cross-check the engines.

None of these share search code with :mod:`tanglekit.tangle`; they only use
rank/lambda tables and plain definitions.
"""
from __future__ import annotations

import itertools

import numpy as np

from .. import bits
from ..errors import ResourceCapError
from ..matroid import Matroid


def separation_pairs(M: Matroid, k: int) -> list[tuple[int, int]]:
    """(A, E-A) with lambda(A) <= k-2, one entry per unordered pair."""
    lt = M.lam_table
    out = []
    for a in range(1 << M.n):
        b = M.full ^ a
        if a <= b and lt[a] <= k - 2:
            out.append((a, b))
    return out


def brute_force_tangles(M: Matroid, k: int, max_pairs: int = 16) -> list[tuple[int, ...]]:
    """Check all 2^m orientations of the m separation pairs against (T1)-(T4).

    Returns each tangle as the sorted tuple of its members.
    """
    if k == 1:
        return [()]
    pairs = separation_pairs(M, k)
    m = len(pairs)
    if m > max_pairs:
        raise ResourceCapError(f"{m} separation pairs exceed the brute-force limit {max_pairs}")
    full = M.full
    # literal 2*i + s picks side s of pair i
    lits = [p[s] for p in pairs for s in (0, 1)]
    codes = np.arange(1 << m, dtype=np.int64)
    alive = np.ones(1 << m, dtype=bool)

    def chosen(lit: int) -> np.ndarray:
        i, s = divmod(lit, 2)
        return ((codes >> i) & 1) == s

    for lit, x in enumerate(lits):
        if bits.popcount(full ^ x) == 1:
            alive &= ~chosen(lit)
    L = len(lits)
    for i in range(L):
        for j in range(i, L):
            for l in range(j, L):
                if lits[i] | lits[j] | lits[l] != full:
                    continue
                trio = {(i // 2, i % 2), (j // 2, j % 2), (l // 2, l % 2)}
                if len({p for p, _ in trio}) < len(trio):
                    continue  # uses both sides of one pair, never chosen together
                alive &= ~(chosen(i) & chosen(j) & chosen(l))
    out = []
    for code in np.flatnonzero(alive):
        fam = tuple(sorted(pairs[i][(int(code) >> i) & 1] for i in range(m)))
        out.append(fam)
    return sorted(out)


def backtrack_tangles(M: Matroid, k: int, node_budget: int = 2_000_000) -> list[tuple[int, ...]]:
    """Exhaustive orientation search pruned only by axiom violations among chosen sets."""
    if k == 1:
        return [()]
    pairs = sorted(separation_pairs(M, k), key=lambda p: bits.shortlex_key(p[0]))
    full = M.full
    out: list[tuple[int, ...]] = []
    nodes = 0

    def ok_with(fam: list[int], x: int) -> bool:
        if bits.popcount(full ^ x) == 1:
            return False
        arr = np.array(fam + [x], dtype=np.int64)
        for y in fam + [x]:
            if np.any((arr | x | y) == full):
                return False
        return True

    def rec(i: int, fam: list[int]) -> None:
        nonlocal nodes
        nodes += 1
        if nodes > node_budget:
            raise ResourceCapError("backtracking oracle budget exhausted")
        if i == len(pairs):
            out.append(tuple(sorted(fam)))
            return
        for side in pairs[i]:
            if ok_with(fam, side):
                rec(i + 1, fam + [side])

    rec(0, [])
    return sorted(out)


def tangle_family(T) -> tuple[int, ...]:
    return tuple(sorted(T.small_sets()))


def tangle_rank_formula(T) -> np.ndarray:
    """Rank of every set in M_T straight from the min-over-small-supersets formula."""
    M = T.matroid
    k = T.order
    small = T.small_sets()
    lt = M.lam_table
    out = np.empty(1 << M.n, dtype=np.int16)
    for a in range(1 << M.n):
        best = k - 1
        for b in small:
            if a & ~b == 0 and lt[b] < best:
                best = int(lt[b])
        out[a] = best
    return out


def breadth_oracle(MT: Matroid, k: int) -> tuple[int, int]:
    """Largest U with M_T|U uniform of rank k-1, lexicographically least on ties."""
    pc = bits.popcounts(MT.n).astype(np.int16)
    idx = np.flatnonzero(witness_table(MT, k))
    if idx.size == 0:
        return 0, 0
    size = pc[idx].max()
    best = [int(i) for i in idx if pc[i] == size]
    # lexicographically least = smallest sorted index tuple
    return int(size), min(best, key=lambda m: tuple(bits.indices(m)))


def is_titanic_partition(M: Matroid, A: int) -> bool:
    """No partition of A into three parts, each of smaller lambda."""
    la = M.lam(A)
    elems = bits.indices(A)
    for assign in itertools.product(range(3), repeat=len(elems)):
        parts = [0, 0, 0]
        for e, p in zip(elems, assign):
            parts[p] |= 1 << e
        if all(M.lam(p) < la for p in parts):
            return False
    return True


def is_solid_partition(M: Matroid, A: int) -> bool:
    la = M.lam(A)
    for sub in bits.iter_submasks(A):
        if M.lam(sub) < la and M.lam(A ^ sub) < la:
            return False
    return True


def generated_by_filter(M: Matroid, T, N: Matroid, all_tangles) -> list:
    """Tangles of N containing every A & E(N), A small in T, by filtering a full list."""
    pos = [M.index(lab) for lab in N.labels]
    need = {bits.gather_int(a, pos) for a in T.small_sets()}
    return [Tn for Tn in all_tangles if need <= set(Tn.small_sets())]


def witness_table(MT: Matroid, k: int) -> np.ndarray:
    """Sets U with M_T|U spanning and uniform of rank k-1."""
    n = MT.n
    t = MT.rank_table().astype(np.int16)
    pc = bits.popcounts(n).astype(np.int16)
    bad = (pc <= k - 1) & (t < pc)
    return ~bits.up_or(bad.copy()) & (t == k - 1)
