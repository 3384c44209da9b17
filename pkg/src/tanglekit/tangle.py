"""Tangles of matroids.

A tangle of order k is stored as the antichain of its maximal small sets.  A
set A is *weak* when it lies inside one of them and *small* when, in
addition, lambda(A) <= k - 2.  Everything else (the full small family, the
tangle matroid, breadth) is derived from that antichain with whole-powerset
transforms.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import bits
from . import connectivity as cn
from . import matroid as mt
from .errors import DomainError, InvariantError, ResourceCapError, StructuralError
from .matroid import MaskLike, Matroid

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Tangle:
    matroid: Matroid
    order: int
    maximal_small: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "maximal_small", tuple(sorted(set(self.maximal_small))))

    def __repr__(self) -> str:
        return f"Tangle(order={self.order}, maximal_small={len(self.maximal_small)} sets, n={self.matroid.n})"

    def key(self) -> tuple:
        return self.matroid.labels, self.order, self.maximal_small

    def __eq__(self, other) -> bool:
        return isinstance(other, Tangle) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    @cached_property
    def weak_table(self) -> np.ndarray:
        M = self.matroid
        M.scan_guard()
        w = np.zeros(1 << M.n, dtype=bool)
        w[list(self.maximal_small)] = True
        w = bits.down_or(w)
        w.setflags(write=False)
        return w

    @cached_property
    def small_table(self) -> np.ndarray:
        s = self.weak_table & (self.matroid.lam_table <= self.order - 2)
        s.setflags(write=False)
        return s

    def is_weak(self, A: MaskLike) -> bool:
        a = self.matroid.mask(A)
        return any(a & ~h == 0 for h in self.maximal_small)

    def is_small(self, A: MaskLike) -> bool:
        """Small/large is only defined for sets with lambda <= k - 2."""
        a = self.matroid.mask(A)
        if self.matroid.lam(a) > self.order - 2:
            raise DomainError(
                f"lambda({self.matroid.labels_of(a)}) > {self.order - 2}: neither small nor large"
            )
        return self.is_weak(a)

    def small_sets(self) -> list[int]:
        return [int(x) for x in np.flatnonzero(self.small_table)]

    def rebind(self, other: Matroid) -> "Tangle":
        """Same family viewed in another matroid on the same labels (e.g. the dual)."""
        if other.labels != self.matroid.labels:
            raise StructuralError("rebind needs identical labels")
        return Tangle(other, self.order, self.maximal_small)

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "maximal_small": [self.matroid.labels_of(h) for h in self.maximal_small],
        }

    @classmethod
    def from_json(cls, M: Matroid, data: dict) -> "Tangle":
        return cls(M, int(data["order"]), tuple(M.mask(s) for s in data["maximal_small"]))


def tangle_from_small_table(M: Matroid, k: int, small: np.ndarray) -> Tangle:
    return Tangle(M, k, tuple(bits.maximal_members(small)))


# -- separations -------------------------------------------------------------

def canonical(M: Matroid, A: int) -> int:
    """Shortlex-smaller of A and E - A."""
    B = M.full ^ A
    return min(A, B, key=bits.shortlex_key)


def _canonical_sep_masks(M: Matroid, k: int) -> np.ndarray:
    M.scan_guard()
    n = M.n
    sep = M.lam_table <= k - 2
    pc = bits.popcounts(n).astype(np.int32)
    idx = bits.all_masks(n)
    canon = (2 * pc < n) | ((2 * pc == n) & (idx & 1 == 1))
    if n == 0:
        canon = np.ones(1, dtype=bool)
    return np.flatnonzero(sep & canon)


def separations(M: Matroid, k: int) -> list[int]:
    """Canonical sides of all A with lambda(A) <= k - 2, shortlex sorted."""
    return sorted((int(x) for x in _canonical_sep_masks(M, k)), key=bits.shortlex_key)


# -- verification ------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    axiom: str
    witnesses: tuple[int, ...]

    def to_json(self, M: Matroid) -> dict:
        return {"axiom": self.axiom, "witnesses": [M.labels_of(w) for w in self.witnesses]}


def _three_cover(sets: Sequence[int], full: int) -> tuple[int, int, int] | None:
    if not sets:
        return None
    arr = np.array(sets, dtype=np.int64)
    for i, a in enumerate(sets):
        for b in sets[i:]:
            hit = np.flatnonzero((arr | a | b) == full)
            if hit.size:
                return a, b, int(arr[hit[0]])
    return None


def verify_tangle(M: Matroid, k: int, family: Iterable[MaskLike]) -> Violation | None:
    """Check (T1)-(T4) for a literal family of sets; None means it is a tangle."""
    fam = {M.mask(a) for a in family}
    ordered = sorted(fam, key=bits.shortlex_key)
    for a in ordered:
        if M.lam(a) > k - 2:
            return Violation("T1", (a,))
    for i in range(M.n):
        if M.full ^ (1 << i) in fam:
            return Violation("T4", (1 << i,))
    for c in separations(M, k):
        if c not in fam and M.full ^ c not in fam:
            return Violation("T2", (c, M.full ^ c))
    maxi = [a for a in ordered if not any(a != b and a & ~b == 0 for b in fam)]
    cover = _three_cover(maxi, M.full)
    if cover is not None:
        return Violation("T3", cover)
    return None


def check_tangle(T: Tangle) -> Violation | None:
    return verify_tangle(T.matroid, T.order, T.small_sets())


# -- enumeration -------------------------------------------------------------

class _Orienter:
    """Backtracking over orientations of the canonical separations.

    Propagation: whenever X and Y are small, every separation inside X | Y is
    small (otherwise its complement together with X and Y covers E).  With
    X == Y this is downward closure; an X | Y equal to E is a conflict.
    """

    def __init__(self, M: Matroid, k: int, node_budget: int | None):
        self.M, self.k = M, k
        self.full = M.full
        canon = sorted((int(x) for x in _canonical_sep_masks(M, k)), key=bits.shortlex_key)
        self.canon = np.array(canon, dtype=np.int64)
        self.pair_of = np.full(1 << M.n, -1, dtype=np.int64)
        self.pair_of[self.canon] = np.arange(len(canon))
        self.pair_of[self.full ^ self.canon] = np.arange(len(canon))
        seps = np.concatenate([self.canon, self.full ^ self.canon]) if canon else self.canon
        self.seps = np.unique(seps)
        self.node_budget = node_budget
        self.nodes = 0
        self.found: list[tuple[int, ...]] = []

    def _force(self, orient: np.ndarray, masks: np.ndarray, queue: list[int]) -> bool:
        idx = self.pair_of[masks]
        if np.any(idx < 0):
            return False
        want = np.where(masks == self.canon[idx], 1, 2).astype(np.int8)
        cur = orient[idx]
        if np.any((cur != 0) & (cur != want)):
            return False
        new = cur == 0
        if new.any():
            orient[idx[new]] = want[new]
            queue.extend(int(x) for x in masks[new])
        return True

    def _propagate(self, orient: np.ndarray, maxi: list[int], queue: list[int]) -> bool:
        seps = self.seps
        while queue:
            queue.sort(key=bits.popcount)
            x = queue.pop()
            if any(x & ~h == 0 for h in maxi):
                continue
            maxi[:] = [h for h in maxi if h & ~x]
            maxi.append(x)
            for y in list(maxi):
                u = x | y
                if u == self.full:
                    return False
                inside = seps[(seps & ~u) == 0]
                if not self._force(orient, inside, queue):
                    return False
        return True

    def start(self, seeds: Sequence[int]) -> tuple[np.ndarray, list[int]] | None:
        orient = np.zeros(len(self.canon), dtype=np.int8)
        maxi: list[int] = []
        init = [m for m in (0, *(1 << i for i in range(self.M.n)), *seeds)
                if self.pair_of[m] >= 0 or m in seeds]
        if not self._force(orient, np.array(sorted(set(init)), dtype=np.int64), queue := []):
            return None
        if not self._propagate(orient, maxi, queue):
            return None
        return orient, maxi

    def run(self, seeds: Sequence[int], limit: int | None) -> list[tuple[int, ...]]:
        root = self.start(seeds)
        if root is None:
            return []
        stack = [root]
        while stack:
            orient, maxi = stack.pop()
            self.nodes += 1
            if self.node_budget is not None and self.nodes > self.node_budget:
                raise ResourceCapError(
                    f"tangle search budget {self.node_budget} exhausted after "
                    f"{self.nodes} nodes with {len(self.found)} tangles found "
                    f"({int(np.count_nonzero(orient))}/{len(orient)} separations oriented at the frontier)"
                )
            free = np.flatnonzero(orient == 0)
            if free.size == 0:
                self.found.append(tuple(sorted(maxi)))
                if limit is not None and len(self.found) >= limit:
                    break
                continue
            c = int(self.canon[free[0]])
            children = []
            for side in (c, self.full ^ c):
                o2, m2, q = orient.copy(), list(maxi), []
                if self._force(o2, np.array([side], dtype=np.int64), q) and self._propagate(o2, m2, q):
                    children.append((o2, m2))
            # depth-first, canonical-side-small branch explored first
            stack.extend(reversed(children))
        return self.found


def enumerate_tangles(
    M: Matroid,
    k: int,
    seeds: Iterable[MaskLike] = (),
    limit: int | None = None,
    node_budget: int | None = 200_000,
) -> list[Tangle]:
    """All order-k tangles of M containing every seed set as a small set.

    Without seeds this is the complete list of order-k tangles.  Output order
    is deterministic (sorted by maximal-small antichain).
    """
    if k < 1:
        raise DomainError("tangle order must be at least 1")
    M.scan_guard()
    seed_masks = [M.mask(s) for s in seeds]
    for s in seed_masks:
        if M.lam(s) > k - 2:
            return []
    if k == 1:
        return [Tangle(M, 1, ())]
    search = _Orienter(M, k, node_budget)
    found = search.run(seed_masks, limit)
    return sorted((Tangle(M, k, f) for f in found), key=lambda t: t.maximal_small)


# -- membership --------------------------------------------------------------

@dataclass(frozen=True)
class Membership:
    side: str | None  # "small", "large", or None when lambda(A) > k - 2
    weak: bool

    @property
    def strength(self) -> str:
        return "weak" if self.weak else "strong"


def tangle_membership(T: Tangle, A: MaskLike) -> Membership:
    a = T.matroid.mask(A)
    weak = T.is_weak(a)
    if T.matroid.lam(a) > T.order - 2:
        return Membership(None, weak)
    return Membership("small" if weak else "large", weak)


# -- tangle matroid ----------------------------------------------------------

@dataclass(frozen=True)
class TangleMatroid:
    matroid: Matroid
    tangle: Tangle


def tangle_matroid_table(T: Tangle) -> np.ndarray:
    k1 = T.order - 1
    val = np.where(T.small_table, T.matroid.lam_table, k1).astype(np.int16)
    return np.minimum(bits.superset_min(val), k1).astype(np.uint8)


def tangle_matroid(T: Tangle, check: bool = True) -> TangleMatroid:
    """Rank r(A) = k-1 for strong A, else min lambda(B) over small B containing A."""
    MT = mt.from_rank_table(T.matroid.labels, tangle_matroid_table(T))
    if check:
        if MT.rank() != T.order - 1:
            raise InvariantError(f"tangle matroid has rank {MT.rank()}, expected {T.order - 1}")
        if tuple(cn.hyperplanes(MT)) != T.maximal_small:
            raise InvariantError("tangle matroid hyperplanes differ from the maximal small sets")
        if not cn.is_round(MT):
            raise InvariantError("tangle matroid is not round")
    return TangleMatroid(MT, T)


# -- breadth -----------------------------------------------------------------

@dataclass(frozen=True)
class BreadthCertificate:
    value: int
    witness: int


def _max_circuit_free(n: int, circ: list[int]) -> int:
    """Largest set containing none of ``circ``; lexicographically least on ties."""
    by_elem = [[c for c in circ if c >> i & 1] for i in range(n)]
    best = [-1, 0]

    def addable(U: int, i: int) -> bool:
        Ui = U | (1 << i)
        return not any(c & ~Ui == 0 for c in by_elem[i])

    def packing(U: int, cand: int) -> int:
        used = 0
        count = 0
        pool = U | cand
        for c in circ:
            r = c & cand
            if r and c & ~pool == 0 and not r & used:
                used |= r
                count += 1
        return count

    def rec(U: int, size: int, cand: int) -> None:
        pc = bits.popcount(cand)
        if size + pc <= best[0]:
            return
        if cand == 0:
            best[0], best[1] = size, U
            return
        if size + pc - packing(U, cand) <= best[0]:
            return
        i = bits.lowest(cand)
        rest = cand & ~(1 << i)
        U2 = U | (1 << i)
        cand2 = 0
        for j in bits.indices(rest):
            if addable(U2, j):
                cand2 |= 1 << j
        rec(U2, size + 1, cand2)
        rec(U, size, rest)

    start = 0
    for i in range(n):
        if addable(0, i):
            start |= 1 << i
    rec(0, 0, start)
    return best[1]


def breadth(T: Tangle) -> BreadthCertificate:
    """Largest U with M_T|U uniform of rank k-1 (branch and bound)."""
    MT = mt.from_rank_table(T.matroid.labels, tangle_matroid_table(T))
    circ = cn.circuits(MT, max_size=T.order - 1)
    U = _max_circuit_free(MT.n, circ)
    if MT.rank(U) != T.order - 1:
        raise InvariantError("breadth witness is not spanning in the tangle matroid")
    return BreadthCertificate(bits.popcount(U), U)


# -- cover size --------------------------------------------------------------

@dataclass(frozen=True)
class CoverSize:
    value: int
    cover: tuple[int, ...]
    warning: str | None = None


def cover_size(T: Tangle) -> CoverSize:
    """Minimum number of small sets whose union is E (exact search)."""
    M = T.matroid
    sets = sorted(T.maximal_small, key=lambda h: (-bits.popcount(h), h))
    union = 0
    for h in sets:
        union |= h
    if union != M.full:
        raise DomainError("the small sets of this tangle do not cover the ground set")
    warning = None
    if T.order <= 2:
        warning = "cover size is not generally well defined for tangles of order at most 2"
    if M.n == 0:
        return CoverSize(0, (), warning)
    largest = bits.popcount(sets[0])
    containing = [[h for h in sets if h >> i & 1] for i in range(M.n)]

    def dfs(covered: int, depth: int, chosen: list[int]) -> list[int] | None:
        if covered == M.full:
            return chosen
        left = bits.popcount(M.full & ~covered)
        if depth == 0 or left > depth * largest:
            return None
        e = bits.lowest(M.full & ~covered)
        for h in containing[e]:
            got = dfs(covered | h, depth - 1, chosen + [h])
            if got is not None:
                return got
        return None

    for d in range(1, M.n + 1):
        got = dfs(0, d, [])
        if got is not None:
            return CoverSize(d, tuple(got), warning)
    raise InvariantError("no cover found although the union is E")


# -- truncation and k-connected sets -----------------------------------------

def truncate_tangle(T: Tangle, t: int, check: bool = True) -> Tangle:
    if not 2 <= t <= T.order - 1:
        raise DomainError(f"truncation order must lie in 2..{T.order - 1}, got {t}")
    small = T.small_table & (T.matroid.lam_table <= t - 2)
    out = tangle_from_small_table(T.matroid, t, small)
    if check:
        got = tangle_matroid(out, check=False).matroid
        want = mt.truncation(tangle_matroid(T, check=False).matroid, t - 1)
        if not got.same_as(want):
            raise InvariantError("tangle matroid of the truncation is not the truncated tangle matroid")
    return out


def tangle_from_k_connected_set(M: Matroid, Z: MaskLike, k: int, check: bool = True) -> Tangle:
    """The tangle {A : lambda(A) <= k-2 and |A & Z| <= k-2} of a large k-connected set Z."""
    z = M.mask(Z)
    if k < 3:
        raise DomainError("k-connected-set tangles need k >= 3")
    if bits.popcount(z) < 3 * k - 5:
        raise DomainError(f"|Z| = {bits.popcount(z)} < 3k-5 = {3 * k - 5}")
    bad = cn.k_connected_set_violation(M, z, k)
    if bad is not None:
        raise DomainError(f"Z is not {k}-connected; violated by {M.labels_of(bad)}")
    inside = bits.popcounts(M.n)[bits.all_masks(M.n) & z]
    small = (M.lam_table <= k - 2) & (inside <= k - 2)
    T = tangle_from_small_table(M, k, small)
    if check:
        MT = tangle_matroid(T, check=False).matroid
        if not is_uniform_restriction(MT, z, k - 1):
            raise InvariantError("tangle matroid restricted to Z is not uniform")
    return T


def is_uniform_restriction(MT: Matroid, U: int, r: int) -> bool:
    """M|U is isomorphic to U_{r,|U|}."""
    size = bits.popcount(U)
    if MT.rank(U) != min(r, size):
        return False
    subs = bits.submask_array(U)
    t = MT.rank_table()[subs]
    pc = bits.popcounts(MT.n)[subs]
    return bool(np.all(t == np.minimum(pc, r)))
