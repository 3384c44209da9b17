"""Connectivity calculus on top of the rank oracle.

Guts/coguts/interior, fully closed sets, solid and titanic sets, roundness,
``(s0, ..., st)``-connectivity and k-connected sets.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import bits
from .config import caps
from .errors import PreconditionError
from .matroid import MaskLike, Matroid


@dataclass(frozen=True)
class BoundaryProfile:
    guts: int
    coguts: int
    interior: int


def guts(M: Matroid, X: MaskLike) -> int:
    x = M.mask(X)
    return M.closure(x) & M.closure(M.full ^ x)


def coguts(M: Matroid, X: MaskLike) -> int:
    x = M.mask(X)
    return M.coclosure(x) & M.coclosure(M.full ^ x)


def interior(M: Matroid, X: MaskLike) -> int:
    x = M.mask(X)
    return x & ~(guts(M, x) | coguts(M, x))


def boundary_profile(M: Matroid, X: MaskLike) -> BoundaryProfile:
    x = M.mask(X)
    g, c = guts(M, x) & x, coguts(M, x) & x
    return BoundaryProfile(g, c, x & ~(g | c))


def is_fully_closed(M: Matroid, A: MaskLike) -> bool:
    a = M.mask(A)
    return M.closure(a) == a and M.coclosure(a) == a


def lam_many(M: Matroid, masks: np.ndarray) -> np.ndarray:
    if M.n <= caps().scan_max:
        return M.lam_table[masks]
    return np.array([M.lam(int(m)) for m in masks], dtype=np.int16)


def is_solid(M: Matroid, X: MaskLike) -> bool:
    x = M.mask(X)
    lx = M.lam(x)
    subs = bits.submask_array(x)
    low = lam_many(M, subs) < lx
    # low[j] and low[complement of j inside X]; compressed order reverses
    return not bool(np.any(low & low[::-1]))


def solid_violation(M: Matroid, X: MaskLike) -> tuple[int, int] | None:
    x = M.mask(X)
    lx = M.lam(x)
    subs = bits.submask_array(x)
    low = lam_many(M, subs) < lx
    hit = np.flatnonzero(low & low[::-1])
    if hit.size == 0:
        return None
    a = int(subs[hit[0]])
    return a, x ^ a


def titanic_cover(M: Matroid, A: MaskLike) -> tuple[int, int, int] | None:
    """Three subsets of A of smaller connectivity whose union is A, or None."""
    a = M.mask(A)
    la = M.lam(a)
    subs = bits.submask_array(a)
    low = lam_many(M, subs) < la
    if not low.any():
        return None
    sup = bits.down_or(low.copy())
    maxi = bits.maximal_members(low)
    full_c = low.shape[0] - 1
    for i, x in enumerate(maxi):
        for y in maxi[i:]:
            rest = full_c & ~(x | y)
            if sup[rest]:
                # any member containing rest works; take the first maximal one
                z = next(m for m in maxi if m & rest == rest)
                return int(subs[x]), int(subs[y]), int(subs[z])
    return None


def is_titanic(M: Matroid, A: MaskLike) -> bool:
    return titanic_cover(M, A) is None


def closed_table(M: Matroid) -> np.ndarray:
    M.scan_guard()
    t = M.rank_table()
    closed = np.ones(t.shape[0], dtype=bool)
    for i in range(M.n):
        b = 1 << i
        cv = closed.reshape(-1, 2, b)
        tv = t.reshape(-1, 2, b)
        cv[:, 0, :] &= tv[:, 1, :] > tv[:, 0, :]
    return closed


def flats(M: Matroid, rank: int | None = None) -> list[int]:
    closed = closed_table(M)
    if rank is not None:
        closed &= M.rank_table() == rank
    return [int(x) for x in np.flatnonzero(closed)]


def hyperplanes(M: Matroid) -> list[int]:
    r = M.rank()
    if r == 0:
        return []
    return flats(M, r - 1)


def covering_hyperplanes(M: Matroid, count: int) -> tuple[int, ...] | None:
    """``count`` hyperplanes (repetition allowed) whose union is E, or None."""
    H = hyperplanes(M)
    if not H:
        return None
    arr = np.array(H, dtype=np.int64)
    full = M.full
    if count == 1:
        hit = np.flatnonzero(arr == full)
        return (H[hit[0]],) if hit.size else None
    if count == 2:
        for h in H:
            hit = np.flatnonzero((arr | h) == full)
            if hit.size:
                return h, H[hit[0]]
        return None
    if count == 3:
        for i, h in enumerate(H):
            for g in H[i:]:
                hit = np.flatnonzero((arr | h | g) == full)
                if hit.size:
                    return h, g, H[hit[0]]
        return None
    raise ValueError("count must be 1, 2 or 3")


def is_round(M: Matroid) -> bool:
    return covering_hyperplanes(M, 2) is None


def s_connectivity(M: Matroid, s: Sequence[int]) -> tuple[bool, int | None]:
    """Check (s0,...,st)-connectivity; return the shortlex-least violating F."""
    lt = M.lam_table
    pc = bits.popcounts(M.n).astype(np.int16)
    small_side = np.minimum(pc, M.n - pc)
    bad = np.zeros(lt.shape[0], dtype=bool)
    for i, si in enumerate(s):
        bad |= (lt == i) & (small_side > si)
    hit = np.flatnonzero(bad)
    if hit.size == 0:
        return True, None
    return False, min((int(h) for h in hit), key=bits.shortlex_key)


def is_connected(M: Matroid) -> bool:
    return s_connectivity(M, (0,))[0]


def is_3_connected(M: Matroid) -> bool:
    return s_connectivity(M, (0, 1))[0]


def is_weakly_4_connected(M: Matroid) -> bool:
    return s_connectivity(M, (0, 1, 4))[0]


@dataclass
class ConnectivityReport:
    connected: bool
    three_connected: bool
    weakly_four_connected: bool
    svec: tuple[int, ...] | None = None
    svec_ok: bool | None = None
    witness: int | None = None

    def to_json(self, M: Matroid) -> dict:
        out = {
            "connected": self.connected,
            "three_connected": self.three_connected,
            "weakly_four_connected": self.weakly_four_connected,
        }
        if self.svec is not None:
            out["svec"] = list(self.svec)
            out["svec_ok"] = self.svec_ok
            out["witness"] = None if self.witness is None else M.labels_of(self.witness)
        return out


def connectivity_report(M: Matroid, s: Sequence[int] | None = None) -> ConnectivityReport:
    M.scan_guard()
    rep = ConnectivityReport(is_connected(M), is_3_connected(M), is_weakly_4_connected(M))
    if s is not None:
        s = tuple(int(x) for x in s)
        if any(x < 0 for x in s):
            raise PreconditionError("connectivity sequence must be nonnegative")
        rep.svec = s
        rep.svec_ok, rep.witness = s_connectivity(M, s)
    return rep


def k_connected_set_violation(M: Matroid, Z: MaskLike, k: int) -> int | None:
    """Shortlex-least A with lambda(A) < min(|A & Z|, |Z - A|, k - 1), else None."""
    z = M.mask(Z)
    lt = M.lam_table
    idx = bits.all_masks(M.n)
    inside = bits.popcounts(M.n)[idx & z].astype(np.int16)
    outside = bits.popcount(z) - inside
    bound = np.minimum(np.minimum(inside, outside), k - 1)
    hit = np.flatnonzero(lt < bound)
    if hit.size == 0:
        return None
    return min((int(h) for h in hit), key=bits.shortlex_key)


def is_k_connected_set(M: Matroid, Z: MaskLike, k: int) -> bool:
    return k_connected_set_violation(M, Z, k) is None


def circuits(M: Matroid, max_size: int | None = None) -> list[int]:
    """Circuits of M (optionally only those with at most ``max_size`` elements)."""
    t = M.rank_table()
    pc = bits.popcounts(M.n)
    dep = t < pc
    # minimal dependent: dependent and every single-element deletion independent
    minimal = dep.copy()
    for i in range(M.n):
        v = minimal.reshape(-1, 2, 1 << i)
        d = dep.reshape(-1, 2, 1 << i)
        v[:, 1, :] &= ~d[:, 0, :]
    if max_size is not None:
        minimal &= pc <= max_size
    return [int(x) for x in np.flatnonzero(minimal)]
