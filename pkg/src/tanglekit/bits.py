"""Integer bitmask helpers and whole-powerset transforms.

Subsets of an n-element ground set are ints whose bit i stands for element i.
Tables indexed by every subset are numpy arrays of length 2**n; the transforms
below operate in place on such tables, one ground-set bit at a time.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

import numpy as np


def popcount(x: int) -> int:
    return bin(x).count("1")


def indices(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def from_indices(idx: Iterable[int]) -> int:
    mask = 0
    for i in idx:
        mask |= 1 << i
    return mask


def lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def shortlex_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Order by size, then by the sorted index tuple."""
    return popcount(mask), tuple(indices(mask))


def iter_submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@lru_cache(maxsize=32)
def popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.uint8)
    for i in range(n):
        pc.reshape(-1, 2, 1 << i)[:, 1, :] += 1
    pc.setflags(write=False)
    return pc


@lru_cache(maxsize=32)
def all_masks(n: int) -> np.ndarray:
    a = np.arange(1 << n, dtype=np.int64)
    a.setflags(write=False)
    return a


def submask_array(mask: int) -> np.ndarray:
    """Every submask of ``mask`` as an int64 array, in increasing compressed order."""
    pos = indices(mask)
    out = np.zeros(1 << len(pos), dtype=np.int64)
    for j, p in enumerate(pos):
        out.reshape(-1, 2, 1 << j)[:, 1, :] |= 1 << p
    return out


def scatter(src: np.ndarray, positions: list[int]) -> np.ndarray:
    """Map compressed masks (bit j) to masks with bit ``positions[j]``."""
    out = np.zeros_like(src)
    for j, p in enumerate(positions):
        out |= ((src >> j) & 1) << p
    return out


def gather(src: np.ndarray, positions: list[int]) -> np.ndarray:
    """Inverse of scatter: pick bits ``positions`` and compress them."""
    out = np.zeros_like(src)
    for j, p in enumerate(positions):
        out |= ((src >> p) & 1) << j
    return out


def gather_int(mask: int, positions: list[int]) -> int:
    out = 0
    for j, p in enumerate(positions):
        if mask >> p & 1:
            out |= 1 << j
    return out


def scatter_int(mask: int, positions: list[int]) -> int:
    out = 0
    for j, p in enumerate(positions):
        if mask >> j & 1:
            out |= 1 << p
    return out


def _n_of(table: np.ndarray) -> int:
    return int(table.shape[0]).bit_length() - 1


def down_or(table: np.ndarray) -> np.ndarray:
    """In place: table[A] becomes OR of table[B] over supersets B of A."""
    for i in range(_n_of(table)):
        v = table.reshape(-1, 2, 1 << i)
        v[:, 0, :] |= v[:, 1, :]
    return table


def up_or(table: np.ndarray) -> np.ndarray:
    """In place: table[A] becomes OR of table[B] over subsets B of A."""
    for i in range(_n_of(table)):
        v = table.reshape(-1, 2, 1 << i)
        v[:, 1, :] |= v[:, 0, :]
    return table


def superset_min(table: np.ndarray) -> np.ndarray:
    """In place: table[A] becomes min of table[B] over supersets B of A."""
    for i in range(_n_of(table)):
        v = table.reshape(-1, 2, 1 << i)
        np.minimum(v[:, 0, :], v[:, 1, :], out=v[:, 0, :])
    return table


def strict_superset_any(table: np.ndarray) -> np.ndarray:
    """Boolean table: does some proper superset of A have a true entry?"""
    sup = down_or(table.copy())
    out = np.zeros_like(table)
    for i in range(_n_of(table)):
        o = out.reshape(-1, 2, 1 << i)
        s = sup.reshape(-1, 2, 1 << i)
        o[:, 0, :] |= s[:, 1, :]
    return out


def maximal_members(table: np.ndarray) -> list[int]:
    """Inclusion-maximal masks among the true entries of a boolean table."""
    keep = table & ~strict_superset_any(table)
    return [int(x) for x in np.flatnonzero(keep)]
