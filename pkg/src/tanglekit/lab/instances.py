"""The instance pool the suites quantify over.

Every instance has a self-describing name (``binary:9,4,2``, ``paving:12,1,6``,
...) so a failure witness can be rebuilt from the name alone.
"""
from __future__ import annotations

import hashlib
import zlib
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .. import bits
from .. import corpus
from .. import matroid as mt
from .. import tangle as tg
from ..errors import StructuralError
from ..matroid import Matroid


@dataclass(frozen=True)
class PoolConfig:
    """Which instances make up the pool; all seeds are fixed here."""

    orders: tuple[int, ...] = (2, 3, 4, 5)
    classics: tuple[str, ...] = (
        "u25", "u36b", "w3", "w5", "fano", "ag32", "k33", "k5", "r10", "p8", "u3_13", "u4_13",
        "u37par", "u37ser", "u48par2", "k5ser", "r10par", "u4_9ser2",
    )
    extensions: tuple[int, ...] = tuple(range(10))
    uniform_extensions: tuple[tuple[int, int, int, int], ...] = (
        (3, 7, 5, 0), (3, 7, 5, 1), (3, 7, 5, 2), (3, 8, 4, 3), (4, 8, 4, 4), (3, 6, 6, 5),
    )
    binary: tuple[tuple[int, int, int], ...] = (
        (6, 3, 1), (7, 3, 2), (8, 4, 1), (9, 4, 2), (9, 5, 3), (10, 4, 4), (10, 5, 5), (11, 5, 6), (12, 6, 7),
    )
    paving: tuple[tuple[int, int, int], ...] = (
        (10, 1, 4), (11, 2, 5), (12, 1, 6), (12, 3, 6), (12, 4, 4), (12, 5, 5),
    )
    paving_duals: tuple[tuple[int, int, int], ...] = ((10, 1, 4), (12, 1, 6), (12, 3, 6))
    glued: tuple[tuple[int, int, int], ...] = (  # (rank a, rank b, seed)
        (4, 3, 0), (4, 3, 1), (4, 4, 0), (4, 4, 2), (5, 4, 0), (3, 3, 1),
    )
    # thirteen-point rank-3 paving matroids with lines of at most four points
    large_paving: tuple[tuple[int, int], ...] = ((13, 0), (13, 1), (13, 2), (14, 3))
    large_paving_duals: tuple[tuple[int, int], ...] = ((13, 0),)


def _classic(name: str) -> Matroid:
    if name == "u25":
        return mt.uniform(2, 5)
    if name == "u36b":
        return mt.uniform(3, 6, [f"v{i}" for i in range(1, 7)])
    if name == "u3_13":
        return mt.uniform(3, 13)
    if name == "u4_13":
        return mt.uniform(4, 13)
    if name in ("u37b", "u48b", "u4_9"):
        r, n = {"u37b": (3, 7), "u48b": (4, 8), "u4_9": (4, 9)}[name]
        return mt.uniform(r, n, [f"e{i}" for i in range(1, n + 1)])
    if name.startswith("w") and name[1:].isdigit():
        return corpus.wheel(int(name[1:]))
    if name == "fano":
        cols = [[v >> j & 1 for j in range(3)] for v in range(1, 8)]
        return mt.linear(2, cols, list("1234567"))
    if name == "ag32":
        cols = [[1] + [v >> j & 1 for j in range(3)] for v in range(8)]
        return mt.linear(2, cols, [f"g{i}" for i in range(1, 9)])
    if name == "k33":
        edges = [(u, v) for u in range(3) for v in range(3, 6)]
        return mt.graphic(6, edges, [f"{u}{v}" for u, v in edges])
    if name == "k5":
        edges = [(u, v) for u in range(5) for v in range(u + 1, 5)]
        return mt.graphic(5, edges, [f"{u}{v}" for u, v in edges])
    if name == "r10":
        vecs = [v for v in range(32) if bits.popcount(v) == 3]
        return mt.linear(2, [[v >> j & 1 for j in range(5)] for v in vecs], [f"r{i}" for i in range(1, 11)])
    if name in _DECORATED:
        base, ops = _DECORATED[name]
        M = _classic(base)
        for j, (kind, label) in enumerate(ops, 1):
            M = _add_beside(M, label, f"{kind[0]}{j}", series=kind == "series")
        return M
    if name == "p8":
        # the ternary rank-4 matroid P8
        cols = [
            [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1],
            [0, 1, 1, 2], [1, 0, 1, 1], [1, 1, 0, 1], [2, 1, 1, 0],
        ]
        return mt.linear(3, cols, [f"p{i}" for i in range(1, 9)])
    raise StructuralError(f"unknown classic instance {name!r}")


# base instance plus elements added in parallel / in series with a named element
_DECORATED = {
    "u37par": ("u37b", [("parallel", "e1")]),
    "u37ser": ("u37b", [("series", "e2")]),
    "u48par2": ("u48b", [("parallel", "e1"), ("parallel", "e5")]),
    "k5ser": ("k5", [("series", "01")]),
    "r10par": ("r10", [("parallel", "r3")]),
    "u4_9ser2": ("u4_9", [("series", "e1"), ("series", "e1")]),
}


def _add_beside(M: Matroid, label: str, new: str, series: bool) -> Matroid:
    """Add ``new`` parallel to ``label`` (or in series, through the dual)."""
    W = mt.dual(M) if series else M
    out = mt.principal_extension(W, W.closure([label]), new)
    return mt.dual(out) if series else out


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",")]


def build(name: str) -> Matroid:
    """Rebuild an instance from its pool name."""
    kind, _, arg = name.partition(":")
    if kind == "corpus":
        return corpus.entry(arg).matroid()
    if kind == "classic":
        return _classic(arg)
    if kind == "ext":
        return corpus.random_extension_matroid(int(arg))
    if kind == "uext":
        r, n, extra, seed = _ints(arg)
        return corpus.random_extension_matroid(seed, extra=extra, base=(r, n))
    if kind == "binary":
        return corpus.random_binary_matroid(*_ints(arg))
    if kind in ("paving", "paving*"):
        n, seed, line = _ints(arg)
        P = corpus.random_rank3_paving(n, seed, max_line=line)
        return mt.dual(P) if kind == "paving*" else P
    if kind == "glued":
        ra, rb, seed = _ints(arg)
        return corpus.random_glued_matroid(seed, ranks=(ra, rb))
    raise StructuralError(f"unknown instance name {name!r}")


def pool_names(cfg: PoolConfig | None = None) -> list[str]:
    cfg = cfg or PoolConfig()
    names = [f"corpus:{n}" for n in corpus.entries()]
    names += [f"classic:{c}" for c in cfg.classics]
    names += [f"ext:{s}" for s in cfg.extensions]
    names += ["uext:" + ",".join(map(str, t)) for t in cfg.uniform_extensions]
    names += ["binary:" + ",".join(map(str, t)) for t in cfg.binary]
    names += ["paving:" + ",".join(map(str, t)) for t in cfg.paving]
    names += ["paving*:" + ",".join(map(str, t)) for t in cfg.paving_duals]
    names += ["glued:" + ",".join(map(str, t)) for t in cfg.glued]
    names += [f"paving:{n},{s},4" for n, s in cfg.large_paving]
    names += [f"paving*:{n},{s},4" for n, s in cfg.large_paving_duals]
    return names


@lru_cache(maxsize=None)
def _size(name: str) -> int:
    return build(name).n


def _split_selector(selector: str) -> list[str]:
    """Comma-separated names, where numeric fields stay with their name (``binary:9,4,2``)."""
    parts: list[str] = []
    for tok in (t.strip() for t in selector.split(",")):
        if parts and tok.isdigit() and ":" in parts[-1]:
            parts[-1] += "," + tok
        elif tok:
            parts.append(tok)
    return parts


def select(selector: str = "all", max_n: int | None = None, cfg: PoolConfig | None = None) -> list[str]:
    """Pool names matching the selector, optionally capped by ground-set size.

    ``all``, ``corpus`` (named corpus and classics), ``random`` (seeded
    generators), or a comma-separated list of names or name prefixes.
    """
    names = pool_names(cfg)
    if selector == "all":
        out = names
    elif selector == "corpus":
        out = [n for n in names if n.startswith(("corpus:", "classic:"))]
    elif selector == "random":
        out = [n for n in names if not n.startswith(("corpus:", "classic:"))]
    else:
        out = []
        for part in _split_selector(selector):
            hit = [n for n in names if n == part or n.startswith(part)]
            if not hit:
                build(part)  # raises for an unknown name
                hit = [part]
            out += [h for h in hit if h not in out]
    if max_n is not None:
        out = [n for n in out if _size(n) <= max_n]
    return out


def fingerprint(M: Matroid) -> str:
    h = hashlib.sha1(",".join(M.labels).encode())
    h.update(M.rank_table().astype(np.uint8).tobytes())
    return h.hexdigest()[:12]


class Case:
    """One instance plus memoized tangles, tangle matroids and breadths."""

    SAMPLE = 4096
    EXHAUSTIVE_N = 10

    def __init__(self, name: str, orders: tuple[int, ...] = (2, 3, 4, 5)):
        self.name = name
        self.M = build(name)
        self.orders = orders
        self._tangles: dict[int, list[tg.Tangle]] = {}
        self._mt: dict[tuple, Matroid] = {}
        self._br: dict[tuple, tg.BreadthCertificate] = {}

    @property
    def fingerprint(self) -> str:
        return fingerprint(self.M)

    @property
    def exhaustive(self) -> bool:
        return self.M.n <= self.EXHAUSTIVE_N

    def rng(self, salt: str = "") -> np.random.Generator:
        return np.random.default_rng(zlib.crc32((self.name + salt).encode()))

    def subsets(self, salt: str = "") -> np.ndarray:
        """Every subset when n <= 10, otherwise a fixed seeded sample."""
        if self.exhaustive:
            return bits.all_masks(self.M.n)
        return self.rng(salt).integers(0, 1 << self.M.n, size=self.SAMPLE, dtype=np.int64)

    def tangles(self, k: int) -> list[tg.Tangle]:
        if k not in self._tangles:
            self._tangles[k] = tg.enumerate_tangles(self.M, k)
        return self._tangles[k]

    def all_tangles(self, min_order: int = 2) -> list[tg.Tangle]:
        return [T for k in self.orders if k >= min_order for T in self.tangles(k)]

    def tangle_matroid(self, T: tg.Tangle) -> Matroid:
        if T.key not in self._mt:
            self._mt[T.key] = tg.tangle_matroid(T, check=False).matroid
        return self._mt[T.key]

    def breadth(self, T: tg.Tangle) -> tg.BreadthCertificate:
        if T.key not in self._br:
            self._br[T.key] = tg.breadth(T)
        return self._br[T.key]

    def labels(self, mask: int) -> list[str]:
        return self.M.labels_of(int(mask))
