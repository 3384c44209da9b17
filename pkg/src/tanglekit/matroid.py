"""Finite matroids given by an exact rank oracle.

A :class:`Matroid` is an ordered tuple of labels plus a rank function on int
bitmasks.  Every backend answers single rank queries directly; a full rank
table (one byte per subset) is built lazily and used by every exhaustive
scan.  Each matroid also carries its construction as a JSON-ready expression
(see :mod:`tanglekit.expr`).
"""
from __future__ import annotations

from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np

from . import bits
from .config import caps
from .errors import PreconditionError, ResourceCapError, StructuralError

MaskLike = int | Iterable[str]


class Matroid:
    """Immutable matroid on ``labels`` with rank oracle ``rank_one``."""

    def __init__(
        self,
        labels: Sequence[str],
        rank_one: Callable[[int], int],
        expr: dict,
        table_builder: Callable[[], np.ndarray] | None = None,
        table: np.ndarray | None = None,
    ):
        labels = tuple(labels)
        if len(set(labels)) != len(labels):
            raise StructuralError(f"duplicate labels in {labels}")
        for lab in labels:
            if not isinstance(lab, str) or not lab:
                raise StructuralError(f"bad label {lab!r}")
        self.labels = labels
        self.n = len(labels)
        self.full = (1 << self.n) - 1
        self.expr = expr
        self._rank_one = rank_one
        self._table_builder = table_builder
        self._table = table
        self._index = {lab: i for i, lab in enumerate(labels)}
        if table is not None:
            table.setflags(write=False)

    def __repr__(self) -> str:
        return f"Matroid(n={self.n}, rank={self.rank()}, kind={self.expr.get('kind')})"

    # -- masks -------------------------------------------------------------
    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise StructuralError(f"unknown element {label!r}") from None

    def mask(self, items: MaskLike) -> int:
        if isinstance(items, (int, np.integer)):
            m = int(items)
            if m < 0 or m > self.full:
                raise StructuralError(f"mask {m:#x} outside ground set of size {self.n}")
            return m
        if isinstance(items, str):
            items = [items]
        m = 0
        for lab in items:
            m |= 1 << self.index(lab)
        return m

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits.indices(mask)]

    # -- rank --------------------------------------------------------------
    def rank(self, items: MaskLike | None = None) -> int:
        m = self.full if items is None else self.mask(items)
        if self._table is not None:
            return int(self._table[m])
        return int(self._rank_one(m))

    def has_table(self) -> bool:
        return self._table is not None

    def rank_table(self) -> np.ndarray:
        if self._table is None:
            if self.n > caps().table_max:
                raise ResourceCapError(
                    f"rank table for {self.n} elements exceeds cap {caps().table_max}"
                )
            if self._table_builder is not None:
                t = self._table_builder()
            else:
                t = np.fromiter(
                    (self._rank_one(m) for m in range(1 << self.n)),
                    dtype=np.uint8,
                    count=1 << self.n,
                )
            t = np.ascontiguousarray(t, dtype=np.uint8)
            t.setflags(write=False)
            self._table = t
        return self._table

    def scan_guard(self) -> None:
        if self.n > caps().scan_max:
            raise ResourceCapError(
                f"exhaustive scan over 2^{self.n} subsets exceeds cap 2^{caps().scan_max}"
            )

    @cached_property
    def lam_table(self) -> np.ndarray:
        self.scan_guard()
        t = self.rank_table().astype(np.int16)
        lt = t + t[::-1] - int(t[-1])
        lt.setflags(write=False)
        return lt

    def lam(self, items: MaskLike) -> int:
        m = self.mask(items)
        if self._table is not None:
            t = self._table
            return int(t[m]) + int(t[self.full ^ m]) - int(t[self.full])
        return self.rank(m) + self.rank(self.full ^ m) - self.rank()

    def closure(self, items: MaskLike) -> int:
        a = self.mask(items)
        r = self.rank(a)
        out = a
        for i in range(self.n):
            b = 1 << i
            if not a & b and self.rank(a | b) == r:
                out |= b
        return out

    def coclosure(self, items: MaskLike) -> int:
        # x in cl*(A) - A  iff  x is a coloop of M|(E - A)
        a = self.mask(items)
        rest = self.full ^ a
        r_rest = self.rank(rest)
        out = a
        for i in range(self.n):
            b = 1 << i
            if rest & b and self.rank(rest ^ b) < r_rest:
                out |= b
        return out

    def is_closed(self, items: MaskLike) -> bool:
        a = self.mask(items)
        return self.closure(a) == a

    def same_as(self, other: "Matroid") -> bool:
        """Rank-table equality on identically labelled ground sets."""
        if self.labels != other.labels:
            return False
        return bool(np.array_equal(self.rank_table(), other.rank_table()))


# -- linear algebra over GF(p) ---------------------------------------------

def _reduce_gf2(v: int, basis: dict[int, int]) -> int:
    while v:
        h = v.bit_length() - 1
        row = basis.get(h)
        if row is None:
            return v
        v ^= row
    return 0


def _reduce_gfp(v: tuple[int, ...], basis: dict[int, tuple[int, ...]], p: int):
    v = list(v)
    while True:
        lead = next((i for i, x in enumerate(v) if x % p), None)
        if lead is None:
            return None
        row = basis.get(lead)
        if row is None:
            inv = pow(v[lead], p - 2, p)
            return lead, tuple((x * inv) % p for x in v)
        c = v[lead]
        v = [(x - c * y) % p for x, y in zip(v, row)]


def _gf2_rank(vectors: Sequence[int], mask: int) -> int:
    basis: dict[int, int] = {}
    for i in bits.indices(mask):
        v = _reduce_gf2(vectors[i], basis)
        if v:
            basis[v.bit_length() - 1] = v
    return len(basis)


def _gfp_rank(vectors: Sequence[tuple[int, ...]], p: int, mask: int) -> int:
    basis: dict[int, tuple[int, ...]] = {}
    for i in bits.indices(mask):
        red = _reduce_gfp(vectors[i], basis, p)
        if red is not None:
            basis[red[0]] = red[1]
    return len(basis)


def _gf2_table(vectors: Sequence[int]) -> np.ndarray:
    n = len(vectors)
    table = np.zeros(1 << n, dtype=np.uint8)

    def rec(mask: int, start: int, basis: dict[int, int]) -> None:
        r = len(basis)
        for j in range(start, n):
            child = mask | (1 << j)
            v = _reduce_gf2(vectors[j], basis)
            if v:
                nb = dict(basis)
                nb[v.bit_length() - 1] = v
                table[child] = r + 1
                rec(child, j + 1, nb)
            else:
                table[child] = r
                rec(child, j + 1, basis)

    rec(0, 0, {})
    return table


def _gfp_table(vectors: Sequence[tuple[int, ...]], p: int) -> np.ndarray:
    n = len(vectors)
    table = np.zeros(1 << n, dtype=np.uint8)

    def rec(mask: int, start: int, basis: dict) -> None:
        r = len(basis)
        for j in range(start, n):
            child = mask | (1 << j)
            red = _reduce_gfp(vectors[j], basis, p)
            if red is not None:
                nb = dict(basis)
                nb[red[0]] = red[1]
                table[child] = r + 1
                rec(child, j + 1, nb)
            else:
                table[child] = r
                rec(child, j + 1, basis)

    rec(0, 0, {})
    return table


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _default_labels(n: int) -> list[str]:
    return [f"e{i + 1}" for i in range(n)]


# -- constructors ----------------------------------------------------------

def uniform(r: int, n: int, labels: Sequence[str] | None = None) -> Matroid:
    if not 0 <= r <= n:
        raise StructuralError(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
    expr: dict = {"kind": "uniform", "rank": r, "size": n}
    if labels is None:
        labels = _default_labels(n)
    else:
        labels = list(labels)
        if len(labels) != n:
            raise StructuralError("label count does not match size")
        if labels != _default_labels(n):
            expr["labels"] = labels

    def one(m: int) -> int:
        return min(bits.popcount(m), r)

    def table() -> np.ndarray:
        return np.minimum(bits.popcounts(n), r).astype(np.uint8)

    return Matroid(labels, one, expr, table)


def graphic(vertices: int, edges: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> Matroid:
    edges = [(int(u), int(v)) for u, v in edges]
    for u, v in edges:
        if not (0 <= u < vertices and 0 <= v < vertices):
            raise StructuralError(f"edge {(u, v)} uses a vertex outside 0..{vertices - 1}")
    labels = list(labels) if labels is not None else _default_labels(len(edges))
    if len(labels) != len(edges):
        raise StructuralError("label count does not match edge count")
    expr = {"kind": "graphic", "vertices": vertices, "edges": [list(e) for e in edges], "labels": labels}

    def one(m: int) -> int:
        # spanning-forest edge count via union-find
        parent = list(range(vertices))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for i in bits.indices(m):
            a, b = find(edges[i][0]), find(edges[i][1])
            if a != b:
                parent[a] = b
                r += 1
        return r

    # incidence vectors over GF(2) give the same rank function
    vecs = [0 if u == v else (1 << u) | (1 << v) for u, v in edges]
    return Matroid(labels, one, expr, lambda: _gf2_table(vecs))


def linear(prime: int, columns: Sequence[Sequence[int]], labels: Sequence[str] | None = None) -> Matroid:
    if not _is_prime(prime):
        raise StructuralError(f"{prime} is not prime")
    cols = [tuple(int(x) % prime for x in c) for c in columns]
    if cols and len({len(c) for c in cols}) != 1:
        raise StructuralError("columns must share one length")
    labels = list(labels) if labels is not None else _default_labels(len(cols))
    if len(labels) != len(cols):
        raise StructuralError("label count does not match column count")
    expr = {"kind": "linear", "prime": prime, "columns": [list(c) for c in cols], "labels": labels}
    if prime == 2:
        vecs = [sum(x << i for i, x in enumerate(c)) for c in cols]
        return Matroid(labels, lambda m: _gf2_rank(vecs, m), expr, lambda: _gf2_table(vecs))
    return Matroid(
        labels, lambda m: _gfp_rank(cols, prime, m), expr, lambda: _gfp_table(cols, prime)
    )


def from_rank_table(labels: Sequence[str], ranks: Sequence[int] | np.ndarray) -> Matroid:
    labels = list(labels)
    t = np.asarray(ranks)
    if t.shape != (1 << len(labels),):
        raise StructuralError(f"rank table needs {1 << len(labels)} entries, got {t.shape}")
    if t.min(initial=0) < 0 or t.max(initial=0) > 255:
        raise StructuralError("ranks must fit in one byte")
    t = np.array(t, dtype=np.uint8)
    expr = {"kind": "rank_table", "labels": labels, "ranks": [int(x) for x in t]}
    return Matroid(labels, lambda m: int(t[m]), expr, table=t)


def dual(M: Matroid) -> Matroid:
    n, full = M.n, M.full

    def one(m: int) -> int:
        return bits.popcount(m) - M.rank() + M.rank(full ^ m)

    def table() -> np.ndarray:
        t = M.rank_table().astype(np.int16)
        return (bits.popcounts(n).astype(np.int16) - int(t[-1]) + t[::-1]).astype(np.uint8)

    return Matroid(M.labels, one, {"kind": "dual", "of": M.expr}, table)


def minor(M: Matroid, delete: MaskLike = 0, contract: MaskLike = 0) -> Matroid:
    """M \\ delete / contract, labels and their order preserved."""
    D, C = M.mask(delete), M.mask(contract)
    if D & C:
        raise StructuralError(f"delete and contract sets overlap: {M.labels_of(D & C)}")
    if not D and not C:
        return M
    keep = [i for i in range(M.n) if not (D | C) >> i & 1]
    labels = [M.labels[i] for i in keep]
    rc = M.rank(C)
    expr = M.expr
    if D:
        expr = {"kind": "delete", "of": expr, "elements": M.labels_of(D)}
    if C:
        expr = {"kind": "contract", "of": expr, "elements": M.labels_of(C)}

    def one(m: int) -> int:
        return M.rank(bits.scatter_int(m, keep) | C) - rc

    def table() -> np.ndarray:
        idx = bits.scatter(bits.all_masks(len(keep)), keep) | C
        return (M.rank_table()[idx].astype(np.int16) - rc).astype(np.uint8)

    return Matroid(labels, one, expr, table)


def delete(M: Matroid, items: MaskLike) -> Matroid:
    return minor(M, delete=items)


def contract(M: Matroid, items: MaskLike) -> Matroid:
    return minor(M, contract=items)


def restrict(M: Matroid, items: MaskLike) -> Matroid:
    return minor(M, delete=M.full ^ M.mask(items))


def _disambiguate(parts_labels: list[tuple[str, ...]]) -> list[dict[str, str]]:
    """Deterministic suffixing of colliding labels, part by part."""
    used: set[str] = set()
    maps: list[dict[str, str]] = []
    for j, labs in enumerate(parts_labels):
        own = set(labs)
        mp: dict[str, str] = {}
        for lab in labs:
            new = lab
            if lab in used:
                c = j + 1
                new = f"{lab}_{c}"
                while new in used or new in own:
                    c += 1
                    new = f"{lab}_{c}"
                mp[lab] = new
            used.add(new)
        maps.append(mp)
    return maps


def direct_sum(*parts: Matroid) -> Matroid:
    if not parts:
        raise StructuralError("direct sum of nothing")
    maps = _disambiguate([p.labels for p in parts])
    labels: list[str] = []
    offsets: list[int] = []
    for p, mp in zip(parts, maps):
        offsets.append(len(labels))
        labels.extend(mp.get(lab, lab) for lab in p.labels)
    expr: dict = {"kind": "direct_sum", "parts": [p.expr for p in parts]}
    if any(maps):
        expr["relabel"] = maps

    def one(m: int) -> int:
        return sum(p.rank((m >> off) & p.full) for p, off in zip(parts, offsets))

    def table() -> np.ndarray:
        t = parts[0].rank_table().astype(np.uint8)
        for p in parts[1:]:
            t = (p.rank_table()[:, None] + t[None, :]).ravel()
        return t

    return Matroid(labels, one, expr, table)


def principal_extension(M: Matroid, flat: MaskLike, new_label: str) -> Matroid:
    """Add ``new_label`` freely on the closed set ``flat``."""
    F = M.mask(flat)
    if new_label in M.labels:
        raise StructuralError(f"label {new_label!r} already in ground set")
    if M.closure(F) != F:
        raise PreconditionError(f"{M.labels_of(F)} is not closed")
    n = M.n
    bit = 1 << n
    expr = {"kind": "principal_extension", "of": M.expr, "flat": M.labels_of(F), "new": new_label}

    def one(m: int) -> int:
        a = m & M.full
        r = M.rank(a)
        if m & bit:
            return r if M.rank(a | F) == r else r + 1
        return r

    def table() -> np.ndarray:
        t = M.rank_table()
        spans = t[bits.all_masks(n) | F] == t
        return np.concatenate([t, (t + (~spans)).astype(np.uint8)])

    return Matroid(list(M.labels) + [new_label], one, expr, table)


def truncation(M: Matroid, r: int) -> Matroid:
    if r < 0:
        raise StructuralError("truncation rank must be nonnegative")
    t = np.minimum(M.rank_table(), r).astype(np.uint8)
    return from_rank_table(M.labels, t)
