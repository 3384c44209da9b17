"""Named example matroids and seeded random generators.

Every constructor returns a :class:`Matroid` whose ``expr`` rebuilds it
exactly, so corpus entries can be shipped as JSON expressions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import bits
from . import connectivity as cn
from . import matroid as mt
from .errors import DomainError, PreconditionError, StructuralError
from .expr import build, dumps
from .matroid import Matroid

__all__ = [
    "build",
    "k4",
    "wheel",
    "section9_matroid",
    "section9_graph",
    "random_binary_matroid",
    "random_extension_matroid",
    "random_glued_matroid",
    "random_rank3_paving",
    "CorpusEntry",
    "entries",
    "entry",
    "write_corpus",
]

K4_EDGES = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]


def k4(labels: Sequence[str] = "abcdef") -> Matroid:
    return mt.graphic(4, K4_EDGES, list(labels))


def wheel(r: int) -> Matroid:
    """Graphic matroid of the wheel with r spokes; spokes s1.., rim edges w1.."""
    if r < 2:
        raise DomainError("a wheel needs at least two spokes")
    edges = [[0, i] for i in range(1, r + 1)] + [[i, i % r + 1] for i in range(1, r + 1)]
    labels = [f"s{i}" for i in range(1, r + 1)] + [f"w{i}" for i in range(1, r + 1)]
    return mt.graphic(r + 1, edges, labels)


# K4 on vertices 1..4 with a=24, b=14, c=13, d=23, e=12, f=34, so that the
# triangles are {c,d,e}, {a,b,e}, {b,c,f}, {a,d,f}.
_SEC9_K4 = {"a": (2, 4), "b": (1, 4), "c": (1, 3), "d": (2, 3), "e": (1, 2), "f": (3, 4)}


def section9_matroid(s: int = 6) -> Matroid:
    """The 14+ element weakly 4-connected breadth-critical example.

    M(K4) plus U_{3,s}, f1 and f2 freely on the lines {e,e1} and {f,e2}, g1 and
    g2 freely on the flats E+{f1,e} and E+{f2,f} (E the U_{3,s} part), then
    e and f deleted.
    """
    if s < 6:
        raise DomainError(f"the construction needs s >= 6, got {s}")
    names = list(_SEC9_K4)
    K = mt.graphic(4, [[u - 1, v - 1] for u, v in _SEC9_K4.values()], names)
    U = mt.uniform(3, s)
    E = [f"e{i}" for i in range(1, s + 1)]
    M = mt.direct_sum(K, U)
    M = mt.principal_extension(M, ["e", "e1"], "f1")
    M = mt.principal_extension(M, ["f", "e2"], "f2")
    M = mt.principal_extension(M, E + ["f1", "e"], "g1")
    M = mt.principal_extension(M, E + ["f2", "f"], "g2")
    return mt.delete(M, ["e", "f"])


# label swaps fixing everything else that should be automorphisms of the example
SECTION9_SYMMETRIES = (
    {"a": "d", "d": "a", "b": "c", "c": "b"},
    {"c": "d", "d": "c", "a": "b", "b": "a"},
)


def permuted(M: Matroid, perm: dict[str, str]) -> Matroid:
    """Relabel M by ``perm`` (missing labels fixed), keeping the ground-set order of M."""
    src = [M.index(perm.get(lab, lab)) for lab in M.labels]
    idx = bits.scatter(bits.all_masks(M.n), src)
    return mt.from_rank_table(M.labels, M.rank_table()[idx])


def _is_stable(edges: Sequence[Sequence[int]], verts: set[int]) -> bool:
    return not any(u in verts and v in verts for u, v in edges)


SECTION9_EXTRA_EDGES = ((2, 5), (2, 6), (3, 6), (3, 7), (4, 7), (4, 8), (2, 4), (1, 2), (1, 3), (1, 4))


def k44_edges() -> list[tuple[int, int]]:
    return [(u, v) for u in (5, 6, 7, 8) for v in (9, 10, 11, 12)]


@dataclass(frozen=True)
class GraphExample:
    matroid: Matroid
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    facts: dict


def section9_graph(
    H_edges: Sequence[Sequence[int]] | None = None, stable_four: Sequence[int] = (5, 6, 7, 8)
) -> GraphExample:
    """Graph G = H plus vertices 1..4 and ten fixed edges, as a graphic matroid.

    Vertex names are integers; ``stable_four`` plays the role of {5,6,7,8}.
    """
    H = [tuple(sorted(map(int, e))) for e in (k44_edges() if H_edges is None else H_edges)]
    if len(set(H)) != len(H) or any(u == v for u, v in H):
        raise DomainError("H must be simple")
    hverts = sorted({v for e in H for v in e})
    four = [int(v) for v in stable_four]
    if len(set(four)) != 4 or not set(four) <= set(hverts):
        raise DomainError("stable_four must be four vertices of H")
    if not _is_stable(H, set(four)):
        raise DomainError(f"{four} is not a stable set of H")
    if set(hverts) & {1, 2, 3, 4}:
        raise DomainError("H must not use vertices 1..4")
    rename = dict(zip((5, 6, 7, 8), four))
    extra = [(u, rename.get(v, v)) for u, v in SECTION9_EXTRA_EDGES]
    edges = H + [tuple(sorted(e)) for e in extra]
    verts = sorted({1, 2, 3, 4} | set(hverts))
    vid = {v: i for i, v in enumerate(verts)}
    labels = [f"{u}-{v}" for u, v in edges]
    M = mt.graphic(len(verts), [[vid[u], vid[v]] for u, v in edges], labels)
    facts = {"h_triangle_free": _triangle_free(H), "h_4_connected": _four_connected(H)}
    return GraphExample(M, tuple(verts), tuple(edges), facts)


def _triangle_free(edges: Sequence[tuple[int, int]]) -> bool:
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return not any(adj[u] & adj[v] for u, v in edges)


def _four_connected(edges: Sequence[tuple[int, int]]) -> bool:
    import networkx as nx

    G = nx.Graph(list(edges))
    return G.number_of_nodes() > 4 and nx.node_connectivity(G) >= 4


# -- random instances --------------------------------------------------------

def random_binary_matroid(n: int, r: int, seed: int) -> Matroid:
    """Binary matroid of n nonzero columns in GF(2)^r, retried until it has rank r."""
    if not 0 <= r <= n:
        raise DomainError("need 0 <= r <= n")
    if r == 0 and n:
        raise DomainError("rank 0 would force zero columns")
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        cols = rng.integers(1, 1 << r, size=n) if r else np.zeros(0, dtype=np.int64)
        vecs = [[int(c) >> j & 1 for j in range(r)] for c in cols]
        M = mt.linear(2, vecs, [f"x{i}" for i in range(1, n + 1)])
        if M.rank() == r:
            return M
    raise DomainError(f"could not reach rank {r} with {n} nonzero binary columns")


_EXTENSION_BASES = ((3, 7), (3, 8), (4, 8), (3, 9))


def random_extension_matroid(seed: int, extra: int = 3, base: tuple[int, int] | None = None) -> Matroid:
    """A uniform matroid grown by random principal extensions and coextensions.

    Each new element is placed freely on a random nonempty proper flat of the
    current matroid (extension) or of its dual (coextension), so the result
    keeps a large uniform core while picking up low-order separations.
    """
    rng = np.random.default_rng(seed)
    r, n = base if base is not None else _EXTENSION_BASES[int(rng.integers(len(_EXTENSION_BASES)))]
    M = mt.uniform(r, n)
    for j in range(1, extra + 1):
        co = bool(rng.integers(2))
        W = mt.dual(M) if co else M
        fl = [f for f in cn.flats(W) if f and W.rank(f) < W.rank()]
        F = fl[int(rng.integers(len(fl)))]
        lab = f"p{j}"
        if co:
            M = mt.dual(mt.principal_extension(W, F, lab))
        else:
            M = mt.principal_extension(M, F, lab)
    return M


def random_glued_matroid(
    seed: int, sizes: tuple[int, int] = (6, 6), ranks: tuple[int, int] = (4, 3), prime: int = 7
) -> Matroid:
    """Random vectors from two subspaces meeting in a plane, over GF(prime).

    The two parts have ranks ``ranks`` and together lambda = 2, which gives
    3-connected instances with big 3-separations on both sides.
    """
    rng = np.random.default_rng(seed)
    ra, rb = ranks
    r = ra + rb - 2
    cols = []
    for i in range(sizes[0]):
        cols.append([int(x) for x in rng.integers(0, prime, ra)] + [0] * (r - ra))
    for i in range(sizes[1]):
        cols.append([0] * (r - rb) + [int(x) for x in rng.integers(0, prime, rb)])
    labels = [f"a{i}" for i in range(1, sizes[0] + 1)] + [f"b{i}" for i in range(1, sizes[1] + 1)]
    return mt.linear(prime, cols, labels)


def random_rank3_paving(n: int, seed: int, max_line: int = 4, lines: int | None = None) -> Matroid:
    """Simple rank-3 matroid on n points given by random lines of 3..max_line points.

    Any two lines share at most one point, which is exactly the condition for
    the line family to define a rank-3 paving matroid.
    """
    if n < 3:
        raise DomainError("need at least three points")
    rng = np.random.default_rng(seed)
    want = lines if lines is not None else int(rng.integers(1, n // 2 + 2))
    chosen: list[int] = []
    for _ in range(50 * want):
        if len(chosen) >= want:
            break
        size = int(rng.integers(3, max_line + 1))
        pts = rng.choice(n, size=size, replace=False)
        L = bits.from_indices(int(p) for p in pts)
        if all(bits.popcount(L & c) <= 1 for c in chosen):
            chosen.append(L)
    return rank3_from_lines(n, chosen)


def rank3_from_lines(n: int, lines: Sequence[int], labels: Sequence[str] | None = None) -> Matroid:
    pc = bits.popcounts(n).astype(np.int16)
    t = np.minimum(pc, 3)
    masks = bits.all_masks(n)
    for L in lines:
        inside = (masks & ~L) == 0
        t[inside & (pc >= 3)] = 2
    labs = list(labels) if labels is not None else [f"q{i}" for i in range(1, n + 1)]
    return mt.from_rank_table(labs, t.astype(np.uint8))


# -- named entries -----------------------------------------------------------

@dataclass(frozen=True)
class CorpusEntry:
    name: str
    make: Callable[[], Matroid]
    facts: dict = field(default_factory=dict)

    def matroid(self) -> Matroid:
        return self.make()


def _entries() -> dict[str, CorpusEntry]:
    out = [
        CorpusEntry("u37", lambda: mt.uniform(3, 7), {"order": 4, "tangles": 1, "breadth": 7, "weak4": True}),
        CorpusEntry("k4", k4, {"order": 3, "tangles": 1, "breadth": 6}),
        CorpusEntry("w4", lambda: wheel(4), {"three_connected": True}),
        CorpusEntry("u36", lambda: mt.uniform(3, 6), {"order": 3, "tangles": 1, "breadth": 6, "order4_tangles": 0}),
        CorpusEntry("u48", lambda: mt.uniform(4, 8), {"order": 4, "tangles": 1, "breadth": 8}),
        CorpusEntry(
            "u37+u11",
            lambda: mt.direct_sum(mt.uniform(3, 7), mt.uniform(1, 1, ["z"])),
            {"order": 4, "tangles": 1, "breadth": 7, "weak4": False},
        ),
        CorpusEntry(
            "u37+u23",
            lambda: mt.direct_sum(mt.uniform(3, 7), mt.uniform(2, 3, ["y1", "y2", "y3"])),
            {"order": 4, "tangles": 1, "breadth": 7, "weak4": False},
        ),
        CorpusEntry(
            "sec9_s6",
            lambda: section9_matroid(6),
            {"order": 4, "tangles": 1, "breadth": 12, "weak4": True, "size": 14, "critical": True},
        ),
    ]
    return {e.name: e for e in out}


def entries() -> dict[str, CorpusEntry]:
    return _entries()


def entry(name: str) -> CorpusEntry:
    try:
        return _entries()[name]
    except KeyError:
        raise StructuralError(f"unknown corpus entry {name!r}") from None


def example(spec: str) -> Matroid:
    """Parse the gen-example grammar: u37 | k4 | sec9:S | random:N,R,SEED | any entry name."""
    if spec.startswith("sec9:"):
        return section9_matroid(int(spec.split(":", 1)[1]))
    if spec.startswith("random:"):
        try:
            n, r, seed = (int(x) for x in spec.split(":", 1)[1].split(","))
        except ValueError:
            raise StructuralError(f"random example needs N,R,SEED, got {spec!r}") from None
        return random_binary_matroid(n, r, seed)
    return entry(spec).matroid()


def write_corpus(directory: str | Path) -> list[Path]:
    """Write every named entry as <name>.json (MatroidExpr) plus an index of facts."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    index = {}
    for name, e in _entries().items():
        path = d / f"{name}.json"
        path.write_text(dumps(e.matroid().expr) + "\n", encoding="utf-8")
        written.append(path)
        index[name] = e.facts
    ipath = d / "index.json"
    ipath.write_text(json.dumps(index, indent=1, sort_keys=True) + "\n", encoding="utf-8")
    written.append(ipath)
    return written
