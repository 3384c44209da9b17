"""Tangles across single-element minors and the breadth-preserving reduction.

Deletion cases are handled by running the contraction machinery on the dual
matroid with the same tangle: a family is a tangle of M exactly when it is a
tangle of M*, and M*/a = (M\\a)*.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import bits
from . import connectivity as cn
from . import matroid as mt
from . import tangle as tg
from .config import caps
from .errors import DomainError, InvariantError, PreconditionError, ResourceCapError, StructuralError
from .matroid import MaskLike, Matroid
from .tangle import Tangle

log = logging.getLogger(__name__)

KINDS = ("delete", "contract")


@dataclass(frozen=True)
class Removal:
    element: str
    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise StructuralError(f"removal kind must be delete or contract, got {self.kind!r}")

    def apply(self, M: Matroid) -> Matroid:
        if self.kind == "delete":
            return mt.delete(M, [self.element])
        return mt.contract(M, [self.element])

    def to_json(self) -> dict:
        return {"element": self.element, "kind": self.kind}

    def __str__(self) -> str:
        sym = "\\" if self.kind == "delete" else "/"
        return sym + self.element


def apply_path(M: Matroid, path: Iterable[Removal]) -> Matroid:
    for r in path:
        M = r.apply(M)
    return M


def all_removals(M: Matroid) -> list[Removal]:
    """Every single-element removal, label order, deletion before contraction."""
    return [Removal(lab, kind) for lab in M.labels for kind in KINDS]


def _positions(M: Matroid, N: Matroid) -> list[int]:
    return [M.index(lab) for lab in N.labels]


def _as_path(removal: Removal | Sequence[Removal]) -> list[Removal]:
    if isinstance(removal, Removal):
        return [removal]
    return list(removal)


# -- induced and generated tangles -------------------------------------------

def induce_up(M: Matroid, path: Sequence[Removal], T_N: Tangle) -> Tangle:
    """{A : lambda_M(A) <= k-2 and A & E(N) small in T_N}."""
    N = apply_path(M, path)
    if N.labels != T_N.matroid.labels or not N.same_as(T_N.matroid):
        raise PreconditionError("tangle does not live on the minor reached by the removal path")
    bad = tg.check_tangle(T_N)
    if bad is not None:
        raise PreconditionError(f"input family is not a tangle: violates {bad.axiom}")
    pos = _positions(M, N)
    down = bits.gather(bits.all_masks(M.n), pos)
    small = (M.lam_table <= T_N.order - 2) & T_N.small_table[down]
    return tg.tangle_from_small_table(M, T_N.order, small)


def restricted_seeds(T: Tangle, N: Matroid) -> list[int]:
    """H & E(N) for every maximal small H, as masks of N."""
    pos = _positions(T.matroid, N)
    return sorted({bits.gather_int(h, pos) for h in T.maximal_small})


@dataclass(frozen=True)
class Generated:
    status: str  # "none" | "unique" | "multiple"
    minor: Matroid
    tangle: Tangle | None = None
    count: int = 0

    @property
    def unique(self) -> bool:
        return self.status == "unique"


def generated_tangle(
    M: Matroid, T: Tangle, removal: Removal | Sequence[Removal], node_budget: int | None = 200_000
) -> Generated:
    """Tangles of the minor that contain every A & E(N), A small in T."""
    N = apply_path(M, _as_path(removal))
    found = tg.enumerate_tangles(N, T.order, seeds=restricted_seeds(T, N), node_budget=node_budget)
    if not found:
        return Generated("none", N)
    if len(found) > 1:
        return Generated("multiple", N, None, len(found))
    return Generated("unique", N, found[0], 1)


# -- Type I / Type II orientation --------------------------------------------

@dataclass(frozen=True)
class FlatContext:
    flat: int  # mask in M
    rank: int
    element: str
    kind: str = "contract"


@dataclass(frozen=True)
class OrientationVerdict:
    small: int  # masks of the minor
    large: int
    type: str  # "I" | "II"
    justification: str  # "weak-side" | "canon-Y"


def _work_matroid(M: Matroid, kind: str) -> Matroid:
    return M if kind == "contract" else mt.dual(M)


def flat_context(M: Matroid, T: Tangle, flat: MaskLike, element: str, kind: str) -> FlatContext:
    F = M.mask(flat)
    MT = tg.tangle_matroid(T, check=False).matroid
    return FlatContext(F, MT.rank(F), element, kind)


def context_problem(M: Matroid, T: Tangle, ctx: FlatContext) -> str | None:
    """First failed hypothesis of the flat context, or None."""
    MT = tg.tangle_matroid(T, check=False).matroid
    F, t, k = ctx.flat, ctx.rank, T.order
    a = M.index(ctx.element)
    if not F >> a & 1:
        return "element is not in the flat"
    if MT.closure(F) != F or MT.rank(F) != t:
        return "not a flat of the tangle matroid with the stated rank"
    if t > k - 2:
        return "flat rank exceeds k-2"
    N = Removal(ctx.element, ctx.kind).apply(M)
    Fn = bits.gather_int(F & ~(1 << a), _positions(M, N))
    if N.lam(Fn) != M.lam(F) or M.lam(F) != t:
        return "lambda of the flat is not preserved by the removal"
    if not cn.is_solid(N, Fn):
        return "flat minus the element is not solid in the minor"
    return None


def classify_separation(
    M: Matroid, T: Tangle, removal: Removal, X: MaskLike, ctx: FlatContext | None = None
) -> OrientationVerdict:
    """Orient the separation (X, E(N)-X) of the minor N."""
    N = removal.apply(M)
    x = N.mask(X)
    y = N.full ^ x
    k = T.order
    if N.lam(x) > k - 2:
        raise PreconditionError("not a (k-1)-separation of the minor")
    pos = _positions(M, N)
    ux, uy = bits.scatter_int(x, pos), bits.scatter_int(y, pos)
    wx, wy = T.is_weak(ux), T.is_weak(uy)
    if wx and wy:
        raise InvariantError(f"both sides {N.labels_of(x)} and {N.labels_of(y)} are weak")
    if wx or wy:
        return OrientationVerdict(x if wx else y, y if wx else x, "I", "weak-side")
    if ctx is None:
        raise DomainError("Type II separation needs a flat context")
    if ctx.element != removal.element or ctx.kind != removal.kind:
        raise PreconditionError("flat context is for a different removal")
    W = _work_matroid(M, removal.kind)
    a = 1 << M.index(removal.element)
    if not (M.lam(ux) == M.lam(uy) == k - 1 and W.closure(ux) & a and W.closure(uy) & a):
        raise InvariantError("Type II separation without the ambiguous-side structure")
    Fn = bits.gather_int(ctx.flat & ~a, pos)
    Gn = N.full & ~Fn

    def canon(side: int) -> bool:
        return N.lam(side & Fn) < ctx.rank and N.lam(side & Gn) <= k - 2

    cx, cy = canon(x), canon(y)
    if cx == cy:
        raise InvariantError("Type II separation has no unique canonical side")
    return OrientationVerdict(x if cx else y, y if cx else x, "II", "canon-Y")


@dataclass(frozen=True)
class Determined:
    minor: Matroid
    tangle: Tangle | None
    cover: tuple[int, ...] | None  # three small sets covering E(N) when not a tangle
    type_two: int  # number of Type II separations
    titanic: bool


def determined_family(M: Matroid, T: Tangle, ctx: FlatContext, check: bool = True) -> Determined:
    """The family fixed by Type I / Type II orientation; a tangle when it has no 3-cover."""
    if check:
        problem = context_problem(M, T, ctx)
        if problem is not None:
            raise PreconditionError(problem)
    k = T.order
    N = Removal(ctx.element, ctx.kind).apply(M)
    pos = _positions(M, N)
    a = 1 << M.index(ctx.element)
    lamN = N.lam_table
    masks = bits.all_masks(N.n)
    comp = N.full ^ masks
    weak = T.weak_table[bits.scatter(masks, pos)]
    weak_c = weak[comp]
    sep = lamN <= k - 2
    if np.any(sep & weak & weak_c):
        raise InvariantError("a separation of the minor has two weak sides")
    typeII = sep & ~weak & ~weak_c
    Fn = bits.gather_int(ctx.flat & ~a, pos)
    Gn = N.full & ~Fn
    cond = (lamN[masks & Fn] < ctx.rank) & (lamN[masks & Gn] <= k - 2)
    if np.any(typeII & (cond == cond[comp])):
        raise InvariantError("a Type II separation has no unique canonical side")
    small = sep & (weak | (typeII & cond))
    closed_down = bits.down_or(small.copy()) & sep
    if not np.array_equal(closed_down, small):
        raise InvariantError("determined family is not closed under separating subsets")
    titanic = cn.is_titanic(N, Fn)
    cand = tg.tangle_from_small_table(N, k, small)
    for h in cand.maximal_small:
        if bits.popcount(N.full ^ h) == 1:
            return Determined(N, None, (h,), int(typeII.sum() // 2), titanic)
    cover = tg._three_cover(list(cand.maximal_small), N.full)
    if cover is not None or (N.n == 0 and k >= 2):
        return Determined(N, None, cover, int(typeII.sum() // 2), titanic)
    return Determined(N, cand, None, int(typeII.sum() // 2), titanic)


# -- reduction ---------------------------------------------------------------

RULES = ("rank0-loop", "non3conn-tutte", "rank2-guts", "interior-keepint", "dual-of-any", "fallback-exhaustive")


@dataclass
class Step:
    removal: Removal
    rule: str
    breadth: int
    tangle: Tangle
    checked_family: bool = False  # determined family computed and matched

    def to_json(self) -> dict:
        return {"element": self.removal.element, "kind": self.removal.kind, "rule": self.rule, "breadth": self.breadth}


@dataclass
class ReductionTrace:
    start_breadth: int
    steps: list[Step] = field(default_factory=list)
    rejected: list[tuple[str, str, str]] = field(default_factory=list)  # (removal, rule, reason)

    @property
    def path(self) -> list[Removal]:
        return [s.removal for s in self.steps]

    def to_json(self, final: Matroid, final_tangle: Tangle) -> dict:
        return {
            "steps": [s.to_json() for s in self.steps],
            "final": final.expr,
            "final_tangle": final_tangle.to_json(),
        }


def _candidates(M: Matroid, T: Tangle, MT: Matroid, witness: int) -> Iterator[tuple[Removal, str, FlatContext | None]]:
    """Rule-ordered candidate steps; the first one that validates is taken."""
    k = T.order
    labels = M.labels
    # rank-0 flat: loops of the tangle matroid
    loops = MT.closure(0)
    for i in bits.indices(loops):
        yield Removal(labels[i], "delete"), "rank0-loop", FlatContext(loops, 0, labels[i], "delete")
    ok3, _ = cn.s_connectivity(M, (0, 1))
    if not ok3:
        lt = M.lam_table
        pc = bits.popcounts(M.n)
        hits = np.flatnonzero(T.small_table & (lt == 1) & (pc >= 2) & (pc <= M.n - 2))
        for x in sorted((int(h) for h in hits), key=bits.shortlex_key):
            F = MT.closure(x)
            for i in bits.indices(x):
                rem = Removal(labels[i], "delete")
                kind = "delete" if cn.is_connected(rem.apply(M)) else "contract"
                yield Removal(labels[i], kind), "non3conn-tutte", FlatContext(F, MT.rank(F), labels[i], kind)
        return
    lt = M.lam_table
    pc = bits.popcounts(M.n)
    hits = np.flatnonzero(T.small_table & (lt == 2) & (pc >= 5) & (pc <= M.n - 5))
    if hits.size == 0:
        return
    x = min((int(h) for h in hits), key=bits.shortlex_key)
    F = MT.closure(x)
    t = MT.rank(F)
    if M.rank(F) == 2:
        for i in bits.indices(cn.guts(M, F) & F & ~witness):
            yield Removal(labels[i], "delete"), "rank2-guts", FlatContext(F, t, labels[i], "delete")
        return
    if mt.dual(M).rank(F) == 2:
        for i in bits.indices(cn.coguts(M, F) & F & ~witness):
            yield Removal(labels[i], "contract"), "dual-of-any", FlatContext(F, t, labels[i], "contract")
        return
    for i in bits.indices(F):
        for kind in KINDS:
            rem = Removal(labels[i], kind)
            N = rem.apply(M)
            if not cn.is_3_connected(N):
                continue
            Fn = bits.gather_int(F & ~(1 << i), _positions(M, N))
            if N.lam(Fn) != M.lam(F):
                continue
            if bits.popcount(cn.interior(N, Fn)) < 2:
                continue
            rule = "interior-keepint" if kind == "delete" else "dual-of-any"
            yield rem, rule, FlatContext(F, t, labels[i], kind)


def _validate(M: Matroid, T: Tangle, rem: Removal, ctx: FlatContext | None, b: int) -> tuple[Tangle | None, str, bool]:
    gen = generated_tangle(M, T, rem)
    if not gen.unique:
        return None, f"generated tangle: {gen.status}", False
    Tn = gen.tangle
    if tg.breadth(Tn).value != b:
        return None, "breadth changed", False
    matched = False
    if ctx is not None and context_problem(M, T, ctx) is None:
        det = determined_family(M, T, ctx, check=False)
        if det.tangle is None or det.tangle != Tn:
            raise InvariantError(
                f"determined family disagrees with the generated tangle for {rem} "
                f"(flat {M.labels_of(ctx.flat)}, rank {ctx.rank})"
            )
        matched = True
    return Tn, "", matched


def _state_dump(M: Matroid, T: Tangle, trace: ReductionTrace) -> str:
    import json

    return json.dumps(
        {"matroid": M.expr, "tangle": T.to_json(), "trace": [s.to_json() for s in trace.steps], "rejected": trace.rejected}
    )


def reduction_step(M: Matroid, T: Tangle, b: int, trace: ReductionTrace) -> tuple[Removal, str, Tangle, bool]:
    MT = tg.tangle_matroid(T, check=False).matroid
    witness = tg.breadth(T).witness
    tried: set[Removal] = set()
    for rem, rule, ctx in _candidates(M, T, MT, witness):
        if rem in tried:
            continue
        tried.add(rem)
        Tn, reason, matched = _validate(M, T, rem, ctx, b)
        if Tn is not None:
            return rem, rule, Tn, matched
        trace.rejected.append((str(rem), rule, reason))
        log.warning("rule %s candidate %s rejected: %s", rule, rem, reason)
    for rem in all_removals(M):
        if rem in tried:
            continue
        Tn, reason, _ = _validate(M, T, rem, None, b)
        if Tn is not None:
            return rem, "fallback-exhaustive", Tn, False
    raise InvariantError("no breadth-preserving removal exists; state: " + _state_dump(M, T, trace))


def reduce_to_weakly_4_connected(M: Matroid, T: Tangle) -> tuple[Matroid, Tangle, ReductionTrace]:
    """Remove elements one at a time, keeping the generated tangle's breadth, until weakly 4-connected."""
    if T.order < 4:
        raise DomainError("reduction needs a tangle of order at least 4")
    if T.matroid is not M and not (T.matroid.labels == M.labels and T.matroid.same_as(M)):
        raise PreconditionError("tangle belongs to a different matroid")
    M.scan_guard()
    bad = tg.check_tangle(T)
    if bad is not None:
        raise PreconditionError(f"input family is not a tangle: violates {bad.axiom}")
    b = tg.breadth(T).value
    trace = ReductionTrace(b)
    while not cn.is_weakly_4_connected(M):
        rem, rule, Tn, matched = reduction_step(M, T, b, trace)
        M = rem.apply(M)
        T = Tn
        trace.steps.append(Step(rem, rule, b, T, matched))
        log.info("%s via %s (breadth %d, %d elements left)", rem, rule, b, M.n)
    return M, T, trace


# -- breadth criticality -----------------------------------------------------

@dataclass(frozen=True)
class RemovalOutcome:
    removal: Removal
    status: str  # "none" | "unique" | "multiple"
    breadth: int | None

    def to_json(self) -> dict:
        out = self.removal.to_json()
        out.update(status=self.status, breadth=self.breadth)
        return out


@dataclass(frozen=True)
class CriticalityReport:
    critical: bool
    breadth: int
    table: tuple[RemovalOutcome, ...]
    complete: bool = True
    explored: int = 0


def is_breadth_critical_one_step(M: Matroid, T: Tangle) -> CriticalityReport:
    b = tg.breadth(T).value
    rows = []
    for rem in all_removals(M):
        gen = generated_tangle(M, T, rem)
        br = tg.breadth(gen.tangle).value if gen.unique else None
        rows.append(RemovalOutcome(rem, gen.status, br))
    critical = all(r.breadth is None or r.breadth < b for r in rows)
    return CriticalityReport(critical, b, tuple(rows), True, len(rows))


def is_breadth_critical_recursive(M: Matroid, T: Tangle, node_budget: int | None = None) -> CriticalityReport:
    """Check every proper minor reachable within the node budget, smallest removals first.

    A minor is identified by its (deleted, contracted) pair; minors with equal
    labels and rank tables share one generated-tangle computation.
    """
    budget = caps().critical_nodes if node_budget is None else node_budget
    b = tg.breadth(T).value
    seen: set[tuple[int, int]] = set()
    memo: dict[tuple, RemovalOutcome] = {}
    rows: list[RemovalOutcome] = []
    queue: deque[tuple[int, int, tuple[Removal, ...]]] = deque([(0, 0, ())])
    explored = 0
    complete = True
    while queue:
        D, C, path = queue.popleft()
        for i in bits.indices(M.full & ~(D | C)):
            for kind in KINDS:
                D2, C2 = (D | 1 << i, C) if kind == "delete" else (D, C | 1 << i)
                if (D2, C2) in seen:
                    continue
                if explored >= budget:
                    complete = False
                    queue.clear()
                    break
                seen.add((D2, C2))
                explored += 1
                p2 = path + (Removal(M.labels[i], kind),)
                N = mt.minor(M, D2, C2)
                key = (N.labels, N.rank_table().tobytes()) if N.n else (N.labels, b"")
                if key not in memo:
                    gen = generated_tangle(M, T, p2)
                    br = tg.breadth(gen.tangle).value if gen.unique else None
                    memo[key] = RemovalOutcome(p2[-1], gen.status, br)
                    rows.append(RemovalOutcome(p2[-1], gen.status, br))
                    if br is not None and br >= b:
                        return CriticalityReport(False, b, tuple(rows), True, explored)
                if N.n:
                    queue.append((D2, C2, p2))
            else:
                continue
            break
    return CriticalityReport(True, b, tuple(rows), complete, explored)
