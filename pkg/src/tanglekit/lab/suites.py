"""The suite catalog: each suite checks one statement on every selected instance.

A suite function receives a :class:`Probe` and records checks with
``probe.expect``.  Hypotheses are tested first; an instance where they never
hold records a skip instead of a vacuous pass.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator

import numpy as np

from .. import bits
from .. import connectivity as cn
from .. import matroid as mt
from .. import minors as mn
from .. import tangle as tg
from ..matroid import Matroid
from . import oracles as orc
from .instances import Case


@dataclass
class Probe:
    case: Case
    checks: int = 0
    failures: list[dict] = field(default_factory=list)
    skips: dict[str, int] = field(default_factory=dict)
    max_failures: int = 20

    @property
    def M(self) -> Matroid:
        return self.case.M

    def expect(self, cond, claim: str, **witness) -> bool:
        self.checks += 1
        if not cond and len(self.failures) < self.max_failures:
            self.failures.append({"claim": claim, "witness": _jsonable(witness)})
        return bool(cond)

    def skip(self, reason: str) -> None:
        self.skips[reason] = self.skips.get(reason, 0) + 1


def _jsonable(x):
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, mn.Removal):
        return str(x)
    return x


@dataclass(frozen=True)
class Suite:
    id: str
    statement: str
    run: Callable[[Probe], None]
    max_n: int = 12
    min_n: int = 0


SUITES: dict[str, Suite] = {}


def suite(sid: str, statement: str, max_n: int = 12, min_n: int = 0):
    def deco(fn):
        SUITES[sid] = Suite(sid, statement, fn, max_n, min_n)
        return fn

    return deco


# -- shared helpers ----------------------------------------------------------

def _rt(M: Matroid) -> np.ndarray:
    return M.rank_table().astype(np.int16)


def _pc(n: int) -> np.ndarray:
    return bits.popcounts(n).astype(np.int16)


def _first(mask: np.ndarray) -> int | None:
    hit = np.flatnonzero(mask)
    return None if hit.size == 0 else int(hit[0])


def _minor_index(M: Matroid, N: Matroid) -> np.ndarray:
    """M-mask of every N-mask."""
    return bits.scatter(bits.all_masks(N.n), [M.index(lab) for lab in N.labels])


def _dual_form(kind: str) -> str:
    return "" if kind == "contract" else " (dual form)"


def _removals(case: Case, salt: str, limit: int = 8) -> list[mn.Removal]:
    rems = mn.all_removals(case.M)
    if case.exhaustive or len(rems) <= limit:
        return rems
    pick = case.rng(salt).choice(len(rems), size=limit, replace=False)
    return [rems[i] for i in sorted(pick)]


def _generated(case: Case, T: tg.Tangle, path) -> mn.Generated:
    return mn.generated_tangle(case.M, T, path)


def _max_small_3sep(T: tg.Tangle) -> list[int]:
    """Maximal members of {A small : lambda(A) <= 2}."""
    return bits.maximal_members(T.small_table & (T.matroid.lam_table <= 2))


def _circuits_through(N: Matroid, z: int) -> list[int]:
    return [c for c in cn.circuits(N) if c >> z & 1]


def freely_placed(N: Matroid, Z: int, z: int) -> bool:
    """z in cl(Z - z) and every circuit through z spans a set containing Z."""
    if not N.closure(Z & ~(1 << z)) >> z & 1:
        return False
    return all(N.closure(C) & Z == Z for C in _circuits_through(N, z))


def fixed_by_flat(N: Matroid, F: int, a: int, flats: list[int]) -> bool:
    """Some flat A with a in A, a in cl(A - a) and F & A = {a}."""
    ab = 1 << a
    for A in flats:
        if A & ab and A & F == ab and N.closure(A ^ ab) & ab:
            return True
    return False


def clones(N: Matroid, a: int, b: int) -> bool:
    perm = list(range(N.n))
    perm[a], perm[b] = b, a
    masks = bits.all_masks(N.n)
    swapped = bits.scatter(masks, perm)
    t = N.rank_table()
    return bool(np.array_equal(t, t[swapped]))


def _tangles(case: Case, min_order: int = 2) -> list[tg.Tangle]:
    return case.all_tangles(min_order)


def _need_tangles(p: Probe, Ts: list, what: str) -> bool:
    if not Ts:
        p.skip(f"no {what}")
        return False
    return True


# -- section 2: connectivity calculus ----------------------------------------

@suite("S2.symmetry", "lambda(A) = lambda(E-A), lambda(empty) = 0, and lambda is the same in M and M*")
def s2_symmetry(p: Probe) -> None:
    M = p.M
    lt = M.lam_table.astype(np.int16)
    full = M.full
    masks = bits.all_masks(M.n)
    bad = _first(lt != lt[full ^ masks])
    p.expect(bad is None, "lambda(A) = lambda(E-A)", A=None if bad is None else p.case.labels(bad))
    p.expect(lt[0] == 0, "lambda(empty) = 0")
    ld = mt.dual(M).lam_table.astype(np.int16)
    bad = _first(lt != ld)
    p.expect(bad is None, "lambda_M = lambda_M*", A=None if bad is None else p.case.labels(bad))


@suite("S2.submod", "lambda(A)+lambda(B) >= lambda(A&B)+lambda(A|B) and >= lambda(A-B)+lambda(B-A)")
def s2_submod(p: Probe) -> None:
    M = p.M
    lt = M.lam_table.astype(np.int16)
    rows = p.case.subsets("submod")
    if not p.case.exhaustive:
        rows = rows[:256]
    B = bits.all_masks(M.n)
    for A in rows:
        A = int(A)
        s = lt[A] + lt
        bad = _first(s < lt[A & B] + lt[A | B])
        p.expect(bad is None, "submodularity", A=p.case.labels(A), B=None if bad is None else p.case.labels(bad))
        bad = _first(s < lt[A & ~B] + lt[B & ~A])
        p.expect(bad is None, "set-difference inequality", A=p.case.labels(A),
                 B=None if bad is None else p.case.labels(bad))


@suite("S2.cocl", "for a partition (A,{x},B): x in cl*(A) iff x not in cl(B)")
def s2_cocl(p: Probe) -> None:
    M = p.M
    R, D = _rt(M), _rt(mt.dual(M))
    masks = p.case.subsets("cocl")
    for x in range(M.n):
        xb = 1 << x
        A = masks[(masks & xb) == 0]
        Bm = M.full ^ A ^ xb
        in_cocl = D[A | xb] == D[A]
        out_cl = R[Bm | xb] > R[Bm]
        bad = _first(in_cocl != out_cl)
        p.expect(bad is None, "x in cl*(A) iff x not in cl(B)", x=M.labels[x],
                 A=None if bad is None else p.case.labels(int(A[bad])))
    for A in masks[:64]:
        A = int(A)
        want = 0
        for x in range(M.n):
            if not A >> x & 1 and D[A | 1 << x] == D[A]:
                want |= 1 << x
        p.expect(M.coclosure(A) == A | want, "coclosure operator matches the dual rank table", A=p.case.labels(A))


@suite("S2.fullclosed", "fully closed A stays fully closed in minors whose ground set contains E-A")
def s2_fullclosed(p: Probe) -> None:
    M = p.M
    fc = cn.closed_table(M) & cn.closed_table(mt.dual(M))
    sets = [int(a) for a in np.flatnonzero(fc) if a]
    if not sets:
        p.skip("no nonempty fully closed set")
        return
    if len(sets) > 48:
        rng = p.case.rng("fullclosed")
        sets = [sets[i] for i in sorted(rng.choice(len(sets), size=48, replace=False))]
    rng = p.case.rng("fullclosed-pairs")
    for A in sets:
        paths = [[mn.Removal(M.labels[x], kind)] for x in bits.indices(A) for kind in mn.KINDS]
        inside = bits.indices(A)
        if len(inside) >= 2:
            x, y = rng.choice(inside, size=2, replace=False)
            paths.append([mn.Removal(M.labels[int(x)], "delete"), mn.Removal(M.labels[int(y)], "contract")])
        for path in paths:
            N = mn.apply_path(M, path)
            An = N.mask([lab for lab in M.labels_of(A) if lab in N.labels])
            p.expect(cn.is_fully_closed(N, An), "A & E(N) fully closed in N", A=p.case.labels(A), path=path)


@suite("S2.updown", "lambda(A+x) - lambda(A) is -1, 0, +1 as x lies in both, one, none of cl(A), cl*(A)")
def s2_updown(p: Probe) -> None:
    M = p.M
    R, D = _rt(M), _rt(mt.dual(M))
    lt = M.lam_table.astype(np.int16)
    masks = p.case.subsets("updown")
    for x in range(M.n):
        xb = 1 << x
        A = masks[(masks & xb) == 0]
        in_cl = (R[A | xb] == R[A]).astype(np.int16)
        in_cocl = (D[A | xb] == D[A]).astype(np.int16)
        delta = lt[A | xb] - lt[A]
        bad = _first(delta != 1 - in_cl - in_cocl)
        p.expect(bad is None, "up-down trichotomy", x=M.labels[x],
                 A=None if bad is None else p.case.labels(int(A[bad])))


@suite("S2.contract", "for a non-loop x not in A: lambda_{M/x}(A) = lambda_M(A) - [x in cl_M(A)]")
def s2_contract(p: Probe) -> None:
    M = p.M
    R = _rt(M)
    lt = M.lam_table.astype(np.int16)
    tested = False
    for x in range(M.n):
        xb = 1 << x
        if R[xb] == 0:
            continue
        tested = True
        N = mt.contract(M, xb)
        up = _minor_index(M, N)
        want = lt[up] - (R[up | xb] == R[up]).astype(np.int16)
        bad = _first(N.lam_table.astype(np.int16) != want)
        p.expect(bad is None, "contraction lowers lambda exactly when x is spanned", x=M.labels[x],
                 A=None if bad is None else N.labels_of(bad))
    if not tested:
        p.skip("every element is a loop")


def _is_triangle(M: Matroid, X: int) -> bool:
    return bits.popcount(X) == 3 and M.rank(X) == 2 and all(M.rank(X & ~(1 << i)) == 2 for i in bits.indices(X))


@suite("S2.interior", "interior is empty or has >= 2 elements; guts/coguts structure of fully closed 3-separating sets")
def s2_interior(p: Probe) -> None:
    M = p.M
    for X in p.case.subsets("interior")[:1024]:
        X = int(X)
        c = bits.popcount(cn.interior(M, X))
        p.expect(c != 1, "nonempty interior has at least two elements", X=p.case.labels(X))
    if not cn.is_3_connected(M):
        p.skip("not 3-connected")
        return
    Md = mt.dual(M)
    fc = cn.closed_table(M) & cn.closed_table(Md) & (M.lam_table <= 2) & (_pc(M.n) >= 3)
    for F in np.flatnonzero(fc):
        F = int(F)
        prof = cn.boundary_profile(M, F)
        g, c, i = (bits.popcount(v) for v in (prof.guts, prof.coguts, prof.interior))
        p.expect(prof.guts & prof.coguts == 0, "guts and coguts are disjoint", F=p.case.labels(F))
        if g and c:
            p.expect(g == c == 1, "nonempty guts and coguts are singletons", F=p.case.labels(F))
        line = M.rank(F) == 2 and prof.guts == F and c == 0 and i == 0
        coline = Md.rank(F) == 2 and prof.coguts == F and g == 0 and i == 0
        fan = (bits.popcount(F) == 4 and g == c == 1 and i == 2
               and _is_triangle(M, prof.interior | prof.guts) and _is_triangle(Md, prof.interior | prof.coguts))
        p.expect(line or coline or fan or i >= 3, "one of line / coline / 4-element fan / interior >= 3",
                 F=p.case.labels(F), guts=g, coguts=c, interior=i)


# -- section 3: tangles and tangle matroids ----------------------------------

@suite("S3.enumeration", "propagated enumeration equals raw orientation search (and order 1 gives the empty tangle)",
       max_n=8)
def s3_enumeration(p: Probe) -> None:
    M = p.M
    p.expect(tg.enumerate_tangles(M, 1) == [tg.Tangle(M, 1, ())], "order 1: the empty family is the unique tangle")
    for k in (2, 3, 4, 5):
        eng = p.case.tangles(k)
        fams = sorted(orc.tangle_family(T) for T in eng)
        if len(orc.separation_pairs(M, k)) <= 16:
            raw = orc.brute_force_tangles(M, k)
            route = "flat 2^m brute force"
        else:
            raw = orc.backtrack_tangles(M, k)
            route = "exhaustive orientation search"
        p.expect(fams == raw, f"enumeration equals {route}", order=k, engine=len(fams), oracle=len(raw))
        for T in eng:
            p.expect(tg.check_tangle(T) is None, "enumerated family satisfies the axioms", order=k)


@suite("S3.hyperplanes", "the maximal small sets are the hyperplanes of a rank-(k-1) matroid")
def s3_hyperplanes(p: Probe) -> None:
    Ts = _tangles(p.case)
    if not _need_tangles(p, Ts, "tangle of order >= 2"):
        return
    for T in Ts:
        MT = p.case.tangle_matroid(T)
        p.expect(MT.rank() == T.order - 1, "tangle matroid has rank k-1", order=T.order, rank=MT.rank())
        p.expect(sorted(cn.hyperplanes(MT)) == sorted(T.maximal_small), "hyperplanes = maximal small sets",
                 order=T.order)


@suite("S3.hall", "a matroid other than U11 is a tangle matroid iff no three hyperplanes cover its ground set")
def s3_hall(p: Probe) -> None:
    M = p.M
    for T in _tangles(p.case):
        MT = p.case.tangle_matroid(T)
        cover = cn.covering_hyperplanes(MT, 3)
        p.expect(cover is None, "no three hyperplanes of a tangle matroid cover E", order=T.order,
                 cover=None if cover is None else [p.case.labels(h) for h in cover])
    r = M.rank()
    if M.n == 1 and r == 1:
        p.skip("U11")
        return
    if r == 0 or cn.covering_hyperplanes(M, 3) is not None:
        p.skip("three hyperplanes cover E (converse not applicable)")
        return
    # converse, constructively: the order r+1 tangles of M itself
    hit = any(tg.tangle_matroid(T, check=False).matroid.same_as(M) for T in tg.enumerate_tangles(M, r + 1))
    p.expect(hit, "uncoverable matroid is the tangle matroid of an order r(M)+1 tangle of itself", rank=r)


@suite("S3.weak", "A is weak iff r_MT(A) < k-1; proper flats of M_T are small with r_MT = lambda")
def s3_weak(p: Probe) -> None:
    Ts = _tangles(p.case)
    if not _need_tangles(p, Ts, "tangle of order >= 2"):
        return
    M = p.M
    lt = M.lam_table.astype(np.int16)
    for T in Ts:
        k = T.order
        MT = p.case.tangle_matroid(T)
        rt = _rt(MT)
        bad = _first(T.weak_table != (rt < k - 1))
        p.expect(bad is None, "weak iff rank below k-1", order=k, A=None if bad is None else p.case.labels(bad))
        proper = cn.closed_table(MT) & (rt < k - 1)
        bad = _first(proper & ~(T.small_table & (rt == lt)))
        p.expect(bad is None, "proper flat is small with rank = lambda", order=k,
                 A=None if bad is None else p.case.labels(bad))


@suite("S3.formula", "rank formula of M_T; bases are the strong (k-1)-sets; independence of short sets")
def s3_formula(p: Probe) -> None:
    Ts = _tangles(p.case)
    if not _need_tangles(p, Ts, "tangle of order >= 2"):
        return
    M = p.M
    lt = M.lam_table.astype(np.int16)
    pc = _pc(M.n)
    for T in Ts:
        k = T.order
        rt = _rt(p.case.tangle_matroid(T))
        if M.n <= 10:
            bad = _first(rt != orc.tangle_rank_formula(T))
            p.expect(bad is None, "rank = k-1 on strong sets, else min lambda over small supersets", order=k,
                     A=None if bad is None else p.case.labels(bad))
        basis = (rt == k - 1) & (pc == k - 1)
        bad = _first(basis != (~T.weak_table & (pc == k - 1)))
        p.expect(bad is None, "bases are the strong sets of size k-1", order=k,
                 A=None if bad is None else p.case.labels(bad))
        low = bits.superset_min(np.where(T.small_table, lt, np.int16(k)).astype(np.int16))
        short = pc < k - 1
        indep = rt == pc
        want = T.small_table & (low >= pc)
        bad = _first(short & (indep != want))
        p.expect(bad is None, "short independent sets: small with no small superset of lambda < |A|", order=k,
                 A=None if bad is None else p.case.labels(bad))


@suite("S3.uniform", "a k-connected matroid with |E| > 3(k-2) has exactly the tangle {|A| <= k-2}, M_T = U(k-1,n)")
def s3_uniform(p: Probe) -> None:
    M = p.M
    any_k = False
    for k in p.case.orders:
        if k < 2 or M.n <= 3 * (k - 2) or (M.n == 1 and M.rank() == 1):
            continue
        if not cn.s_connectivity(M, tuple(range(k - 1)))[0]:
            continue
        any_k = True
        Ts = p.case.tangles(k)
        if not p.expect(len(Ts) == 1, "exactly one tangle of order k", order=k, found=len(Ts)):
            continue
        T = Ts[0]
        pc = _pc(M.n)
        p.expect(np.array_equal(T.small_table, pc <= k - 2), "small sets are those of size <= k-2", order=k)
        MT = p.case.tangle_matroid(T)
        p.expect(np.array_equal(_rt(MT), np.minimum(pc, k - 1)), "tangle matroid is uniform of rank k-1", order=k)
        p.expect(p.case.breadth(T).value == M.n, "breadth = |E|", order=k, breadth=p.case.breadth(T).value)
    if not any_k:
        p.skip("not k-connected for any order with |E| > 3(k-2)")


@suite("S3.kconn", "uniform restrictions of M_T of rank k-1 are k-connected sets; large ones generate the tangle")
def s3_kconn(p: Probe) -> None:
    Ts = _tangles(p.case)
    if not _need_tangles(p, Ts, "tangle of order >= 2"):
        return
    M = p.M
    for T in Ts:
        k = T.order
        MT = p.case.tangle_matroid(T)
        cert = p.case.breadth(T)
        Z, t = cert.witness, cert.value
        p.expect(tg.is_uniform_restriction(MT, Z, k - 1) and t >= k - 1, "witness is uniform of rank k-1", order=k)
        p.expect(cn.is_k_connected_set(M, Z, k), "witness is a k-connected set", order=k, Z=p.case.labels(Z))
        # every other maximal uniform restriction (sampled) is k-connected too
        wt = orc.witness_table(MT, k)
        maxi = bits.maximal_members(wt)
        for U in maxi[:8]:
            p.expect(cn.is_k_connected_set(M, U, k), "uniform restriction is a k-connected set", order=k,
                     U=p.case.labels(U))
        if k >= 3 and t >= 3 * k - 5:
            TZ = tg.tangle_from_k_connected_set(M, Z, k, check=False)
            p.expect(tg.check_tangle(TZ) is None, "T_Z is a tangle", order=k, Z=p.case.labels(Z))
            p.expect(tg.is_uniform_restriction(p.case.tangle_matroid(TZ), Z, k - 1), "M_{T_Z}|Z is uniform", order=k)
            p.expect(TZ == T, "the tangle is generated by its witness", order=k, Z=p.case.labels(Z))


@suite("S3.breadth", "branch-and-bound breadth equals the exhaustive uniform-restriction scan")
def s3_breadth(p: Probe) -> None:
    Ts = _tangles(p.case)
    if not _need_tangles(p, Ts, "tangle of order >= 2"):
        return
    for T in Ts:
        cert = p.case.breadth(T)
        size, wit = orc.breadth_oracle(p.case.tangle_matroid(T), T.order)
        p.expect(cert.value == size, "breadth value", order=T.order, engine=cert.value, oracle=size)
        p.expect(cert.witness == wit, "lexicographically least witness", order=T.order,
                 engine=p.case.labels(cert.witness), oracle=p.case.labels(wit))


@suite("S3.quotient", "cl_M(X) is inside cl_MT(X) and M_T is a quotient of M")
def s3_quotient(p: Probe) -> None:
    Ts = _tangles(p.case)
    if not _need_tangles(p, Ts, "tangle of order >= 2"):
        return
    M = p.M
    R = _rt(M)
    masks = p.case.subsets("quotient")
    for T in Ts:
        RT = _rt(p.case.tangle_matroid(T))
        for x in range(M.n):
            xb = 1 << x
            X = masks[(masks & xb) == 0]
            dm = R[X | xb] - R[X]
            dt = RT[X | xb] - RT[X]
            bad = _first((dm == 0) & (dt != 0))
            p.expect(bad is None, "closure containment", order=T.order, x=M.labels[x],
                     X=None if bad is None else p.case.labels(int(X[bad])))
            bad = _first(dm < dt)
            p.expect(bad is None, "quotient rank inequality", order=T.order, x=M.labels[x],
                     X=None if bad is None else p.case.labels(int(X[bad])))
        rng = p.case.rng("quotient-pairs")
        for _ in range(64):
            A = int(rng.integers(0, 1 << M.n))
            B = A & int(rng.integers(0, 1 << M.n))
            p.expect(R[A] - R[B] >= RT[A] - RT[B], "r_M(A)-r_M(B) >= r_MT(A)-r_MT(B) for B inside A",
                     order=T.order, A=p.case.labels(A), B=p.case.labels(B))


@suite("S3.fullyclosed", "every flat of M_T is fully closed in M")
def s3_fullyclosed(p: Probe) -> None:
    Ts = _tangles(p.case)
    if not _need_tangles(p, Ts, "tangle of order >= 2"):
        return
    M = p.M
    fc = cn.closed_table(M) & cn.closed_table(mt.dual(M))
    for T in Ts:
        flats = cn.closed_table(p.case.tangle_matroid(T))
        bad = _first(flats & ~fc)
        p.expect(bad is None, "flat of M_T is fully closed", order=T.order,
                 F=None if bad is None else p.case.labels(bad))


@suite("S3.round", "M_T is round")
def s3_round(p: Probe) -> None:
    Ts = _tangles(p.case)
    if not _need_tangles(p, Ts, "tangle of order >= 2"):
        return
    for T in Ts:
        MT = p.case.tangle_matroid(T)
        cover = cn.covering_hyperplanes(MT, 2)
        p.expect(cover is None, "no two hyperplanes cover E", order=T.order,
                 cover=None if cover is None else [p.case.labels(h) for h in cover])


@suite("S3.threeconn", "a tangle of order >= 3 in a 3-connected matroid has a 3-connected tangle matroid")
def s3_threeconn(p: Probe) -> None:
    if not cn.is_3_connected(p.M):
        p.skip("not 3-connected")
        return
    Ts = _tangles(p.case, 3)
    if not _need_tangles(p, Ts, "tangle of order >= 3"):
        return
    for T in Ts:
        ok, wit = cn.s_connectivity(p.case.tangle_matroid(T), (0, 1))
        p.expect(ok, "M_T is 3-connected", order=T.order, separation=None if ok else p.case.labels(wit))


def lines_closure_sides(M: Matroid, F: int, L: int, a: int) -> tuple[bool, bool]:
    """(a spanned by F-a and L-a in M, the same in M*)."""
    ab = 1 << a
    D = mt.dual(M)
    primal = bool(M.closure(F ^ ab) & ab and M.closure(L ^ ab) & ab)
    dual = bool(D.closure(F ^ ab) & ab and D.closure(L ^ ab) & ab)
    return primal, dual


@suite("S3.lines", "a solid rank-2 flat meets a solid proper flat of M_T in at most one element, spanned from "
       "both in M or both in M*")
def s3_lines(p: Probe) -> None:
    # The closure-only reading fails on duals of paving matroids (the tangle
    # and M_T do not see duality), so the self-dual form is checked.
    M = p.M
    if not cn.is_3_connected(M):
        p.skip("not 3-connected")
        return
    Ts = _tangles(p.case, 4)
    if not _need_tangles(p, Ts, "tangle of order >= 4"):
        return
    for T in Ts:
        MT = p.case.tangle_matroid(T)
        rt = _rt(MT)
        closed = cn.closed_table(MT)
        proper = [int(f) for f in np.flatnonzero(closed & (rt >= 2) & (rt < T.order - 1)) if cn.is_solid(M, int(f))]
        lines = [f for f in proper if rt[f] == 2]
        if not lines:
            p.skip("no solid rank-2 flat")
            continue
        for F in proper:
            for L in lines:
                if L & ~F == 0:
                    continue
                meet = F & L
                p.expect(bits.popcount(meet) <= 1, "|F & L| <= 1", order=T.order, F=p.case.labels(F),
                         L=p.case.labels(L))
                for a in bits.indices(meet):
                    p.expect(any(lines_closure_sides(M, F, L, a)), "a spanned by F-a and L-a in M or in M*",
                             order=T.order, F=p.case.labels(F), L=p.case.labels(L), a=M.labels[a])


# -- section 4: tangles in minors --------------------------------------------

@suite("S4.lowcon", "lambda_N(A & E(N)) <= lambda_M(A) for single-element minors")
def s4_lowcon(p: Probe) -> None:
    M = p.M
    lt = M.lam_table.astype(np.int16)
    for rem in mn.all_removals(M):
        N = rem.apply(M)
        up = _minor_index(M, N)
        xb = 1 << M.index(rem.element)
        ln = N.lam_table.astype(np.int16)
        bad = _first((ln > lt[up]) | (ln > lt[up | xb]))
        p.expect(bad is None, "connectivity does not grow in minors", removal=rem,
                 A=None if bad is None else N.labels_of(bad))


@suite("S4.induce", "induced families are tangles; a generated tangle induces the original")
def s4_induce(p: Probe) -> None:
    M = p.M
    Ts = _tangles(p.case)
    for rem in _removals(p.case, "induce", 6):
        N = rem.apply(M)
        for k in (2, 3, 4):
            for TN in tg.enumerate_tangles(N, k):
                up = mn.induce_up(M, [rem], TN)
                p.expect(tg.check_tangle(up) is None, "induced family is a tangle", removal=rem, order=k)
        for T in Ts:
            gen = _generated(p.case, T, rem)
            if gen.unique:
                p.expect(mn.induce_up(M, [rem], gen.tangle) == T, "generated tangle induces the original",
                         removal=rem, order=T.order)


@suite("S4.transitive", "generation composes along two removals")
def s4_transitive(p: Probe) -> None:
    M = p.M
    Ts = _tangles(p.case, 3)
    if not _need_tangles(p, Ts, "tangle of order >= 3"):
        return
    rng = p.case.rng("transitive")
    rems = mn.all_removals(M)
    for T in Ts:
        tried = 0
        for _ in range(12):
            r1 = rems[int(rng.integers(len(rems)))]
            g1 = _generated(p.case, T, r1)
            if not g1.unique:
                continue
            N = g1.minor
            r2 = mn.all_removals(N)[int(rng.integers(2 * N.n))]
            g2 = mn.generated_tangle(N, g1.tangle, r2)
            if not g2.unique:
                continue
            tried += 1
            direct = _generated(p.case, T, [r1, r2])
            p.expect(direct.unique and direct.tangle == g2.tangle.rebind(direct.minor),
                     "T generates the two-step tangle directly", order=T.order, path=[r1, r2], status=direct.status)
            if tried >= 4:
                break
        if not tried:
            p.skip("no two-step generated chain found")


@suite("S4.addweak", "T generates T_N iff the weak separating sets of N generate T_N")
def s4_addweak(p: Probe) -> None:
    M = p.M
    Ts = _tangles(p.case)
    if not _need_tangles(p, Ts, "tangle of order >= 2"):
        return
    for T in Ts:
        k = T.order
        for rem in _removals(p.case, f"addweak{k}", 6):
            N = rem.apply(M)
            up = _minor_index(M, N)
            W = np.flatnonzero((N.lam_table <= k - 2) & T.weak_table[up])
            by_small = tg.enumerate_tangles(N, k, seeds=mn.restricted_seeds(T, N))
            by_weak = tg.enumerate_tangles(N, k, seeds=[int(w) for w in W])
            p.expect(by_small == by_weak, "same tangles from restricted small sets and from weak sets",
                     order=k, removal=rem, small=len(by_small), weak=len(by_weak))


@suite("S4.ambiguous", "at most one side of a separation of M/a is weak; if neither, both have lambda_M = k-1 "
       "and span a")
def s4_ambiguous(p: Probe) -> None:
    M = p.M
    Ts = _tangles(p.case)
    if not _need_tangles(p, Ts, "tangle of order >= 2"):
        return
    lt = M.lam_table.astype(np.int16)
    for T in Ts:
        k = T.order
        for rem in mn.all_removals(M):
            N = rem.apply(M)
            W = M if rem.kind == "contract" else mt.dual(M)
            Rw = _rt(W)
            up = _minor_index(M, N)
            masks = bits.all_masks(N.n)
            X, Y = up, up[N.full ^ masks]
            sep = N.lam_table <= k - 2
            wx, wy = T.weak_table[X], T.weak_table[Y]
            bad = _first(sep & wx & wy)
            p.expect(bad is None, "at most one side weak" + _dual_form(rem.kind), order=k, removal=rem,
                     X=None if bad is None else N.labels_of(bad))
            ab = 1 << M.index(rem.element)
            neither = sep & ~wx & ~wy
            ok = (lt[X] == k - 1) & (lt[Y] == k - 1) & (Rw[X | ab] == Rw[X]) & (Rw[Y | ab] == Rw[Y])
            bad = _first(neither & ~ok)
            p.expect(bad is None, "two strong sides: lambda_M = k-1 and a spanned by both" + _dual_form(rem.kind),
                     order=k, removal=rem, X=None if bad is None else N.labels_of(bad))


def _flat_contexts(case: Case, T: tg.Tangle, need: str, limit: int | None = None) -> Iterator[tuple]:
    """(F, t, a, kind, N, Fn) with F a flat of M_T of rank t <= k-2, a in F,
    lambda_N(F-a) = lambda_M(F) and F-a solid (or titanic) in N."""
    M = case.M
    MT = case.tangle_matroid(T)
    rt = _rt(MT)
    k = T.order
    flats = [int(f) for f in np.flatnonzero(cn.closed_table(MT) & (rt <= k - 2))]
    found = 0
    for F in sorted(flats, key=bits.shortlex_key):
        for a in bits.indices(F):
            for kind in mn.KINDS:
                rem = mn.Removal(M.labels[a], kind)
                N = rem.apply(M)
                Fn = N.mask(M.labels_of(F & ~(1 << a)))
                if N.lam(Fn) != M.lam(F):
                    continue
                good = cn.is_solid(N, Fn) if need == "solid" else cn.is_titanic(N, Fn)
                if not good:
                    continue
                yield F, int(rt[F]), a, kind, N, Fn
                found += 1
                if limit is not None and found >= limit:
                    return


def _context_limit(case: Case) -> int | None:
    return None if case.exhaustive else 16


@suite("S4.canon", "a Type II separation of M/a has the canonical (X, Y) structure and Y is small in every "
       "tangle of M/a that induces T")
def s4_canon(p: Probe) -> None:
    M = p.M
    Ts = _tangles(p.case)
    lt = M.lam_table.astype(np.int16)
    seen = False
    for T in Ts:
        k = T.order
        for F, t, a, kind, N, Fn in _flat_contexts(p.case, T, "solid", _context_limit(p.case)):
            W = M if kind == "contract" else mt.dual(M)
            Rw = _rt(W)
            ab = 1 << a
            up = _minor_index(M, N)
            ln = N.lam_table.astype(np.int16)
            masks = bits.all_masks(N.n)
            comp = N.full ^ masks
            cand = (ln == k - 2) & ~T.weak_table[up] & ~T.weak_table[up[comp]] & (masks < comp)
            parts = np.flatnonzero(cand)
            if parts.size == 0:
                continue
            seen = True
            inducing = [Tn for Tn in tg.enumerate_tangles(N, k) if mn.induce_up(M, [mn.Removal(M.labels[a], kind)], Tn) == T]
            Gn = N.full & ~Fn
            for X0 in parts:
                X0 = int(X0)
                labelings = [(X0, N.full ^ X0), (N.full ^ X0, X0)]
                ok_lab = [(x, y) for x, y in labelings if ln[x & Fn] >= t and ln[y & Fn] < t]
                if not p.expect(len(ok_lab) == 1, "exactly one labeling satisfies the F-side condition" + _dual_form(kind),
                                order=k, a=M.labels[a], F=p.case.labels(F), X=N.labels_of(X0)):
                    continue
                x, y = ok_lab[0]
                ux, uy = int(up[x]), int(up[y])
                p.expect(lt[ux] == lt[uy] == k - 1 and Rw[ux | ab] == Rw[ux] and Rw[uy | ab] == Rw[uy],
                         "lambda_M(X) = lambda_M(Y) = k-1 and a spanned by both" + _dual_form(kind),
                         order=k, a=M.labels[a], X=N.labels_of(x))
                p.expect(ln[x & Gn] > k - 2 and ln[y & Gn] <= k - 2, "G-side condition" + _dual_form(kind),
                         order=k, a=M.labels[a], X=N.labels_of(x))
                p.expect(T.small_table[int(up[y & Gn])], "G & Y is small" + _dual_form(kind), order=k,
                         a=M.labels[a], Y=N.labels_of(y))
                p.expect(k >= 3, "k >= 3", order=k)
                for Tn in inducing:
                    p.expect(Tn.small_table[y], "Y is small in every inducing tangle of the minor" + _dual_form(kind),
                             order=k, a=M.labels[a], Y=N.labels_of(y))
    if not seen:
        p.skip("no Type II separation in any flat context")


@suite("S4.selection", "the determined family orients every separation once, is closed downward, holds the "
       "singletons, and equals any generated tangle")
def s4_selection(p: Probe) -> None:
    M = p.M
    Ts = _tangles(p.case)
    seen = False
    for T in Ts:
        k = T.order
        for F, t, a, kind, N, Fn in _flat_contexts(p.case, T, "solid", _context_limit(p.case)):
            seen = True
            rem = mn.Removal(M.labels[a], kind)
            ctx = mn.FlatContext(F, t, M.labels[a], kind)
            ln = N.lam_table
            # second route: orient separation by separation
            family = np.zeros(1 << N.n, dtype=bool)
            for X in np.flatnonzero(ln <= k - 2):
                X = int(X)
                if X > N.full ^ X:
                    continue
                v = mn.classify_separation(M, T, rem, X, ctx)
                family[v.small] = True
            sep = ln <= k - 2
            masks = bits.all_masks(N.n)
            where = dict(order=k, a=M.labels[a], kind=kind, F=p.case.labels(F))
            p.expect(not np.any(sep & (family == family[N.full ^ masks])), "exactly one side of each separation",
                     **where)
            p.expect(np.array_equal(bits.down_or(family.copy()) & sep, family), "closed under separating subsets",
                     **where)
            # only separating singletons can belong; for k >= 3 that is all of them
            p.expect(all(family[1 << i] for i in range(N.n) if ln[1 << i] <= k - 2),
                     "every separating singleton belongs", **where)
            det = mn.determined_family(M, T, ctx, check=False)
            if det.tangle is not None:
                p.expect(np.array_equal(det.tangle.small_table, family),
                         "vectorized and per-separation orientation agree", **where)
            gen = mn.generated_tangle(M, T, rem)
            if gen.status != "none":
                p.expect(gen.unique and det.tangle is not None
                         and det.tangle.to_json() == gen.tangle.to_json(),
                         "generated tangle equals the determined family", status=gen.status, **where)
    if not seen:
        p.skip("no flat context with a solid remainder")


@suite("S4.titcover", "titanic (no 3-partition of smaller lambda) iff no 3-cover of smaller lambda")
def s4_titcover(p: Probe) -> None:
    M = p.M
    sets = [int(A) for A in p.case.subsets("titcover") if 0 < bits.popcount(int(A)) <= 7]
    for A in sets[:160]:
        p.expect(cn.is_titanic(M, A) == orc.is_titanic_partition(M, A), "cover form agrees with partition form",
                 A=p.case.labels(A))
        p.expect(cn.is_solid(M, A) == orc.is_solid_partition(M, A), "solid check agrees with its definition",
                 A=p.case.labels(A))


@suite("S4.tittangle", "a titanic remainder of a low-rank flat makes T generate a tangle in M/a")
def s4_tittangle(p: Probe) -> None:
    Ts = _tangles(p.case)
    seen = False
    for T in Ts:
        for F, t, a, kind, N, Fn in _flat_contexts(p.case, T, "titanic", _context_limit(p.case)):
            seen = True
            gen = _generated(p.case, T, mn.Removal(p.M.labels[a], kind))
            p.expect(gen.unique, "T generates a tangle in the minor" + _dual_form(kind), order=T.order,
                     a=p.M.labels[a], F=p.case.labels(F), status=gen.status)
    if not seen:
        p.skip("no flat context with a titanic remainder")


# -- section 5: breadth does not grow ----------------------------------------

def _section5(p: Probe, check: Callable) -> None:
    seen = False
    for T in _tangles(p.case):
        MT = p.case.tangle_matroid(T)
        for F, t, a, kind, N, Fn in _flat_contexts(p.case, T, "titanic", _context_limit(p.case)):
            gen = _generated(p.case, T, mn.Removal(p.M.labels[a], kind))
            if not gen.unique:
                p.skip("generated tangle missing (reported by S4.tittangle)")
                continue
            seen = True
            MTa = tg.tangle_matroid(gen.tangle, check=False).matroid
            MTdel = mt.delete(MT, 1 << a)
            check(p, T, gen.tangle, MTdel, MTa, F, a, kind, N, Fn)
    if not seen:
        p.skip("no flat context with a titanic remainder")


@suite("S5.freer", "M_T minus a is freer than the tangle matroid of the generated tangle")
def s5_freer(p: Probe) -> None:
    def check(p, T, Ta, MTdel, MTa, F, a, kind, N, Fn):
        r1, r2 = _rt(MTdel), _rt(MTa)
        pc = _pc(MTa.n)
        where = dict(order=T.order, a=p.M.labels[a], F=p.case.labels(F))
        p.expect(MTdel.rank() == MTa.rank(), "equal rank" + _dual_form(kind), **where)
        bad = _first((r2 == pc) & (r1 < pc))
        p.expect(bad is None, "independent sets of M_{T_a} are independent in M_T minus a" + _dual_form(kind),
                 X=None if bad is None else MTa.labels_of(bad), **where)

    _section5(p, check)


@suite("S5.breadthdown", "breadth of the generated tangle is at most breadth(T)")
def s5_breadthdown(p: Probe) -> None:
    def check(p, T, Ta, MTdel, MTa, F, a, kind, N, Fn):
        b, ba = p.case.breadth(T).value, tg.breadth(Ta).value
        p.expect(ba <= b, "breadth does not grow" + _dual_form(kind), order=T.order, a=p.M.labels[a],
                 breadth=b, minor_breadth=ba)

    _section5(p, check)


@suite("S5.static", "sets containing F-a or inside E-F have equal rank in M_T minus a and in M_{T_a}")
def s5_static(p: Probe) -> None:
    def check(p, T, Ta, MTdel, MTa, F, a, kind, N, Fn):
        r1, r2 = _rt(MTdel), _rt(MTa)
        masks = bits.all_masks(MTa.n)
        Gn = MTa.full & ~Fn
        cover = (masks & Fn) == Fn
        inside = (masks & ~Gn) == 0
        where = dict(order=T.order, a=p.M.labels[a], F=p.case.labels(F))
        bad = _first(cover & (r1 != r2))
        p.expect(bad is None, "equal rank on supersets of F-a" + _dual_form(kind),
                 X=None if bad is None else MTa.labels_of(bad), **where)
        bad = _first(inside & (r1 != r2))
        p.expect(bad is None, "equal rank on subsets of E-F" + _dual_form(kind),
                 X=None if bad is None else MTa.labels_of(bad), **where)

    _section5(p, check)


# -- section 6: keeping breadth while removing elements -----------------------

@suite("S6.loops", "deleting a loop of M_T keeps a generated tangle of equal breadth")
def s6_loops(p: Probe) -> None:
    seen = False
    for T in _tangles(p.case):
        MT = p.case.tangle_matroid(T)
        b = p.case.breadth(T).value
        for a in bits.indices(MT.closure(0)):
            for kind in mn.KINDS:
                seen = True
                gen = _generated(p.case, T, mn.Removal(p.M.labels[a], kind))
                p.expect(gen.unique and tg.breadth(gen.tangle).value == b,
                         "generated tangle of equal breadth" + ("" if kind == "delete" else " (dual form)"),
                         order=T.order, a=p.M.labels[a], status=gen.status)
    if not seen:
        p.skip("tangle matroids have no loops")


@suite("S6.component", "M_T minus its loops is connected and deleting all loops keeps breadth")
def s6_component(p: Probe) -> None:
    Ts = _tangles(p.case)
    if not _need_tangles(p, Ts, "tangle of order >= 2"):
        return
    for T in Ts:
        MT = p.case.tangle_matroid(T)
        F = MT.closure(0)
        p.expect(cn.is_connected(mt.delete(MT, F)), "M_T minus loops is connected", order=T.order,
                 loops=p.case.labels(F))
        if F == 0:
            continue
        path = [mn.Removal(p.M.labels[i], "delete") for i in bits.indices(F)]
        gen = _generated(p.case, T, path)
        p.expect(gen.unique and tg.breadth(gen.tangle).value == p.case.breadth(T).value,
                 "generated tangle in M minus loops has equal breadth", order=T.order, status=gen.status)


@suite("S6.disconnected", "a tangle in a disconnected matroid is not breadth-critical")
def s6_disconnected(p: Probe) -> None:
    if cn.is_connected(p.M):
        p.skip("connected")
        return
    Ts = _tangles(p.case)
    if not _need_tangles(p, Ts, "tangle of order >= 2"):
        return
    for T in Ts:
        b = p.case.breadth(T).value
        hit = None
        for rem in mn.all_removals(p.M):
            gen = _generated(p.case, T, rem)
            if gen.unique and tg.breadth(gen.tangle).value >= b:
                hit = rem
                break
        p.expect(hit is not None, "some proper minor keeps the breadth", order=T.order)


@suite("S6.tit2", "every 2-separating set of a connected matroid is titanic")
def s6_tit2(p: Probe) -> None:
    M = p.M
    if not cn.is_connected(M):
        p.skip("not connected")
        return
    sets = [int(F) for F in np.flatnonzero(M.lam_table <= 1)]
    if len(sets) > 200:
        sets = [sets[i] for i in sorted(p.case.rng("tit2").choice(len(sets), size=200, replace=False))]
    for F in sets:
        p.expect(cn.is_titanic(M, F), "2-separating set is titanic", F=p.case.labels(F))


@suite("S6.parallel", "in a small 2-separating set, an element whose deletion stays connected can go: "
       "M_T minus a is the new tangle matroid and breadth is kept")
def s6_parallel(p: Probe) -> None:
    M = p.M
    if not cn.is_connected(M):
        p.skip("not connected")
        return
    lt = M.lam_table
    pc = bits.popcounts(M.n)
    seen = False
    for T in _tangles(p.case, 3):
        MT = p.case.tangle_matroid(T)
        b = p.case.breadth(T).value
        union = 0
        for F in np.flatnonzero(T.small_table & (lt <= 1) & (pc >= 2)):
            union |= int(F)
        for a in bits.indices(union):
            for kind in mn.KINDS:
                rem = mn.Removal(M.labels[a], kind)
                N = rem.apply(M)
                if not cn.is_connected(N):
                    continue
                seen = True
                gen = _generated(p.case, T, rem)
                where = dict(order=T.order, removal=rem)
                if not p.expect(gen.unique, "T generates a tangle" + ("" if kind == "delete" else " (dual form)"),
                                status=gen.status, **where):
                    continue
                MTa = tg.tangle_matroid(gen.tangle, check=False).matroid
                p.expect(MTa.same_as(mt.delete(MT, 1 << a)), "M_{T_a} = M_T minus a", **where)
                p.expect(tg.breadth(gen.tangle).value == b, "breadth kept", **where)
    if not seen:
        p.skip("no small 2-separating set with a removable element")


@suite("S6.nonthree", "a tangle of order >= 3 in a matroid that is not 3-connected keeps its breadth in some "
       "single-element minor")
def s6_nonthree(p: Probe) -> None:
    if cn.is_3_connected(p.M):
        p.skip("3-connected")
        return
    Ts = _tangles(p.case, 3)
    if not _need_tangles(p, Ts, "tangle of order >= 3"):
        return
    for T in Ts:
        b = p.case.breadth(T).value
        hit = None
        for rem in mn.all_removals(p.M):
            gen = _generated(p.case, T, rem)
            if gen.unique and tg.breadth(gen.tangle).value == b:
                hit = rem
                break
        p.expect(hit is not None, "some removal keeps breadth", order=T.order)


@suite("S6.tit3", "in a 3-connected matroid an exactly 3-separating set is titanic iff it has >= 4 elements")
def s6_tit3(p: Probe) -> None:
    M = p.M
    if not cn.is_3_connected(M):
        p.skip("not 3-connected")
        return
    sets = [int(F) for F in np.flatnonzero(M.lam_table == 2)]
    if not sets:
        p.skip("no exactly 3-separating set")
        return
    if len(sets) > 200:
        sets = [sets[i] for i in sorted(p.case.rng("tit3").choice(len(sets), size=200, replace=False))]
    for F in sets:
        p.expect(cn.is_titanic(M, F) == (bits.popcount(F) >= 4), "titanic iff |F| >= 4", F=p.case.labels(F))


def _fixed_checks(p: Probe, N: Matroid, where: dict) -> bool:
    rt = _rt(N)
    closed = cn.closed_table(N)
    flats = [int(f) for f in np.flatnonzero(closed)]
    lines = [f for f in flats if rt[f] == 2 and bits.popcount(f) >= 3]
    for F in lines:
        free = {a: freely_placed(N, F, a) for a in bits.indices(F)}
        for a, fr in free.items():
            p.expect(fr != fixed_by_flat(N, F, a, flats), "freely placed iff no fixing flat", F=N.labels_of(F),
                     a=N.labels[a], **where)
        for a, b in itertools.combinations(bits.indices(F), 2):
            p.expect(clones(N, a, b) == (free[a] and free[b]), "clones iff both freely placed", F=N.labels_of(F),
                     a=N.labels[a], b=N.labels[b], **where)
    return bool(lines)


@suite("S6.fixed", "on a rank-2 flat of a 3-connected matroid: freely placed iff no fixing flat; clones iff both free")
def s6_fixed(p: Probe) -> None:
    any_line = False
    if cn.is_3_connected(p.M):
        any_line |= _fixed_checks(p, p.M, {"matroid": "M"})
    for T in _tangles(p.case, 3):
        MT = p.case.tangle_matroid(T)
        if cn.is_3_connected(MT):
            any_line |= _fixed_checks(p, MT, {"matroid": "M_T", "order": T.order})
    if not any_line:
        p.skip("no rank-2 flat with >= 3 elements in a 3-connected matroid")


@suite("S6.intfree", "interior elements of a maximal small 3-separating set are freely placed on it in M_T")
def s6_intfree(p: Probe) -> None:
    M = p.M
    if not cn.is_3_connected(M):
        p.skip("not 3-connected")
        return
    seen = False
    for T in _tangles(p.case, 4):
        MT = p.case.tangle_matroid(T)
        for F in _max_small_3sep(T):
            if bits.popcount(F) < 3:
                continue
            inner = cn.interior(M, F)
            for a in bits.indices(inner):
                seen = True
                p.expect(MT.closure(F) == F and MT.rank(F) == 2 and freely_placed(MT, F, a),
                         "interior element freely placed on the rank-2 flat", order=T.order, F=p.case.labels(F),
                         a=M.labels[a])
    if not seen:
        p.skip("no interior element in a maximal small 3-separating set")


@suite("S6.witness", "a witness meets each big rank-2 flat of M_T in <= 2 elements; freely placed elements swap in")
def s6_witness(p: Probe) -> None:
    M = p.M
    if not cn.is_3_connected(M):
        p.skip("not 3-connected")
        return
    seen = False
    for T in _tangles(p.case, 4):
        k = T.order
        MT = p.case.tangle_matroid(T)
        rt = _rt(MT)
        b = p.case.breadth(T).value
        wt = orc.witness_table(MT, k) & (_pc(M.n) == b)
        witnesses = [int(u) for u in np.flatnonzero(wt)]
        lines = [int(f) for f in np.flatnonzero(cn.closed_table(MT) & (rt == 2)) if bits.popcount(int(f)) >= 3]
        for F in lines:
            free = {i: freely_placed(MT, F, i) for i in bits.indices(F)}
            for U in witnesses[:64]:
                seen = True
                p.expect(bits.popcount(U & F) <= 2, "|U & F| <= 2", order=k, U=p.case.labels(U), F=p.case.labels(F))
                for a in bits.indices(U & F):
                    for c in bits.indices(F & ~U):
                        if free[c]:
                            V = (U & ~(1 << a)) | 1 << c
                            p.expect(bool(wt[V]), "swapping in a freely placed element keeps a witness", order=k,
                                     U=p.case.labels(U), a=M.labels[a], b=M.labels[c])
    if not seen:
        p.skip("no rank-2 flat of M_T with >= 3 elements")


@suite("S6.keepint", "removing a from a big maximal small 3-separating set, keeping 3-connectivity, lambda and "
       "some interior, keeps breadth")
def s6_keepint(p: Probe) -> None:
    M = p.M
    if not cn.is_3_connected(M):
        p.skip("not 3-connected")
        return
    seen = False
    for T in _tangles(p.case, 4):
        b = p.case.breadth(T).value
        for F in _max_small_3sep(T):
            if bits.popcount(F) < 5:
                continue
            for a in bits.indices(F):
                for kind in mn.KINDS:
                    rem = mn.Removal(M.labels[a], kind)
                    N = rem.apply(M)
                    Fn = N.mask(M.labels_of(F & ~(1 << a)))
                    if not cn.is_3_connected(N) or N.lam(Fn) != M.lam(F) or cn.interior(N, Fn) == 0:
                        continue
                    seen = True
                    gen = _generated(p.case, T, rem)
                    p.expect(gen.unique and tg.breadth(gen.tangle).value == b,
                             "generated tangle of equal breadth" + ("" if kind == "delete" else " (dual form)"),
                             order=T.order, removal=rem, F=p.case.labels(F), status=gen.status)
    if not seen:
        p.skip("keep-interior hypotheses never hold")


@suite("S6.keep3con", "deleting a guts element of a fully closed exactly 3-separating set of size >= 4 keeps "
       "3-connectivity")
def s6_keep3con(p: Probe) -> None:
    M = p.M
    if not cn.is_3_connected(M):
        p.skip("not 3-connected")
        return
    Md = mt.dual(M)
    fc = cn.closed_table(M) & cn.closed_table(Md) & (M.lam_table == 2) & (_pc(M.n) >= 4)
    seen = False
    for F in np.flatnonzero(fc):
        F = int(F)
        for x in bits.indices(cn.guts(M, F) & F):
            seen = True
            p.expect(cn.is_3_connected(mt.delete(M, 1 << x)), "M minus x is 3-connected", F=p.case.labels(F),
                     x=M.labels[x])
        for x in bits.indices(cn.coguts(M, F) & F):
            seen = True
            p.expect(cn.is_3_connected(mt.contract(M, 1 << x)), "M/x is 3-connected (dual form)",
                     F=p.case.labels(F), x=M.labels[x])
    if not seen:
        p.skip("no guts element of a fully closed 3-separating set with >= 4 elements")


@suite("S6.gutsaway", "with >= 3 guts elements in a big maximal small 3-separating set, guts deletions generate "
       "M_T minus x and one keeps breadth")
def s6_gutsaway(p: Probe) -> None:
    M = p.M
    if not cn.is_3_connected(M):
        p.skip("not 3-connected")
        return
    seen = False
    for T in _tangles(p.case, 4):
        MT = p.case.tangle_matroid(T)
        b = p.case.breadth(T).value
        for F in _max_small_3sep(T):
            g = cn.guts(M, F) & F
            if bits.popcount(F) < 5 or bits.popcount(g) < 3:
                continue
            seen = True
            keep = False
            for x in bits.indices(g):
                rem = mn.Removal(M.labels[x], "delete")
                gen = _generated(p.case, T, rem)
                where = dict(order=T.order, x=M.labels[x], F=p.case.labels(F))
                if not p.expect(gen.unique, "T generates a tangle in M minus x", status=gen.status, **where):
                    continue
                MTx = tg.tangle_matroid(gen.tangle, check=False).matroid
                p.expect(MTx.same_as(mt.delete(MT, 1 << x)), "M_{T_x} = M_T minus x", **where)
                keep |= tg.breadth(gen.tangle).value == b
            p.expect(keep, "some guts element keeps breadth", order=T.order, F=p.case.labels(F))
    if not seen:
        p.skip("no big maximal small 3-separating set with >= 3 guts elements")


# -- section 7: breadth-critical tangles --------------------------------------

@suite("S7.breadthcrit", "order >= 4: M is weakly 4-connected or some single removal keeps breadth")
def s7_breadthcrit(p: Probe) -> None:
    Ts = _tangles(p.case, 4)
    if not _need_tangles(p, Ts, "tangle of order >= 4"):
        return
    w4 = cn.is_weakly_4_connected(p.M)
    for T in Ts:
        if w4:
            p.expect(True, "weakly 4-connected")
            continue
        b = p.case.breadth(T).value
        hit = None
        for rem in mn.all_removals(p.M):
            gen = _generated(p.case, T, rem)
            if gen.unique and tg.breadth(gen.tangle).value == b:
                hit = rem
                break
        p.expect(hit is not None, "some removal keeps breadth", order=T.order, breadth=b)


@suite("S7.interior", "a big fully closed exactly 3-separating set with r, r* > 2 keeps >= 2 interior elements "
       "in some 3-connected single-element minor")
def s7_interior(p: Probe) -> None:
    M = p.M
    if not cn.is_3_connected(M):
        p.skip("not 3-connected")
        return
    Md = mt.dual(M)
    R, D = _rt(M), _rt(Md)
    fc = cn.closed_table(M) & cn.closed_table(Md) & (M.lam_table == 2) & (_pc(M.n) >= 5) & (R > 2) & (D > 2)
    sets = [int(F) for F in np.flatnonzero(fc)]
    if not sets:
        p.skip("no qualifying 3-separating set")
        return
    for F in sets[:40]:
        hit = None
        for a in bits.indices(F):
            for kind in mn.KINDS:
                N = mn.Removal(M.labels[a], kind).apply(M)
                if not cn.is_3_connected(N):
                    continue
                Fn = N.mask(M.labels_of(F & ~(1 << a)))
                if bits.popcount(cn.interior(N, Fn)) >= 2:
                    hit = (a, kind)
                    break
            if hit:
                break
        p.expect(hit is not None, "some a and 3-connected N keep two interior elements", F=p.case.labels(F))


@suite("S7.reduce", "reduction ends weakly 4-connected with constant breadth and a tangle generated directly by T")
def s7_reduce(p: Probe) -> None:
    Ts = _tangles(p.case, 4)
    if not _need_tangles(p, Ts, "tangle of order >= 4"):
        return
    for T in Ts:
        b = p.case.breadth(T).value
        N, TN, trace = mn.reduce_to_weakly_4_connected(p.M, T)
        where = dict(order=T.order, path=trace.path)
        p.expect(cn.is_weakly_4_connected(N), "result is weakly 4-connected", **where)
        p.expect(all(s.breadth == b for s in trace.steps) and tg.breadth(TN).value == b, "breadth constant", **where)
        if trace.steps:
            direct = _generated(p.case, T, trace.path)
            p.expect(direct.unique and direct.tangle == TN, "final tangle generated directly by T",
                     status=direct.status, **where)


# -- section 8: order-4 tangles of weakly 4-connected matroids -----------------

def _w4c_big(p: Probe) -> bool:
    if p.M.n < 13:
        p.skip("fewer than 13 elements")
        return False
    if not cn.is_weakly_4_connected(p.M):
        p.skip("not weakly 4-connected")
        return False
    return True


@suite("S8.onetangle", "a weakly 4-connected matroid with >= 13 elements has exactly one 4-tangle",
       max_n=14, min_n=13)
def s8_onetangle(p: Probe) -> None:
    if not _w4c_big(p):
        return
    p.expect(len(p.case.tangles(4)) == 1, "exactly one tangle of order 4", found=len(p.case.tangles(4)))


def _lines(P: Matroid) -> list[int]:
    return [f for f in cn.flats(P, 2)]


@suite("S8.identity", "a simple rank-3 matroid not covered by three lines has one 4-tangle, with M_T = P", max_n=14)
def s8_identity(p: Probe) -> None:
    P = p.M
    if P.rank() != 3 or cn.circuits(P, 2):
        p.skip("not simple of rank 3")
        return
    if cn.covering_hyperplanes(P, 3) is not None:
        p.skip("covered by three lines")
        return
    Ts = p.case.tangles(4)
    if p.expect(len(Ts) == 1, "exactly one 4-tangle", found=len(Ts)):
        p.expect(p.case.tangle_matroid(Ts[0]).same_as(P), "M_T = P")


@suite("S8.alltm", "on >= 13 elements: tangle matroids of weakly 4-connected 4-tangles are the simple rank-3 "
       "matroids with lines of <= 4 points", max_n=14, min_n=13)
def s8_alltm(p: Probe) -> None:
    M = p.M
    if M.n < 13:
        p.skip("fewer than 13 elements")
        return
    if cn.is_weakly_4_connected(M):
        for T in p.case.tangles(4):
            MT = p.case.tangle_matroid(T)
            big = [L for L in _lines(MT) if bits.popcount(L) > 4]
            p.expect(MT.rank() == 3 and not cn.circuits(MT, 2) and not big, "M_T simple, rank 3, lines <= 4",
                     lines=[p.case.labels(L) for L in big])
    if M.rank() == 3 and not cn.circuits(M, 2) and all(bits.popcount(L) <= 4 for L in _lines(M)):
        # converse: P itself is weakly 4-connected and its 4-tangle has tangle matroid P
        ok = cn.is_weakly_4_connected(M)
        Ts = p.case.tangles(4)
        p.expect(ok and len(Ts) == 1 and p.case.tangle_matroid(Ts[0]).same_as(M),
                 "P is the tangle matroid of its own 4-tangle")


@suite("S8.breadthroot", "a weakly 4-connected matroid with >= 13 elements has 4-tangle breadth >= sqrt(|E|)",
       max_n=14, min_n=13)
def s8_breadthroot(p: Probe) -> None:
    if not _w4c_big(p):
        return
    for T in p.case.tangles(4):
        b = p.case.breadth(T).value
        p.expect(b * b >= p.M.n, "breadth^2 >= |E|", breadth=b, n=p.M.n, sqrt=math.sqrt(p.M.n))


# -- section 10 and 11 --------------------------------------------------------

def _kconn_candidates(case: Case, k: int) -> list[int]:
    M = case.M
    cands = []
    if cn.is_k_connected_set(M, M.full, k):
        cands.append(M.full)
    for T in case.all_tangles(k):
        Z = case.breadth(T).witness
        cands.append(Z)
        if bits.popcount(Z) > 3 * k - 5:
            cands.append(Z & ~(1 << bits.indices(Z)[-1]))
    out = []
    for Z in cands:
        if Z not in out:
            out.append(Z)
    return out


@suite("S10.pipeline", "an n-element 4-connected set (n >= 7) survives in a weakly 4-connected minor")
def s10_pipeline(p: Probe) -> None:
    M = p.M
    k = 4
    seen = False
    for Z in _kconn_candidates(p.case, k):
        n = bits.popcount(Z)
        if n < 3 * k - 5 or not cn.is_k_connected_set(M, Z, k):
            continue
        seen = True
        TZ = tg.tangle_from_k_connected_set(M, Z, k)
        N, TN, trace = mn.reduce_to_weakly_4_connected(M, TZ)
        U = tg.breadth(TN).witness
        Un = N.mask(N.labels_of(U)[:n])
        where = dict(Z=p.case.labels(Z), path=trace.path)
        p.expect(cn.is_weakly_4_connected(N), "minor is weakly 4-connected", **where)
        p.expect(bits.popcount(U) >= n, "witness has at least n elements", witness=N.labels_of(U), **where)
        p.expect(cn.is_k_connected_set(N, Un, k), "an n-element subset of the witness is 4-connected",
                 U=N.labels_of(Un), **where)
    if not seen:
        p.skip("no 4-connected set with >= 7 elements")


@suite("S11.truncate", "the tangle matroid of a truncated tangle is the truncated tangle matroid")
def s11_truncate(p: Probe) -> None:
    Ts = _tangles(p.case, 3)
    if not _need_tangles(p, Ts, "tangle of order >= 3"):
        return
    for T in Ts:
        MT = p.case.tangle_matroid(T)
        for t in range(2, T.order):
            Tt = tg.truncate_tangle(T, t, check=False)
            p.expect(tg.check_tangle(Tt) is None, "truncation is a tangle", order=T.order, to=t)
            got = tg.tangle_matroid(Tt, check=False).matroid
            p.expect(np.array_equal(_rt(got), _rt(mt.truncation(MT, t - 1))), "rank tables equal",
                     order=T.order, to=t)


ACCEPTANCE_STRUCTURAL = (
    "S3.hyperplanes", "S3.hall", "S3.weak", "S3.quotient", "S3.fullyclosed", "S3.round", "S3.threeconn",
    "S5.freer", "S5.breadthdown", "S5.static",
    "S6.loops", "S6.component", "S6.parallel", "S6.intfree", "S6.witness", "S6.keep3con", "S6.gutsaway",
    "S8.onetangle", "S8.identity", "S8.breadthroot", "S11.truncate",
)
