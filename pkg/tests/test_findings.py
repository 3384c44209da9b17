"""Pinned instances behind the deviations recorded in the decision ledger."""
import numpy as np

from tanglekit import bits
from tanglekit import connectivity as cn
from tanglekit import matroid as mt
from tanglekit import minors as mn
from tanglekit import tangle as tg
from tanglekit.lab import Case
from tanglekit.lab.suites import lines_closure_sides


def test_solid_lines_meet_spanned_only_in_the_dual():
    """Dual of a rank-3 paving matroid: the meet point is spanned in M* but not in M."""
    case = Case("paving*:10,1,4")
    M = case.M
    assert cn.is_3_connected(M)
    (T,) = case.tangles(4)
    MT = case.tangle_matroid(T)
    F = M.mask(["q1", "q2", "q6", "q8"])
    L = M.mask(["q1", "q5", "q10"])
    a = M.index("q1")
    for X in (F, L):
        assert MT.closure(X) == X and MT.rank(X) == 2
        assert cn.is_solid(M, X)
    assert F & L == 1 << a
    primal, dual = lines_closure_sides(M, F, L, a)
    assert not primal and dual
    D = mt.dual(M)
    assert D.closure(F ^ (1 << a)) >> a & 1 and D.closure(L ^ (1 << a)) >> a & 1


def test_order_two_determined_family_skips_nonseparating_singletons():
    """At order 2 a singleton with lambda 1 is not a separation, so it cannot be small."""
    U = mt.uniform(2, 4)
    (T,) = tg.enumerate_tangles(U, 2)
    assert all(not T.small_table[1 << i] for i in range(U.n))
    assert all(U.lam(1 << i) == 1 for i in range(U.n))


def test_tangle_matroid_rank_not_matroid_rank_in_flat_setting():
    """A flat of M_T of rank t has lambda_M = t, while its rank in M can be larger."""
    case = Case("paving*:10,1,4")
    hits = 0
    for T in case.tangles(4):
        MT = case.tangle_matroid(T)
        for F in cn.flats(MT):
            t = MT.rank(F)
            if 0 < t <= T.order - 2 and cn.is_solid(case.M, F):
                assert case.M.lam(F) == t
                hits += case.M.rank(F) != t
    assert hits > 0


def test_hall_converse_tangle_of_a_round_matroid_exists():
    """If no three hyperplanes cover E(P), P is the tangle matroid of an order r+1 tangle of P."""
    P = mt.uniform(3, 7)
    assert cn.covering_hyperplanes(P, 3) is None
    Ts = tg.enumerate_tangles(P, P.rank() + 1)
    assert any(tg.tangle_matroid(T, check=False).matroid.same_as(P) for T in Ts)


def test_reducer_never_needs_the_fallback():
    for name in ("corpus:u37+u23", "classic:u48par2", "ext:2"):
        case = Case(name)
        for T in case.tangles(4):
            _, _, trace = mn.reduce_to_weakly_4_connected(case.M, T)
            assert all(s.rule != "fallback-exhaustive" for s in trace.steps)
