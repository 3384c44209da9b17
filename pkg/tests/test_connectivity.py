import itertools

import networkx as nx
import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from tanglekit import bits, corpus
from tanglekit import connectivity as cn
from tanglekit import matroid as mt
from tanglekit.lab import oracles

from conftest import small_matroids


def brute_circuits(M):
    out = []
    for a in range(1, 1 << M.n):
        r = M.rank(a)
        if r == bits.popcount(a) - 1 and all(M.rank(a ^ (1 << i)) == r for i in bits.indices(a)):
            out.append(a)
    return out


def connected_by_circuits(M):
    """Elements are related iff they share a circuit; connected iff one class (loops aside)."""
    if M.n <= 1:
        return True
    G = nx.Graph()
    G.add_nodes_from(range(M.n))
    for c in brute_circuits(M):
        idx = bits.indices(c)
        G.add_edges_from(itertools.combinations(idx, 2))
    return nx.is_connected(G)


@given(small_matroids(max_n=7))
def test_lambda_symmetric_submodular_and_dual_invariant(M):
    lt = M.lam_table
    assert np.array_equal(lt, lt[::-1])
    assert np.array_equal(lt, mt.dual(M).lam_table)
    a = np.arange(1 << M.n)
    for b in range(0, 1 << M.n, 7):
        assert np.all(lt[a].astype(int) + lt[b] >= lt[a & b].astype(int) + lt[a | b])


@given(small_matroids(max_n=7))
def test_connected_matches_circuit_graph(M):
    assert cn.is_connected(M) == connected_by_circuits(M)


@given(small_matroids(max_n=7))
def test_circuits_match_brute_force(M):
    assert sorted(cn.circuits(M)) == brute_circuits(M)


@given(small_matroids(max_n=7), st.data())
def test_solid_and_titanic_match_partition_oracles(M, data):
    a = data.draw(st.integers(1, M.full))
    assert cn.is_solid(M, a) == oracles.is_solid_partition(M, a)
    assert cn.is_titanic(M, a) == oracles.is_titanic_partition(M, a)
    cover = cn.titanic_cover(M, a)
    if cover is not None:
        assert cover[0] | cover[1] | cover[2] == a
        assert all(M.lam(p) < M.lam(a) for p in cover)


@given(small_matroids(max_n=7), st.data())
def test_boundary_profile_partitions(M, data):
    x = data.draw(st.integers(0, M.full))
    p = cn.boundary_profile(M, x)
    assert p.guts | p.coguts | p.interior == x
    assert p.interior & (p.guts | p.coguts) == 0
    assert cn.guts(M, x) == cn.coguts(mt.dual(M), x)


@given(small_matroids(max_n=7))
def test_hyperplanes_are_maximal_proper_flats(M):
    H = set(cn.hyperplanes(M))
    r = M.rank()
    for a in range(1 << M.n):
        closed = M.closure(a) == a
        assert (a in H) == (closed and M.rank(a) == r - 1 and r > 0)


@given(small_matroids(max_n=7))
def test_round_means_no_two_hyperplanes_cover(M):
    H = cn.hyperplanes(M)
    assert cn.is_round(M) == (not any(h | g == M.full for h in H for g in H))


def test_s_connectivity_examples():
    assert cn.is_3_connected(mt.uniform(3, 7))
    assert cn.is_weakly_4_connected(mt.uniform(3, 7))
    assert not cn.is_connected(mt.direct_sum(mt.uniform(1, 2), mt.uniform(1, 2)))
    S = mt.direct_sum(mt.uniform(3, 7), mt.uniform(1, 1, ["z"]))
    ok, wit = cn.s_connectivity(S, (0,))
    assert not ok and S.labels_of(wit) == ["z"]
    assert cn.is_weakly_4_connected(corpus.section9_matroid(6))
    rep = cn.connectivity_report(mt.uniform(3, 7), [0, 1]).to_json(mt.uniform(3, 7))
    assert rep["svec_ok"] and rep["witness"] is None


def test_weak4_matches_definition_on_wheel():
    W = corpus.wheel(4)
    lt = W.lam_table
    pc = bits.popcounts(W.n)
    small = np.minimum(pc, W.n - pc)
    brute = cn.is_3_connected(W) and not np.any((lt == 2) & (small > 4))
    assert cn.is_weakly_4_connected(W) == brute


def test_k_connected_sets():
    U = mt.uniform(3, 7)
    assert cn.is_k_connected_set(U, U.full, 4)
    S = mt.direct_sum(mt.uniform(3, 7), mt.uniform(3, 7))
    assert not cn.is_k_connected_set(S, S.full, 2)


@given(small_matroids(max_n=7), st.data())
def test_fully_closed_is_closed_and_coclosed(M, data):
    a = data.draw(st.integers(0, M.full))
    assert cn.is_fully_closed(M, a) == (M.is_closed(a) and mt.dual(M).is_closed(a))
