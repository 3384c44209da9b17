import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tanglekit import bits, corpus
from tanglekit import connectivity as cn
from tanglekit import matroid as mt
from tanglekit import tangle as tg
from tanglekit.errors import DomainError, ResourceCapError
from tanglekit.lab import oracles

from conftest import small_matroids

orders = st.integers(2, 4)


@given(small_matroids(max_n=7), orders)
def test_enumeration_matches_brute_force(M, k):
    got = sorted(oracles.tangle_family(T) for T in tg.enumerate_tangles(M, k))
    try:
        want = oracles.brute_force_tangles(M, k)
    except ResourceCapError:
        want = oracles.backtrack_tangles(M, k)
    assert got == want


@given(small_matroids(max_n=7), orders)
def test_every_found_tangle_verifies(M, k):
    for T in tg.enumerate_tangles(M, k):
        assert tg.check_tangle(T) is None
        assert tg.Tangle.from_json(M, T.to_json()) == T


@given(small_matroids(max_n=7), orders)
def test_tangle_matroid_rank_formula_and_shape(M, k):
    for T in tg.enumerate_tangles(M, k):
        MT = tg.tangle_matroid(T).matroid  # check=True verifies rank, hyperplanes, roundness
        assert np.array_equal(MT.rank_table().astype(np.int16), oracles.tangle_rank_formula(T))
        assert tuple(cn.hyperplanes(MT)) == T.maximal_small


@given(small_matroids(max_n=7), orders)
def test_breadth_matches_oracle(M, k):
    for T in tg.enumerate_tangles(M, k):
        MT = tg.tangle_matroid(T, check=False).matroid
        cert = tg.breadth(T)
        assert (cert.value, cert.witness) == oracles.breadth_oracle(MT, k)
        assert tg.is_uniform_restriction(MT, cert.witness, k - 1)


@given(small_matroids(max_n=7), st.integers(3, 4))
def test_truncation_commutes_with_tangle_matroid(M, k):
    for T in tg.enumerate_tangles(M, k):
        for t in range(2, k):
            U = tg.truncate_tangle(T, t)  # check=True compares rank tables
            assert tg.check_tangle(U) is None


@given(small_matroids(max_n=7), orders, st.data())
def test_seeded_enumeration_is_a_filter(M, k, data):
    full = tg.enumerate_tangles(M, k)
    seps = tg.separations(M, k)
    if not seps:
        return
    seed = data.draw(st.sampled_from(seps))
    seeded = tg.enumerate_tangles(M, k, seeds=[seed])
    assert seeded == [T for T in full if T.small_table[seed]]


def test_uniform_37_has_one_tangle_equal_to_itself():
    U = mt.uniform(3, 7)
    (T,) = tg.enumerate_tangles(U, 4)
    assert tg.tangle_matroid(T).matroid.same_as(U)
    assert tg.breadth(T).value == 7


def test_k4_order_three():
    K = corpus.k4()
    (T,) = tg.enumerate_tangles(K, 3)
    assert tg.breadth(T).value == 6
    assert T.maximal_small == tuple(sorted(1 << i for i in range(6)))


def test_verify_tangle_reports_each_axiom():
    U = mt.uniform(3, 7)
    (T,) = tg.enumerate_tangles(U, 4)
    fam = T.small_sets()
    assert tg.verify_tangle(U, 4, fam + [U.mask(["e1", "e2", "e3"])]).axiom == "T1"
    two = [a for a in fam if bits.popcount(a) == 2]
    assert tg.verify_tangle(U, 4, [a for a in fam if a != two[0]]).axiom == "T2"
    big = [U.full ^ a for a in two]
    assert tg.verify_tangle(U, 4, [a for a in fam if a not in two] + big).axiom in ("T3", "T4")
    S = mt.uniform(1, 3)
    assert tg.verify_tangle(S, 3, [S.mask(["e1", "e2"]), 0, 1, 2, 4]).axiom == "T4"


def test_membership_and_domain_errors():
    U = mt.uniform(3, 7)
    (T,) = tg.enumerate_tangles(U, 4)
    assert T.is_small(["e1", "e2"])
    assert not T.is_small(["e1", "e2", "e3", "e4", "e5"])
    with pytest.raises(DomainError):
        T.is_small(["e1", "e2", "e3"])
    with pytest.raises(DomainError):
        tg.enumerate_tangles(U, 0)
    with pytest.raises(DomainError):
        tg.truncate_tangle(T, 4)


def test_k_connected_set_tangle():
    U = mt.uniform(3, 7)
    T = tg.tangle_from_k_connected_set(U, U.full, 4)
    assert T == tg.enumerate_tangles(U, 4)[0]
    with pytest.raises(DomainError):
        tg.tangle_from_k_connected_set(U, ["e1", "e2"], 4)


def test_cover_size():
    U = mt.uniform(3, 7)
    (T,) = tg.enumerate_tangles(U, 4)
    cs = tg.cover_size(T)
    assert cs.value == 4 and cs.warning is None
    assert bits.popcount(cs.cover[0] | cs.cover[1] | cs.cover[2] | cs.cover[3]) == 7
    # order 2: only the empty set is small, so nothing covers E
    (T2,) = tg.enumerate_tangles(U, 2)
    with pytest.raises(DomainError):
        tg.cover_size(T2)


def test_order_one_and_seed_with_large_lambda():
    U = mt.uniform(3, 7)
    assert len(tg.enumerate_tangles(U, 1)) == 1
    assert tg.enumerate_tangles(U, 4, seeds=[["e1", "e2", "e3"]]) == []


def test_node_budget_raises():
    with pytest.raises(ResourceCapError):
        tg.enumerate_tangles(corpus.section9_matroid(6), 4, node_budget=0)
