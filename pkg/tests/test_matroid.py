import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from tanglekit import bits, corpus, expr
from tanglekit import matroid as mt
from tanglekit.config import override_caps
from tanglekit.errors import PreconditionError, ResourceCapError, StructuralError

from conftest import small_matroids


def oracle_table(M):
    """Rank of every set through the per-set oracle, bypassing table builders."""
    return np.array([M._rank_one(m) for m in range(1 << M.n)], dtype=np.uint8)


def assert_rank_axioms(t: np.ndarray, n: int):
    pc = bits.popcounts(n)
    assert t[0] == 0
    assert np.all(t <= pc)
    for i in range(n):
        with_i = t[np.arange(1 << n) | (1 << i)]
        assert np.all((with_i == t) | (with_i == t + 1))
    # submodularity on the sets that differ in two elements suffices
    for i in range(n):
        for j in range(i + 1, n):
            a = np.arange(1 << n)
            a = a[(a & ((1 << i) | (1 << j))) == 0]
            assert np.all(
                t[a | 1 << i].astype(int) + t[a | 1 << j] >= t[a | 1 << i | 1 << j].astype(int) + t[a]
            )


@given(small_matroids())
def test_rank_axioms_and_table_agree_with_oracle(M):
    t = M.rank_table()
    assert_rank_axioms(t, M.n)
    assert np.array_equal(t, oracle_table(M))


@given(small_matroids(max_n=7))
def test_dual_rank_formula_and_involution(M):
    D = mt.dual(M)
    for a in range(1 << M.n):
        assert D.rank(a) == bits.popcount(a) - M.rank() + M.rank(M.full ^ a)
    assert mt.dual(D).same_as(M)
    assert np.array_equal(D.rank_table(), oracle_table(D))


@given(small_matroids(max_n=7), st.data())
def test_minor_duality(M, data):
    d = data.draw(st.integers(0, M.full))
    c = data.draw(st.integers(0, M.full)) & ~d
    N = mt.minor(M, d, c)
    assert mt.dual(N).same_as(mt.minor(mt.dual(M), c, d))
    assert np.array_equal(N.rank_table(), oracle_table(N))
    assert N.rank() == M.rank(M.full ^ d) - M.rank(c)


def test_graphic_table_matches_union_find():
    for G in (corpus.k4(), corpus.wheel(4), corpus.section9_graph().matroid):
        if G.n <= 14:
            assert np.array_equal(G.rank_table(), oracle_table(G))


def test_uniform_and_fano():
    U = mt.uniform(3, 7)
    assert U.rank() == 3 and U.rank(["e1", "e2"]) == 2 and U.rank(U.full) == 3
    fano = expr.build({"kind": "linear", "prime": 2, "columns": [[v >> j & 1 for j in range(3)] for v in range(1, 8)]})
    lines = [a for a in range(128) if bits.popcount(a) == 3 and fano.rank(a) == 2]
    assert len(lines) == 7


def test_direct_sum_disambiguates_labels():
    S = mt.direct_sum(mt.uniform(1, 2), mt.uniform(1, 2))
    assert S.labels == ("e1", "e2", "e1_2", "e2_2")
    assert S.rank() == 2 and S.rank(["e1", "e2"]) == 1
    assert expr.build(S.expr).same_as(S)


def test_principal_extension_is_free_on_flat():
    U = mt.uniform(3, 5)
    line = U.closure(["e1", "e2"])
    X = mt.principal_extension(U, line, "p")
    assert X.rank(["e1", "e2", "p"]) == 2
    assert X.rank(["e1", "e3", "p"]) == 3
    with pytest.raises(StructuralError):
        mt.principal_extension(U, line, "e1")
    K = corpus.k4()
    with pytest.raises(PreconditionError):
        mt.principal_extension(K, ["a", "b"], "z")  # not closed in M(K4)


def test_closure_and_coclosure():
    K = corpus.k4()
    # a=01, b=02, d=12 form a triangle
    assert K.closure(["a", "b"]) == K.mask(["a", "b", "d"])
    D = mt.dual(K)
    for a in range(1 << K.n):
        assert K.coclosure(a) == D.closure(a)


def test_structural_errors():
    with pytest.raises(StructuralError):
        mt.uniform(2, 3, ["x", "x", "y"])
    U = mt.uniform(2, 3)
    with pytest.raises(StructuralError):
        U.mask(["nope"])
    with pytest.raises(StructuralError):
        U.mask(1 << 5)
    with pytest.raises(StructuralError):
        mt.minor(U, ["e1"], ["e1"])
    with pytest.raises(StructuralError):
        mt.linear(4, [[1]])
    with pytest.raises(StructuralError):
        mt.from_rank_table(["a"], [0, 1, 1])


def test_caps_raise_resource_errors():
    U = mt.uniform(2, 12)
    with override_caps(scan_max=10):
        with pytest.raises(ResourceCapError):
            U.lam_table
    with override_caps(table_max=10):
        with pytest.raises(ResourceCapError):
            mt.uniform(2, 12).rank_table()
