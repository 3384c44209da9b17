import pytest
from hypothesis import given
from hypothesis import strategies as st

from tanglekit import matroid as mt
from tanglekit.errors import ResourceCapError
from tanglekit.lab import oracles

from conftest import small_matroids


@given(small_matroids(max_n=6), st.integers(2, 4))
def test_flat_and_backtracking_oracles_agree(M, k):
    try:
        flat = oracles.brute_force_tangles(M, k)
    except ResourceCapError:
        return
    assert flat == oracles.backtrack_tangles(M, k)


def test_brute_force_cap():
    with pytest.raises(ResourceCapError):
        oracles.brute_force_tangles(mt.uniform(3, 7), 4, max_pairs=3)


def test_separation_pairs_are_unordered_and_low():
    U = mt.uniform(2, 5)
    pairs = oracles.separation_pairs(U, 3)
    assert all(a | b == U.full and a & b == 0 and a <= b for a, b in pairs)
    assert all(U.lam(a) <= 1 for a, _ in pairs)


def test_partition_oracles_on_uniform():
    U = mt.uniform(3, 7)
    # lambda(5 elements) = 2, three parts of lambda <= 1 would all be singletons or empty
    assert oracles.is_titanic_partition(U, U.mask(["e1", "e2", "e3", "e4", "e5"]))
    assert not oracles.is_solid_partition(U, U.mask(["e1", "e2"]))
