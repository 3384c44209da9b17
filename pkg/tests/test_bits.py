import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from tanglekit import bits

masks = st.integers(0, (1 << 10) - 1)


@given(masks)
def test_indices_round_trip(m):
    assert bits.from_indices(bits.indices(m)) == m
    assert bits.popcount(m) == len(bits.indices(m))


@given(masks)
def test_iter_submasks_complete(m):
    subs = list(bits.iter_submasks(m))
    assert len(subs) == len(set(subs)) == 1 << bits.popcount(m)
    assert all(s & ~m == 0 for s in subs)
    assert sorted(subs) == sorted(int(x) for x in bits.submask_array(m))


def test_popcounts_table():
    pc = bits.popcounts(7)
    assert all(pc[m] == bits.popcount(m) for m in range(1 << 7))


@given(st.integers(0, (1 << 8) - 1), st.permutations(range(8)))
def test_gather_inverts_scatter(m, perm):
    pos = list(perm[:5])
    small = m & 0b11111
    assert bits.gather_int(bits.scatter_int(small, pos), pos) == small
    arr = np.array([small], dtype=np.int64)
    assert int(bits.gather(bits.scatter(arr, pos), pos)[0]) == small


@given(st.lists(st.booleans(), min_size=32, max_size=32))
def test_zeta_transforms_match_definitions(flags):
    t = np.array(flags, dtype=bool)
    down = bits.down_or(t.copy())
    up = bits.up_or(t.copy())
    vals = np.arange(32, dtype=np.int16)[::-1].copy()
    vals[~t] = 99
    mins = bits.superset_min(vals.copy())
    for a in range(32):
        sup = [b for b in range(32) if a & ~b == 0]
        sub = [b for b in range(32) if b & ~a == 0]
        assert down[a] == any(t[b] for b in sup)
        assert up[a] == any(t[b] for b in sub)
        assert mins[a] == min(vals[b] for b in sup)


def test_maximal_members():
    t = np.zeros(16, dtype=bool)
    t[[0b0011, 0b0001, 0b0100, 0b1100]] = True
    assert sorted(bits.maximal_members(t)) == [0b0011, 0b1100]


def test_shortlex_order():
    ms = [0b110, 0b001, 0b011, 0b100, 0b101]
    assert sorted(ms, key=bits.shortlex_key) == [0b001, 0b100, 0b011, 0b101, 0b110]
