import json

import numpy as np
import pytest

from tanglekit import bits, corpus
from tanglekit import connectivity as cn
from tanglekit import tangle as tg
from tanglekit.errors import DomainError, StructuralError


@pytest.mark.parametrize("name", sorted(corpus.entries()))
def test_recorded_facts_hold(name):
    e = corpus.entry(name)
    M = e.matroid()
    f = e.facts
    if "order" in f:
        Ts = tg.enumerate_tangles(M, f["order"])
        assert len(Ts) == f["tangles"]
        assert tg.breadth(Ts[0]).value == f["breadth"]
    if "order4_tangles" in f:
        assert len(tg.enumerate_tangles(M, 4)) == f["order4_tangles"]
    if "weak4" in f:
        assert cn.is_weakly_4_connected(M) == f["weak4"]
    if "three_connected" in f:
        assert cn.is_3_connected(M) == f["three_connected"]
    if "size" in f:
        assert M.n == f["size"]


def test_section9_structure(sec9):
    assert sec9.n == 14
    assert not any(bits.popcount(c) == 3 for c in cn.circuits(sec9, max_size=3))
    for perm in corpus.SECTION9_SYMMETRIES:
        assert corpus.permuted(sec9, perm).same_as(sec9)
    with pytest.raises(DomainError):
        corpus.section9_matroid(5)


def test_section9_graph_default_host():
    g = corpus.section9_graph()
    assert g.facts == {"h_triangle_free": True, "h_4_connected": True}
    assert g.matroid.n == 16 + 10
    with pytest.raises(DomainError):
        corpus.section9_graph(stable_four=(5, 6, 7, 9))  # 5-9 is an edge of K44


@pytest.mark.parametrize(
    "make",
    [
        lambda: corpus.random_binary_matroid(9, 4, 3),
        lambda: corpus.random_extension_matroid(5),
        lambda: corpus.random_glued_matroid(2),
        lambda: corpus.random_rank3_paving(10, 7),
    ],
)
def test_generators_are_deterministic(make):
    a, b = make(), make()
    assert a.labels == b.labels and np.array_equal(a.rank_table(), b.rank_table())


def test_paving_lines_meet_in_at_most_one_point():
    P = corpus.random_rank3_paving(12, 4)
    lines = [f for f in cn.flats(P, 2) if bits.popcount(f) >= 3]
    assert all(bits.popcount(x & y) <= 1 for i, x in enumerate(lines) for y in lines[i + 1:])
    assert P.rank() == 3 and not cn.circuits(P, max_size=2)


def test_example_grammar():
    assert corpus.example("u37").n == 7
    assert corpus.example("k4").n == 6
    assert corpus.example("sec9:7").n == 15
    assert corpus.example("random:8,4,1").rank() == 4
    for bad in ("random:8,4", "nope"):
        with pytest.raises(StructuralError):
            corpus.example(bad)


def test_write_corpus_index(tmp_path):
    corpus.write_corpus(tmp_path)
    index = json.loads((tmp_path / "index.json").read_text())
    assert set(index) == set(corpus.entries())
