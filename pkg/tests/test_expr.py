import json

import pytest
from hypothesis import given

from tanglekit import corpus, expr
from tanglekit import matroid as mt
from tanglekit.errors import StructuralError

from conftest import small_matroids


@given(small_matroids(max_n=7))
def test_round_trip_through_json(M):
    for N in (M, mt.dual(M), mt.delete(M, M.labels[:1]), mt.contract(M, M.labels[-1:])):
        again = expr.build(json.loads(expr.dumps(N.expr)))
        assert again.same_as(N)


def test_every_corpus_entry_round_trips(tmp_path):
    for path in corpus.write_corpus(tmp_path):
        if path.name == "index.json":
            continue
        M = expr.load(path)
        assert M.same_as(corpus.entry(path.stem).matroid())


def test_parse_inline_and_path(tmp_path):
    e = mt.uniform(2, 4).expr
    assert expr.parse(json.dumps(e)).same_as(mt.uniform(2, 4))
    p = tmp_path / "u24.json"
    p.write_text(json.dumps(e))
    assert expr.parse(str(p)).same_as(mt.uniform(2, 4))


@pytest.mark.parametrize(
    "bad",
    [
        [1, 2],
        {"kind": "nope"},
        {"kind": "uniform", "rank": 2},
        {"kind": "direct_sum", "parts": [mt.uniform(1, 1).expr] * 2, "relabel": [{}, {}]},
    ],
)
def test_malformed_expressions(bad):
    with pytest.raises(StructuralError):
        expr.build(bad)


def test_bad_inline_json():
    with pytest.raises(StructuralError):
        expr.parse("{not json")
