import pytest
from hypothesis import given
from hypothesis import strategies as st

from tanglekit import corpus
from tanglekit import connectivity as cn
from tanglekit import matroid as mt
from tanglekit import minors as mn
from tanglekit import tangle as tg
from tanglekit.errors import PreconditionError, StructuralError
from tanglekit.lab import Case, oracles

from conftest import small_matroids


def test_removal_basics():
    U = mt.uniform(3, 7)
    assert str(mn.Removal("e1", "delete")) == "\\e1"
    assert str(mn.Removal("e1", "contract")) == "/e1"
    with pytest.raises(StructuralError):
        mn.Removal("e1", "squash")
    N = mn.apply_path(U, [mn.Removal("e1", "delete"), mn.Removal("e2", "contract")])
    assert N.labels == tuple(f"e{i}" for i in range(3, 8))
    assert N.same_as(mt.uniform(2, 5, list(N.labels)))
    assert len(mn.all_removals(U)) == 14


@given(small_matroids(max_n=7), st.integers(3, 4), st.data())
def test_generated_tangle_matches_filter_oracle(M, k, data):
    Ts = tg.enumerate_tangles(M, k)
    if not Ts or M.n < 2:
        return
    T = data.draw(st.sampled_from(Ts))
    rem = data.draw(st.sampled_from(mn.all_removals(M)))
    gen = mn.generated_tangle(M, T, rem)
    want = oracles.generated_by_filter(M, T, gen.minor, tg.enumerate_tangles(gen.minor, k))
    assert gen.count == len(want) or (gen.status == "none" and not want)
    if gen.unique:
        assert gen.tangle == want[0]


@given(small_matroids(max_n=7), st.integers(3, 4), st.data())
def test_induce_up_gives_a_tangle_that_generates_back(M, k, data):
    if M.n < 2:
        return
    rem = data.draw(st.sampled_from(mn.all_removals(M)))
    N = rem.apply(M)
    for TN in tg.enumerate_tangles(N, k):
        T = mn.induce_up(M, [rem], TN)
        assert tg.check_tangle(T) is None
        gen = mn.generated_tangle(M, T, rem)
        assert TN in oracles.generated_by_filter(M, T, N, tg.enumerate_tangles(N, k))
        assert gen.status != "none"


def test_induce_up_rejects_wrong_minor():
    U = mt.uniform(3, 7)
    rem = mn.Removal("e1", "delete")
    (TN,) = tg.enumerate_tangles(mt.uniform(3, 6, [f"e{i}" for i in range(2, 8)]), 3)
    with pytest.raises(PreconditionError):
        mn.induce_up(U, [mn.Removal("e1", "contract")], TN)
    assert tg.check_tangle(mn.induce_up(U, [rem], TN)) is None


def test_reduce_strips_a_direct_summand():
    M = corpus.entry("u37+u23").matroid()
    (T,) = tg.enumerate_tangles(M, 4)
    N, TN, trace = mn.reduce_to_weakly_4_connected(M, T)
    assert cn.is_weakly_4_connected(N)
    assert N.labels == tuple(f"e{i}" for i in range(1, 8))
    assert [s.breadth for s in trace.steps] == [7] * len(trace.steps)
    assert mn.generated_tangle(M, T, trace.path).tangle == TN
    assert {s.rule for s in trace.steps} <= set(mn.RULES)


def test_reduce_is_a_no_op_on_weakly_4_connected_input():
    U = mt.uniform(3, 7)
    (T,) = tg.enumerate_tangles(U, 4)
    N, TN, trace = mn.reduce_to_weakly_4_connected(U, T)
    assert N is U and TN == T and not trace.steps and trace.start_breadth == 7


@pytest.mark.parametrize("name", ["ext:1", "ext:4", "uext:3,7,5,0", "classic:u37par"])
def test_reduce_keeps_breadth_on_pool_instances(name):
    case = Case(name)
    for T in case.tangles(4):
        b = tg.breadth(T).value
        N, TN, trace = mn.reduce_to_weakly_4_connected(case.M, T)
        assert cn.is_weakly_4_connected(N)
        assert tg.breadth(TN).value == b
        assert mn.generated_tangle(case.M, T, trace.path).tangle == TN


def test_determined_family_equals_generated_tangle():
    """Both routes on every solid flat context where a generated tangle exists."""
    from tanglekit.lab.suites import _flat_contexts

    seen = 0
    for name in ("corpus:u37+u11", "classic:u37par", "binary:10,4,4", "paving*:10,1,4"):
        case = Case(name)
        for T in case.tangles(3) + case.tangles(4):
            for F, t, a, kind, N, Fn in _flat_contexts(case, T, "solid"):
                ctx = mn.FlatContext(F, t, case.M.labels[a], kind)
                assert mn.context_problem(case.M, T, ctx) is None
                det = mn.determined_family(case.M, T, ctx)
                gen = mn.generated_tangle(case.M, T, mn.Removal(case.M.labels[a], kind))
                if gen.status != "none":
                    assert gen.unique and det.tangle.to_json() == gen.tangle.to_json()
                    seen += 1
    assert seen > 0


def test_context_problem_names_the_failed_hypothesis():
    U = mt.uniform(3, 7)
    (T,) = tg.enumerate_tangles(U, 4)
    ctx = mn.FlatContext(U.mask(["e1"]), 1, "e2", "contract")
    assert mn.context_problem(U, T, ctx) == "element is not in the flat"
    with pytest.raises(PreconditionError):
        mn.determined_family(U, T, ctx)


def test_classify_type_one_uses_the_weak_side():
    M = corpus.entry("u37+u11").matroid()
    (T,) = tg.enumerate_tangles(M, 4)
    rem = mn.Removal("z", "delete")
    N = rem.apply(M)
    v = mn.classify_separation(M, T, rem, ["e1", "e2"])
    assert v.type == "I" and N.labels_of(v.small) == ["e1", "e2"]


def test_one_step_criticality_on_uniform():
    U = mt.uniform(3, 7)
    (T,) = tg.enumerate_tangles(U, 4)
    rep = mn.is_breadth_critical_one_step(U, T)
    assert rep.breadth == 7 and rep.explored == 14
    # U_{3,6} keeps no order-4 tangle and U_{2,6} has none either
    assert rep.critical and all(r.status == "none" for r in rep.table)


def test_recursive_criticality_matches_one_step_on_small_case():
    M = corpus.entry("u37+u11").matroid()
    (T,) = tg.enumerate_tangles(M, 4)
    one = mn.is_breadth_critical_one_step(M, T)
    rec = mn.is_breadth_critical_recursive(M, T)
    assert not one.critical and not rec.critical
