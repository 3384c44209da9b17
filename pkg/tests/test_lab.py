import pytest

from tanglekit.errors import StructuralError
from tanglekit.lab import ACCEPTANCE_STRUCTURAL, SUITES, Case, fingerprint, pool_names, run_suite, select, suite_ids

# covered by the acceptance criteria on the full pool
ACCEPTANCE_RUN = set(ACCEPTANCE_STRUCTURAL) | {
    "S7.breadthcrit", "S7.reduce", "S10.pipeline", "S3.enumeration", "S4.selection",
}


def test_pool_names_rebuild_and_are_unique():
    names = pool_names()
    assert len(names) == len(set(names))
    for name in select("all", max_n=8):
        assert Case(name).M.n <= 8


def test_select_forms():
    assert all(n.startswith(("corpus:", "classic:")) for n in select("corpus"))
    assert select("binary:9") == ["binary:9,4,2", "binary:9,5,3"]
    assert select("uext:3,6,6,5") == ["uext:3,6,6,5"]
    assert select("paving:9,2,4") == ["paving:9,2,4"]  # not in the pool but buildable
    with pytest.raises(StructuralError):
        select("nonsense:1")


def test_fingerprint_is_stable():
    assert fingerprint(Case("classic:fano").M) == fingerprint(Case("classic:fano").M)
    assert fingerprint(Case("classic:fano").M) != fingerprint(Case("classic:ag32").M)


def test_case_sampling_policy():
    small, big = Case("classic:k33"), Case("paving:12,1,6")
    assert small.exhaustive and len(small.subsets()) == 1 << 9
    assert not big.exhaustive and len(big.subsets()) == Case.SAMPLE
    assert (big.subsets("x") == big.subsets("x")).all()


def test_unknown_suite_and_budget():
    with pytest.raises(StructuralError):
        run_suite("S99.nothing")
    rep = run_suite("S2.symmetry", "corpus", budget=2)
    assert not rep.complete and rep.tested + rep.skipped == 2
    assert "incomplete" in rep.summary()


def test_threads_give_the_same_report():
    a = run_suite("S3.hall", "classic", threads=1).to_json()
    b = run_suite("S3.hall", "classic", threads=2).to_json()
    for key in ("tested", "skipped", "checks", "failures", "skip_reasons", "errors"):
        assert a[key] == b[key]


def test_failures_carry_a_rebuildable_witness(monkeypatch):
    from tanglekit.lab import suites

    def always_fail(p):
        p.expect(False, "forced", A=p.case.labels(1))

    monkeypatch.setitem(SUITES, "X.fail", suites.Suite("X.fail", "forced failure", always_fail))
    rep = run_suite("X.fail", "classic:u25")
    (f,) = rep.failures
    assert f["instance"] == "classic:u25" and f["witness"]["A"] == ["e1"]
    assert not rep.ok and '"forced"' in rep.dumps()


@pytest.mark.parametrize("sid", suite_ids())
def test_every_suite_on_small_named_instances(sid):
    rep = run_suite(sid, "corpus", max_n=8)
    assert rep.ok, rep.failures[:3] or rep.errors[:3]


@pytest.mark.parametrize("sid", [s for s in suite_ids() if s not in ACCEPTANCE_RUN])
def test_full_catalog(sid):
    rep = run_suite(sid, "all")
    assert rep.ok and rep.complete, rep.failures[:3] or rep.errors[:3]
    assert rep.tested > 0, rep.skip_reasons
