"""The eight acceptance criteria, one PASS/FAIL line each.

Run directly (``python tests/test_acceptance.py``) or under pytest, where the
lines are also repeated in the terminal summary.  All comparisons are exact;
the only tolerances are the wall-clock limits below.
"""
import json
import time

from tanglekit import bits, corpus
from tanglekit import connectivity as cn
from tanglekit import matroid as mt
from tanglekit import minors as mn
from tanglekit import tangle as tg
from tanglekit.lab import ACCEPTANCE_STRUCTURAL, run_suite

# wall-clock limits in seconds
LIMIT_SEC9 = 60.0
LIMIT_CRITICAL = 600.0
LIMIT_SMALL = 5.0

RESULTS: dict[int, tuple[bool, str]] = {}


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {n}: {title} ({detail})"
    RESULTS[n] = (ok, line)
    print(line)
    assert ok, line


def _suites_ok(ids) -> tuple[bool, str]:
    bad, tested = [], 0
    for sid in ids:
        rep = run_suite(sid, "all")  # each suite carries its own size cap
        tested += rep.tested
        if not (rep.ok and rep.complete and rep.tested > 0):
            bad.append(f"{sid}: {len(rep.failures)} failures, {len(rep.errors)} errors, {rep.tested} tested")
    return not bad, "; ".join(bad) if bad else f"{len(ids)} suites, {tested} instance runs, 0 failures"


def test_criterion_1_section9_golden():
    t0 = time.perf_counter()
    M = corpus.section9_matroid(6)
    no_triangle = all(bits.popcount(c) != 3 for c in cn.circuits(M, max_size=3))
    Ts = tg.enumerate_tangles(M, 4)
    b = tg.breadth(Ts[0]).value if len(Ts) == 1 else None
    dt = time.perf_counter() - t0
    ok = M.n == 14 and no_triangle and cn.is_weakly_4_connected(M) and len(Ts) == 1 and b == 12 and dt < LIMIT_SEC9
    record(1, "section 9 instance s=6", ok, f"n={M.n}, tangles={len(Ts)}, breadth={b}, {dt:.1f}s < {LIMIT_SEC9:.0f}s")


def test_criterion_2_section9_critical():
    t0 = time.perf_counter()
    M = corpus.section9_matroid(6)
    (T,) = tg.enumerate_tangles(M, 4)
    rep = mn.is_breadth_critical_one_step(M, T)
    dt = time.perf_counter() - t0
    worst = max((r.breadth for r in rep.table if r.breadth is not None), default=None)
    ok = rep.critical and len(rep.table) == 28 and (worst is None or worst <= 11) and dt < LIMIT_CRITICAL
    record(2, "section 9 one-step criticality", ok,
           f"{len(rep.table)} removals, max generated breadth {worst}, {dt:.1f}s < {LIMIT_CRITICAL:.0f}s")


def test_criterion_3_uniform_and_k4():
    t0 = time.perf_counter()
    U = mt.uniform(3, 7)
    TU = tg.enumerate_tangles(U, 4)
    K = corpus.k4()
    TK = tg.enumerate_tangles(K, 3)
    ok_u = len(TU) == 1 and tg.tangle_matroid(TU[0]).matroid.same_as(U) and tg.breadth(TU[0]).value == U.n
    ok_k = len(TK) == 1 and tg.breadth(TK[0]).value == K.n
    dt = time.perf_counter() - t0
    record(3, "U_{3,7} and M(K4) single tangles", ok_u and ok_k and dt < LIMIT_SMALL,
           f"U37 ok={ok_u}, K4 ok={ok_k}, {dt:.2f}s < {LIMIT_SMALL:.0f}s")


def test_criterion_4_breadth_critical_suite():
    ok, detail = _suites_ok(["S7.breadthcrit"])
    record(4, "weakly 4-connected or a breadth-preserving removal", ok, detail)


def test_criterion_5_reduction_end_to_end():
    ok, detail = _suites_ok(["S7.reduce"])
    record(5, "reduction to a weakly 4-connected minor", ok, detail)


def test_criterion_6_structural_suites():
    ok, detail = _suites_ok(ACCEPTANCE_STRUCTURAL)
    record(6, "structural suites", ok, detail)


def test_criterion_7_pipeline():
    ok, detail = _suites_ok(["S10.pipeline"])
    record(7, "k-connected set pipeline", ok, detail)


def _byte_identical_enumeration(max_n: int = 8) -> tuple[bool, int]:
    from tanglekit.errors import ResourceCapError
    from tanglekit.lab import get_case, oracles, select

    compared = 0
    for name in select("all", max_n=max_n):
        M = get_case(name).M
        for k in (2, 3, 4, 5):
            engine = sorted(oracles.tangle_family(T) for T in tg.enumerate_tangles(M, k))
            try:
                raw = oracles.brute_force_tangles(M, k)
            except ResourceCapError:
                raw = oracles.backtrack_tangles(M, k)
            if json.dumps(engine).encode() != json.dumps([list(f) for f in raw]).encode():
                return False, compared
            compared += 1
    return True, compared


def test_criterion_8_oracle_cross_checks():
    same, compared = _byte_identical_enumeration()
    ok, detail = _suites_ok(["S3.enumeration", "S4.selection"])
    record(8, "oracle cross-checks", ok and same, f"{compared} (instance, order) pairs byte-identical; {detail}")


if __name__ == "__main__":
    import sys

    failed = 0
    for fn in [v for k, v in sorted(globals().items()) if k.startswith("test_criterion_")]:
        try:
            fn()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
