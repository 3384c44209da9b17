"""Run suites over the instance pool and collect reports."""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from ..errors import ResourceCapError, StructuralError
from .instances import Case, select
from .suites import SUITES, Probe


@dataclass
class SuiteReport:
    suite: str
    statement: str
    selector: str
    tested: int = 0
    skipped: int = 0
    checks: int = 0
    failures: list[dict] = field(default_factory=list)
    skip_reasons: dict[str, int] = field(default_factory=dict)
    errors: list[dict] = field(default_factory=list)
    wall_time: float = 0.0
    complete: bool = True

    @property
    def ok(self) -> bool:
        return not self.failures and not self.errors

    def to_json(self) -> dict:
        out = asdict(self)
        out["wall_time"] = round(self.wall_time, 3)
        out["ok"] = self.ok
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1, sort_keys=True)

    def summary(self) -> str:
        state = "ok" if self.ok else "FAIL"
        extra = "" if self.complete else " (incomplete: budget exhausted)"
        return (
            f"{self.suite}: {state}; {self.tested} instances tested, {self.skipped} skipped, "
            f"{self.checks} checks, {len(self.failures)} failures, {self.wall_time:.1f}s{extra}"
        )


@lru_cache(maxsize=None)
def get_case(name: str) -> Case:
    return Case(name)


def run_instance(suite_id: str, name: str) -> dict:
    """Run one suite on one instance; returns a plain dict so it can cross processes."""
    s = SUITES[suite_id]
    case = get_case(name)
    probe = Probe(case)
    err = None
    try:
        s.run(probe)
    except ResourceCapError as e:
        err = {"instance": name, "error": f"resource cap: {e}"}
    except Exception as e:  # a crash is reported, not swallowed
        err = {"instance": name, "error": f"{type(e).__name__}: {e}"}
    fails = [dict(f, instance=name, fingerprint=case.fingerprint) for f in probe.failures]
    return {"name": name, "checks": probe.checks, "failures": fails, "skips": probe.skips, "error": err}


def run_suite(
    suite_id: str,
    corpus_selector: str = "all",
    budget: int | None = None,
    max_n: int | None = None,
    threads: int = 1,
) -> SuiteReport:
    """Check one statement on every selected instance.

    ``budget`` caps the number of instances visited; a report that stopped
    early is flagged incomplete.
    """
    if suite_id not in SUITES:
        raise StructuralError(f"unknown suite {suite_id!r}; known: {', '.join(sorted(SUITES))}")
    s = SUITES[suite_id]
    cap = s.max_n if max_n is None else max_n
    names = [n for n in select(corpus_selector, max_n=cap) if get_case(n).M.n >= s.min_n]
    rep = SuiteReport(suite_id, s.statement, corpus_selector)
    if budget is not None and len(names) > budget:
        names = names[:budget]
        rep.complete = False
    start = time.perf_counter()
    if threads > 1 and len(names) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_instance, [suite_id] * len(names), names))
    else:
        results = [run_instance(suite_id, n) for n in names]
    for r in results:  # pool.map keeps input order, so merging is deterministic
        if r["error"]:
            rep.errors.append(r["error"])
        if r["checks"]:
            rep.tested += 1
        else:
            rep.skipped += 1
        rep.checks += r["checks"]
        rep.failures += r["failures"]
        for why, c in r["skips"].items():
            rep.skip_reasons[why] = rep.skip_reasons.get(why, 0) + c
    rep.wall_time = time.perf_counter() - start
    return rep


def suite_ids() -> list[str]:
    return sorted(SUITES)
