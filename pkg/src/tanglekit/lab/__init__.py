"""Executable checks of the structural statements over seeded instance pools."""
from .instances import Case, PoolConfig, build, fingerprint, pool_names, select
from .runner import SuiteReport, get_case, run_suite, suite_ids
from .suites import ACCEPTANCE_STRUCTURAL, SUITES

__all__ = [
    "ACCEPTANCE_STRUCTURAL",
    "Case",
    "PoolConfig",
    "SUITES",
    "SuiteReport",
    "build",
    "fingerprint",
    "get_case",
    "pool_names",
    "run_suite",
    "select",
    "suite_ids",
]
