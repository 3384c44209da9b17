import os

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from tanglekit import corpus
from tanglekit import matroid as mt

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile("thorough", max_examples=400, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def small_matroids(draw, max_n: int = 8):
    """Uniform, binary and rank-3 paving matroids with at most ``max_n`` elements."""
    kind = draw(st.sampled_from(["uniform", "binary", "paving", "dual-paving"]))
    if kind == "uniform":
        n = draw(st.integers(1, max_n))
        return mt.uniform(draw(st.integers(0, n)), n)
    if kind == "binary":
        n = draw(st.integers(2, max_n))
        r = draw(st.integers(1, min(n, 5)))
        return corpus.random_binary_matroid(n, r, draw(st.integers(0, 10_000)))
    n = draw(st.integers(4, max_n))
    P = corpus.random_rank3_paving(n, draw(st.integers(0, 10_000)), max_line=4)
    return mt.dual(P) if kind == "dual-paving" else P


@pytest.fixture(scope="session")
def u37():
    return mt.uniform(3, 7)


@pytest.fixture(scope="session")
def k4():
    return corpus.k4()


@pytest.fixture(scope="session")
def sec9():
    return corpus.section9_matroid(6)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n][1])
