from __future__ import annotations

from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from flowrank import kernels
from flowrank.io import parse_network
from flowrank.network import Network
from flowrank.relation import Relation
from flowrank.verify.generators import default_labels

DATA = Path(__file__).parent / "data"

settings.register_profile(
    "default", deadline=None, max_examples=100, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def load(name: str) -> Network:
    return parse_network((DATA / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session", autouse=True)
def _jit():
    kernels.warmup()


@pytest.fixture(scope="session")
def n_c() -> Network:
    return load("n_c.table")


@pytest.fixture(scope="session")
def n_d() -> Network:
    return load("n_d.table")


@pytest.fixture(scope="session")
def table1() -> Network:
    return load("table1.table")


@pytest.fixture(scope="session")
def margin4() -> Network:
    return load("margin4.edges")


@st.composite
def networks(draw, min_n: int = 2, max_n: int = 6, max_cap: int = 4) -> Network:
    n = draw(st.integers(min_n, max_n))
    flat = draw(st.lists(st.integers(0, max_cap), min_size=n * n, max_size=n * n))
    cap = np.array(flat, dtype=np.int64).reshape(n, n)
    np.fill_diagonal(cap, 0)
    return Network(default_labels(n), cap)


@st.composite
def relations(draw, min_n: int = 1, max_n: int = 5) -> Relation:
    n = draw(st.integers(min_n, max_n))
    flat = draw(st.lists(st.booleans(), min_size=n * n, max_size=n * n))
    return Relation(default_labels(n), np.array(flat, dtype=bool).reshape(n, n))


@st.composite
def complete_relations(draw, min_n: int = 1, max_n: int = 5) -> Relation:
    """Complete relations: each unordered pair is one of >, <, =."""
    n = draw(st.integers(min_n, max_n))
    m = np.eye(n, dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            kind = draw(st.sampled_from(("fwd", "bwd", "tie")))
            m[i, j] = kind != "bwd"
            m[j, i] = kind != "fwd"
    return Relation(default_labels(n), m)


# --- acceptance report ------------------------------------------------------

_CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or report.when != "call":
        return
    number = marker.kwargs["criterion"]
    detail = dict(report.user_properties).get("detail", "")
    if report.failed:
        message = str(call.excinfo.value).splitlines()[0] if call.excinfo else ""
        detail = message or detail
    _CRITERIA[number] = ("PASS" if report.passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        status, detail = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {detail}".rstrip())
