import functools
import random

import pytest
from hypothesis import settings

from symcheck.catalog import ENTRY_IDS, get_entry
from symcheck.criteria import build_context
from symcheck.linalg import Matrix
from symcheck.scalar import Scalar


@functools.lru_cache(maxsize=None)
def context(pair_id):
    return build_context(get_entry(pair_id))


@pytest.fixture(params=ENTRY_IDS)
def any_ctx(request):
    return context(request.param)


def gaussian_matrix(rng, rows, cols, bound=3, density=0.6):
    def entry():
        if rng.random() > density:
            return Scalar(0)
        return Scalar(rng.randint(-bound, bound), rng.randint(-bound, bound))

    return Matrix([[entry() for _ in range(cols)] for _ in range(rows)], cols)


@pytest.fixture
def rng():
    return random.Random(0)

settings.register_profile("suite", max_examples=40, deadline=None)
settings.load_profile("suite")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


def pytest_terminal_summary(terminalreporter):
    rows = getattr(terminalreporter.config, "_criteria", None)
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(rows):
        title, ok = rows[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or (report.when != "call" and not report.failed):
        return
    number, title = marker.args
    rows = item.config.__dict__.setdefault("_criteria", {})
    rows[number] = (title, report.passed)
