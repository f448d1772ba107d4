import os
import sys
from importlib import resources

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from centerline.corpus_io import load_document  # noqa: E402

_ACCEPTANCE = []


def data_path(name):
    return str(resources.files("centerline") / "data" / name)


@pytest.fixture
def worked():
    return load_document(data_path("worked_example.ctr"))


@pytest.fixture
def worked_ctx():
    return load_document(data_path("worked_example_context.ctr"))


@pytest.fixture
def fp_doc():
    return load_document(data_path("false_positive.ctr"))


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(number, title): exit criterion reported in the summary"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.failed):
        number, title = marker.args
        _ACCEPTANCE.append((number, title, report.passed))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(_ACCEPTANCE):
        terminalreporter.write_line(
            f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}"
        )
