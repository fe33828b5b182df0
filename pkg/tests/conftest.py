import re
from collections import OrderedDict

import pytest

from hypcat import use_backend

_CRITERION = re.compile(r"test_criterion_(\d+)")
_RESULTS: "OrderedDict[int, list]" = OrderedDict()


@pytest.fixture(params=["python", "compiled"])
def backend(request):
    """Run a test once per kernel backend; the compiled one is skipped when not built."""
    from hypcat import compiled_available

    if request.param == "compiled" and not compiled_available():
        pytest.skip("compiled kernels not built")
    with use_backend(request.param):
        yield request.param


def pytest_runtest_logreport(report):
    m = _CRITERION.search(report.nodeid)
    if not m or "test_acceptance" not in report.nodeid:
        return
    if report.when == "call" or (report.when == "setup" and not report.passed):
        _RESULTS.setdefault(int(m.group(1)), []).append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_RESULTS):
        outcomes = _RESULTS[num]
        failed = [name for name, outcome in outcomes if outcome != "passed"]
        verdict = "PASS" if not failed else "FAIL"
        detail = f"{len(outcomes)} check(s)" if not failed else "failing: " + ", ".join(failed)
        terminalreporter.write_line(f"criterion {num:2d}: {verdict}  ({detail})")
