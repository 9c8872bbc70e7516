import mpmath
import pytest

from tplab.numerics.precision import PrecisionConfig


@pytest.fixture
def prec():
    return PrecisionConfig(digits=50)


@pytest.fixture(autouse=True)
def _reset_mp():
    # every test starts from mpmath's default context
    mpmath.mp.dps = 15
    yield
    mpmath.mp.dps = 15


# -- acceptance summary ---------------------------------------------------

_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by the test")


def pytest_runtest_logreport(report):
    marker = getattr(report, "_criterion", None)
    if marker is None:
        return
    failed = report.failed
    if report.when == "call" or failed:
        detail = dict(report.user_properties).get("detail", "")
        prev = _CRITERIA.get(marker[0])
        if prev is None or prev[0] == "PASS":
            _CRITERIA[marker[0]] = ("FAIL" if failed else "PASS", marker[1], detail)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result()._criterion = m.args


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_CRITERIA):
        status, title, detail = _CRITERIA[n]
        line = f"{status} criterion {n}: {title}"
        terminalreporter.write_line(line + (f" ({detail})" if detail else ""))
