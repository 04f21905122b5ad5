import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None)
settings.load_profile("default")

_verdicts: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when != "call":
        return
    passed = report.passed and not hasattr(report, "wasxfail")
    detail = "" if passed else (getattr(report, "wasxfail", "") or report.longreprtext.splitlines()[-1:][0])
    _verdicts[marker.args[0]] = ("PASS" if passed else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_verdicts):
        verdict, detail = _verdicts[n]
        terminalreporter.write_line(f"criterion {n:2d}: {verdict}" + (f"  ({detail})" if detail else ""))
