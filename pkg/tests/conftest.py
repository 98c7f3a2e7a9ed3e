import pytest

from ufrlab.harness import DEFAULT_CORPUS
from ufrlab.ring import build_ring

_criterion_lines: list[str] = []


@pytest.fixture(autouse=True)
def isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("UFRLAB_CACHE", str(tmp_path / "cache"))
    return tmp_path / "cache"


@pytest.fixture(scope="session")
def corpus_rings():
    return [build_ring(spec) for spec in DEFAULT_CORPUS]


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    marker = next((m for m in getattr(report, "criterion_marks", ()) if m), None)
    if marker is None:
        return
    number, title = marker
    verdict = "PASS" if report.outcome == "passed" else "FAIL"
    _criterion_lines.append(f"criterion {number}: {verdict}  {title}")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    report.criterion_marks = (tuple(mark.args),) if mark else ()


def pytest_terminal_summary(terminalreporter):
    if not _criterion_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_criterion_lines, key=lambda s: int(s.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
