import pytest

_RESULTS: list[tuple[str, str, str, list[str]]] = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion reported in the summary")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        number, title = marker.args
        notes = [str(v) for k, v in item.user_properties if k == "note"]
        _RESULTS.append((str(number), title, "PASS" if report.passed else "FAIL", notes))


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number, title, status, notes in sorted(_RESULTS, key=lambda r: tuple(int(x) for x in r[0].split("."))):
        tr.write_line(f"[{status}] {number}. {title}")
        for note in notes:
            tr.write_line(f"         {note}")
