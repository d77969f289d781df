from collections import defaultdict

_outcomes = defaultdict(list)
_titles = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by the test")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    number, title = marker.args
    _titles[number] = title
    if call.when == "setup" and call.excinfo is not None:
        skipped = call.excinfo.errisinstance(_skip_exception())
        _outcomes[number].append((item.name, "skip" if skipped else "fail"))
    elif call.when == "call":
        if call.excinfo is None:
            _outcomes[number].append((item.name, "pass"))
        elif call.excinfo.errisinstance(_skip_exception()):
            _outcomes[number].append((item.name, "skip"))
        else:
            _outcomes[number].append((item.name, "fail"))


def _skip_exception():
    import pytest

    return pytest.skip.Exception


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_outcomes):
        results = [r for _, r in _outcomes[number]]
        if "fail" in results:
            status = "FAIL"
        elif all(r == "skip" for r in results):
            status = "SKIP"
        else:
            status = "PASS"
        extra = ""
        skipped = results.count("skip")
        if status == "PASS" and skipped:
            extra = f" ({skipped} conditional part skipped)"
        terminalreporter.write_line(f"criterion {number:>2}: {status} {_titles[number]}{extra}")
