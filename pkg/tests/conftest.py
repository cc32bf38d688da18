"""Collects the outcome of each acceptance criterion and prints one line per criterion."""

_results = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call" and call.excinfo is None:
        return
    number, title = marker.args
    passed = call.excinfo is None
    previous = _results.get(number, (title, True))
    _results[number] = (title, previous[1] and passed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, passed = _results[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}")
