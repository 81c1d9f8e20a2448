import pytest

_results: dict = {}


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False,
                     help="run long acceptance cases")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when not in ("setup", "call"):
        return
    n = mark.args[0]
    if rep.skipped:
        _results.setdefault(n, [])
        return
    if rep.when == "call" or rep.failed:
        _results.setdefault(n, []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        outcomes = _results[n]
        status = "PASS" if outcomes and all(outcomes) else ("SKIP" if not outcomes else "FAIL")
        terminalreporter.write_line(f"criterion {n:2d}: {status} ({len(outcomes)} checks)")
