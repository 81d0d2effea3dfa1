import pytest

_RESULTS: dict[str, list] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(name): acceptance criterion reported in the summary")


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    report = yield
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return report
    name = marker.args[0]
    if report.when == "call" or (report.when == "setup" and not report.passed):
        notes = [str(v) for k, v in item.user_properties if k == "note"]
        outcome = "PASS" if report.passed else "FAIL"
        _RESULTS[name] = [outcome, report.duration, notes]
    return report


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for name, (outcome, seconds, notes) in _RESULTS.items():
        detail = f"  ({'; '.join(notes)})" if notes else ""
        tr.write_line(f"{outcome}  {name}  [{seconds:.2f} s]{detail}")
