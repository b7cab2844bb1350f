_PREFIX = "test_criterion_"
_results = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rpartition("::")[2]
    if not name.startswith(_PREFIX):
        return
    if report.when == "call" or report.failed:
        prev = _results.get(name)
        if prev is None or prev[0] == "PASS":
            _results[name] = ("PASS" if report.passed else "FAIL", report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_results):
        status, secs = _results[name]
        num, _, title = name[len(_PREFIX):].partition("_")
        terminalreporter.write_line(f"criterion {num} {status}  {title.replace('_', ' ')}  [{secs:.1f}s]")
