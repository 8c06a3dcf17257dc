import re

ACCEPTANCE_FILE = "test_acceptance.py"

_outcomes: dict = {}


def pytest_runtest_logreport(report):
    if ACCEPTANCE_FILE not in report.nodeid:
        return
    m = re.search(r"test_criterion_(\d+)_(\w+)", report.nodeid)
    if not m:
        return
    key = (int(m.group(1)), m.group(2).replace("_", " "))
    if report.when == "call" or report.outcome != "passed":
        prev = _outcomes.get(key, "PASS")
        _outcomes[key] = "PASS" if report.outcome == "passed" and prev == "PASS" else "FAIL"


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for (n, title), outcome in sorted(_outcomes.items()):
        terminalreporter.write_line(f"criterion {n}: {outcome}  {title}")
