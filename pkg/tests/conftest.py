import re

_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    m = re.search(r"test_acceptance.*::test_(c\d+[a-z]?)_", report.nodeid)
    if m:
        _ACCEPTANCE.append((m.group(1), report.outcome))


def _criterion_key(item):
    m = re.match(r"c(\d+)([a-z]?)", item[0])
    return int(m.group(1)), m.group(2)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit, outcome in sorted(_ACCEPTANCE, key=_criterion_key):
        mark = "PASS" if outcome == "passed" else outcome.upper()
        terminalreporter.write_line(f"  criterion {crit}: {mark}")
