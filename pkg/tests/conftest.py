import pytest

CRITERIA: dict = {}


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for an acceptance criterion test."""
    lines = []

    def record(label):
        lines.append(label)

    yield record
    rep = getattr(request.node, "rep_call", None)
    ok = rep is not None and rep.passed
    for label in lines:
        CRITERIA[label] = ok


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(CRITERIA, key=lambda s: int(s.split()[0])):
        terminalreporter.write_line(f"{'PASS' if CRITERIA[label] else 'FAIL'}  criterion {label}")
