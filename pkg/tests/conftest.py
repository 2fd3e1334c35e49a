import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record a named acceptance criterion's outcome for the terminal summary."""
    def record(name, detail=""):
        ACCEPTANCE[request.node.nodeid] = (name, detail)
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.nodeid in ACCEPTANCE:
        name, detail = ACCEPTANCE[item.nodeid]
        ACCEPTANCE[item.nodeid] = (name, detail, rep.passed)
    elif rep.when == "call" and "test_acceptance" in item.nodeid and item.nodeid not in ACCEPTANCE:
        ACCEPTANCE[item.nodeid] = (item.name, "", rep.passed)


def pytest_terminal_summary(terminalreporter):
    rows = [v for v in ACCEPTANCE.values() if len(v) == 3]
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for name, detail, passed in rows:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}  {detail}")
