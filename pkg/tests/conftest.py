import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of an acceptance criterion under the test's docstring."""
    name = request.node.function.__doc__.strip().splitlines()[0]
    ACCEPTANCE[name] = "FAIL"
    yield
    rep = getattr(request.node, "rep_call", None)
    if rep is not None and rep.passed:
        ACCEPTANCE[name] = "PASS"


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"{ACCEPTANCE[name]}  {name}")
