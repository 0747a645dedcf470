import pytest

_ACCEPTANCE = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if not item.name.startswith("test_criterion_"):
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        summary = (item.obj.__doc__ or item.name).strip().splitlines()[0]
        detail = getattr(item, "acceptance_detail", "")
        _ACCEPTANCE[item.name] = ("PASS" if rep.passed else "FAIL", summary, detail)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda n: int(n.split("_")[2])):
        status, summary, detail = _ACCEPTANCE[name]
        line = f"{status}  {summary}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))


@pytest.fixture
def detail(request):
    """Attach a short measurement string to the acceptance summary line."""

    def note(text):
        request.node.acceptance_detail = text

    return note
