import pytest

from eqcenter import generate_pof_instance

_criteria: dict[int, tuple[str, str, float]] = {}


@pytest.fixture
def t4():
    """Two pairs at distance 1, pairs 10 apart, each point similar to its partner."""
    return generate_pof_instance(1.0, 10.0)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        number, title = marker.args
        _criteria[number] = (title, "PASS" if rep.passed else "FAIL", rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, verdict, seconds = _criteria[number]
        terminalreporter.write_line(f"criterion {number:2d}: {verdict}  {title}  [{seconds:.2f}s]")
