from pathlib import Path

import pytest

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"

# criterion id -> [title, outcomes]
_ACCEPTANCE: dict[str, list] = {}


@pytest.fixture
def scenarios_dir() -> Path:
    return SCENARIOS


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, title): acceptance criterion this test checks")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    cid, title = mark.args
    entry = _ACCEPTANCE.setdefault(cid, [title, []])
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        entry[1].append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_ACCEPTANCE, key=lambda c: (int(c.rstrip("abc")), c)):
        title, results = _ACCEPTANCE[cid]
        status = "PASS" if results and all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {cid:<3} {status}  {title} ({sum(results)}/{len(results)} checks)")
