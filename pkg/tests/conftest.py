import json

import pytest

from elasto_waves.fixtures import FIXTURES, RUNNING_EXAMPLE, scenario_to_dict

_RESULTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(name: str, passed: bool, detail: str) -> None:
        line = f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}"
        print(line)
        _RESULTS.append((name, passed, detail))

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, passed, detail in _RESULTS:
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] {name}: {detail}")


@pytest.fixture(params=sorted(FIXTURES))
def fixture_name(request):
    return request.param


@pytest.fixture
def running():
    return FIXTURES[RUNNING_EXAMPLE]


@pytest.fixture
def scenario_file(tmp_path):
    def write(s_or_doc, name="scenario.json"):
        doc = s_or_doc if isinstance(s_or_doc, dict) else scenario_to_dict(s_or_doc)
        path = tmp_path / name
        path.write_text(json.dumps(doc))
        return str(path)

    return write
