import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    def _report(criterion: str, passed: bool, detail: str = ""):
        line = f"[{'PASS' if passed else 'FAIL'}] {criterion}" + (f" -- {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def data_dir():
    return Path(__file__).parent / "data"
