import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(k: int, passed: bool, detail: str) -> str:
    line = f"CRITERION {k}: {'PASS' if passed else 'FAIL'} {detail}"
    ACCEPTANCE_LINES[k] = line
    print(line)
    return line


@pytest.fixture
def criterion():
    return record_criterion


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
