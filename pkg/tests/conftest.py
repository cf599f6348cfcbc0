from pathlib import Path

import pytest

from polygrowth.polyring import parse_system

SYSTEMS_DIR = Path(__file__).resolve().parent.parent / "systems"

DESK = {
    "identity": "vars: z1 z2\nF1 = z1\nF2 = z2\n",
    "squares": "vars: z1 z2\nF1 = z1^2\nF2 = z2^2\n",
    "hyperbola": "vars: z1 z2\nF1 = z1\nF2 = z1*z2 - 1\n",
    "cubic": "vars: z1 z2\nF1 = z1\nF2 = z1*z2^2 + z2\n",
}


@pytest.fixture(scope="session")
def desk():
    return {name: parse_system(text) for name, text in DESK.items()}


_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
