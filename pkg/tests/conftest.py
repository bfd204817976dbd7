from pathlib import Path

import pytest

DOMAINS = Path(__file__).resolve().parents[1] / "src" / "layerpot" / "domains"


@pytest.fixture
def domain_dir() -> Path:
    return DOMAINS


def shipped_domains() -> list[Path]:
    return sorted(DOMAINS.glob("*.dom"))


# lines recorded by tests/test_acceptance.py, repeated in the session summary
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
