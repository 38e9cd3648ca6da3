import pytest

_ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(key: str, passed: bool, detail: str = "") -> None:
        _ACCEPTANCE[key] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k.split()[0])):
        passed, detail = _ACCEPTANCE[key]
        line = f"{'PASS' if passed else 'FAIL'}  criterion {key}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)
