import pytest

_VERDICTS: list = []
_NOTES: list = []


@pytest.fixture
def verdict(request):
    """Record one acceptance line; printed in the terminal summary."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        _VERDICTS.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        return ok

    record.note = _NOTES.append
    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
    for text in _NOTES:
        terminalreporter.write_line("")
        for line in text.splitlines():
            terminalreporter.write_line(line)
