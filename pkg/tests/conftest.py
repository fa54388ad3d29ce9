import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line per criterion, then assert on it."""

    def record(key, title, checks):
        ok = all(passed for passed, _ in checks)
        detail = "; ".join(msg for _, msg in checks)
        _ACCEPTANCE.append((key, title, ok, detail))
        assert ok, f"criterion {key} ({title}) failed: {detail}"

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key, title, ok, detail in sorted(_ACCEPTANCE, key=lambda r: int(r[0])):
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {key:>2} {title}: {detail}")
