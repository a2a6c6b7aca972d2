import pytest

# acceptance criterion number -> list of (passed, detail)
_ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


@pytest.fixture
def criterion():
    """Record one part of an acceptance criterion; returns ``ok``."""

    def record(number: int, ok: bool, detail: str) -> bool:
        _ACCEPTANCE.setdefault(number, []).append((bool(ok), detail))
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_ACCEPTANCE):
        parts = _ACCEPTANCE[n]
        ok = all(p for p, _ in parts)
        details = "; ".join(d if p else f"FAILED {d}" for p, d in parts)
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {details}")
