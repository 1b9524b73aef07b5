from cyclichall import hall as hl
from cyclichall.quiver import preset

_GENERIC: dict = {}


def generic(name: str) -> hl.GenericHall:
    """Shared GenericHall per preset so Hall-number caches survive across tests."""
    if name not in _GENERIC:
        _GENERIC[name] = hl.GenericHall(preset(name))
    return _GENERIC[name]


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    """Keep one verdict per acceptance criterion; printed again in the terminal summary."""
    ACCEPTANCE[criterion] = (ok, detail)
    print(f"criterion {criterion:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
