from __future__ import annotations

ACCEPTANCE: list[tuple[str, bool, float, float, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, elapsed, limit, note in sorted(ACCEPTANCE):
        verdict = "PASS" if ok else "FAIL"
        bound = f" (limit {limit:g} s)" if limit else ""
        terminalreporter.write_line(f"{verdict} {name}: {elapsed:.2f} s{bound} {note}".rstrip())
