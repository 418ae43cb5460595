from __future__ import annotations

import pytest

ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


@pytest.fixture
def acceptance(request):
    """Callable ``report(cid, title, ok, detail)`` that logs one criterion line."""
    lines = request.config.stash[ACCEPTANCE]

    def report(cid, title, ok, detail):
        line = f"[{cid}] {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        lines.append(line)
        print(line)

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
