import time
from contextlib import contextmanager

import pytest


def pytest_configure(config):
    config._criteria_lines = []


def pytest_terminal_summary(terminalreporter, config):
    lines = getattr(config, "_criteria_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Context manager recording one PASS/FAIL line per acceptance criterion.

    The body must finish within ``limit`` seconds.
    """

    @contextmanager
    def run(number: int, title: str, limit: float):
        t0 = time.perf_counter()
        notes: list[str] = []
        try:
            yield notes
            elapsed = time.perf_counter() - t0
            assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit:.0f}s"
        except BaseException as exc:
            elapsed = time.perf_counter() - t0
            line = f"FAIL criterion {number}: {title} ({elapsed:.2f}s) -- {type(exc).__name__}: {exc}"
            request.config._criteria_lines.append(line)
            print(line)
            raise
        extra = f" [{'; '.join(notes)}]" if notes else ""
        line = f"PASS criterion {number}: {title} ({elapsed:.2f}s){extra}"
        request.config._criteria_lines.append(line)
        print(line)

    return run
