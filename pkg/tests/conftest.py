import os

from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# keep the suite hermetic: no on-disk cache unless a test sets one up
os.environ.pop("HITPROB_CACHE", None)

import pytest

_RESULTS = pytest.StashKey[list]()


@pytest.fixture
def acceptance(request):
    """Record one PASS/FAIL line per acceptance criterion."""
    lines = request.config.stash.setdefault(_RESULTS, [])

    def record(number, title, checks):
        failed = [name for name, ok in checks if not ok]
        mark = "FAIL" if failed else "PASS"
        detail = f" (failed: {', '.join(failed)})" if failed else f" ({len(checks)} checks)"
        line = f"{mark} criterion {number}: {title}{detail}"
        lines.append(line)
        print(line)
        assert not failed, line

    return record


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_RESULTS, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
