import os
import tempfile

# A private cache for the whole session, set before dbflab is imported.
os.environ.setdefault("DBFLAB_CACHE", tempfile.mkdtemp(prefix="dbflab-test-"))

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].lstrip("#"))):
        terminalreporter.write_line(line)
