import pytest

_LINES = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_LINES] = []


@pytest.fixture
def criterion_line(request, capsys):
    """Print and record one verdict line for an acceptance criterion."""

    def emit(number: int, ok: bool, text: str):
        line = "criterion %d: %s | %s" % (number, "PASS" if ok else "FAIL", text)
        request.config.stash[_LINES].append(line)
        with capsys.disabled():
            print("\n" + line)

    return emit


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
