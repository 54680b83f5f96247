import pytest

from flagmorse.complex import build_complex
from flagmorse.morse import build_matching, partition

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def complexes():
    cache = {}

    def get(n, q, k=None):
        if (n, q, k) not in cache:
            store = build_complex(n, q, k)
            part = partition(store)
            cache[n, q, k] = (store, part, build_matching(store, part))
        return cache[n, q, k]

    return get


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
