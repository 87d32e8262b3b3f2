import os

import pytest
from hypothesis import HealthCheck, settings

from nambu_weil.lie import builtin

settings.register_profile(
    "default",
    max_examples=int(os.environ.get("HYPOTHESIS_MAX_EXAMPLES", "40")),
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

JACOBI_BUILTINS = [
    ("abelian", 1),
    ("abelian", 3),
    ("abelian", 5),
    ("affine1", 2),
    ("heisenberg", 3),
    ("sl", 2),
    ("gl", 2),
    ("gl", 3),
]


@pytest.fixture(scope="session")
def gl2():
    return builtin("gl", 2)


@pytest.fixture(scope="session")
def sl2():
    return builtin("sl", 2)


@pytest.fixture(scope="session")
def heis():
    return builtin("heisenberg", 3)


@pytest.fixture(scope="session")
def fixtures_dir():
    return os.path.join(os.path.dirname(__file__), "fixtures")


ACCEPTANCE_LINES = pytest.StashKey[dict]()


@pytest.fixture
def criterion(request):
    """Record the one-line verdict of an acceptance criterion.

    Returns a function ``record(number, ok, detail)``; the lines are printed
    in numeric order at the end of the session.
    """
    lines = request.config.stash.setdefault(ACCEPTANCE_LINES, {})

    def record(number: int, ok: bool, detail: str) -> bool:
        lines[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        print(lines[number])
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE_LINES, {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
