import numpy as np
import pytest

from vilenkin.group import build_profile
from vilenkin.transform import GridFunction

SMALL_PROFILES = [(2, 2, 2), (2, 3), (3, 3), (2, 3, 2), (5, 2), (4, 3, 2), (2, 2, 2, 2, 2, 2)]


def random_grid(profile, rng, complex_=True):
    vals = rng.standard_normal(profile.size)
    if complex_:
        vals = vals + 1j * rng.standard_normal(profile.size)
    return GridFunction(profile, vals)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture(params=SMALL_PROFILES, ids=lambda r: "x".join(map(str, r)))
def profile(request):
    return build_profile(request.param)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
