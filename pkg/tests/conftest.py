import pytest
from hypothesis import settings

from rodvol import _kernels

from helpers import ACCEPTANCE_LINES

settings.register_profile("default", max_examples=200, deadline=None)
settings.load_profile("default")


@pytest.fixture(params=["numba", "pure"])
def kernel_path(request, monkeypatch):
    """Run a test once with the compiled kernels and once with the fallback."""
    if request.param == "numba" and _kernels._search_fixed_length_jit is None:
        pytest.skip("numba not installed")
    monkeypatch.setattr(_kernels, "USE_NUMBA", request.param == "numba")
    return request.param


@pytest.fixture
def rng():
    return random.Random(20240917)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
