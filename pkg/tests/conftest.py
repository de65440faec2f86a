import pytest
from hypothesis import HealthCheck, settings

from charp_closure_lab.local_cohomology import counterexample_ring
from charp_closure_lab.poly import RingSpec

settings.register_profile("ccl", derandomize=True, deadline=None, print_blob=True,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile("ccl")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(params=[2, 3], ids=lambda p: f"p{p}")
def sr_ring(request):
    """The (xy, yz, zw) quotient over small primes."""
    return counterexample_ring(request.param)


@pytest.fixture
def sr3():
    return counterexample_ring(3)


@pytest.fixture
def plane3():
    return RingSpec(3, ("x", "y"))


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
