import pytest
from hypothesis import HealthCheck, settings

from mas_uniformity._backend import available_backends

# the backend fixture only hands out a module, so reuse across examples is safe
settings.register_profile("default", suppress_health_check=[HealthCheck.function_scoped_fixture])
settings.load_profile("default")


@pytest.fixture(params=sorted(available_backends()))
def backend(request):
    """Each importable kernel module in turn."""
    return available_backends()[request.param]


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
