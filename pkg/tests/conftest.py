import os

import pytest
from hypothesis import HealthCheck, settings

from torres import fixtures

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

JOBS = os.path.join(os.path.dirname(__file__), os.pardir, "docs", "jobs")


@pytest.fixture(params=sorted(fixtures.FIXTURES))
def named_fan(request):
    return request.param, fixtures.FIXTURES[request.param]()


@pytest.fixture
def job_path():
    return lambda name: os.path.abspath(os.path.join(JOBS, name))


# acceptance lines are collected here and repeated at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
