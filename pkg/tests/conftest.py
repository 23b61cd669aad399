import os

import pytest
from hypothesis import HealthCheck, settings

from scalewave.exponents import ModelParams

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def params():
    """The admissible reference configuration n=4, mu=2, p=1.72, kappa=0.6."""
    return ModelParams(4, 2.0, 1.72, 0.6, 1e-3)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")
    config._criteria = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    n, title = mark.args
    detail = "; ".join(str(v) for k, v in item.user_properties if k == "detail")
    ok = call.excinfo is None
    prev = item.config._criteria.get(n)
    if prev is not None:
        ok = ok and prev[1]
        detail = "; ".join(x for x in (prev[2], detail) if x)
    item.config._criteria[n] = (title, ok, detail)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    crit = config._criteria
    if not crit:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(crit):
        title, ok, detail = crit[n]
        terminalreporter.write_line(f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}"
                                    + (f": {detail}" if detail else ""))
