import sys

import pytest

from tmst_bounds import fock_oracle
from tmst_bounds.gaussian_core import tmst_from


@pytest.fixture(scope="session")
def fock_state():
    """Cached truncated TMST builder keyed by ``(lambda, v, dim)``."""
    cache = {}

    def build(lam, v, dim=fock_oracle.DEFAULT_DIM):
        key = (lam, v, dim)
        if key not in cache:
            cache[key] = fock_oracle.build_tmst_density(tmst_from(lam, v), dim=dim)
        return cache[key]

    return build


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not getattr(module, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)
