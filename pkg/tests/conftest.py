import numpy as np
import pytest

from alpwitness.inversion import WitnessTarget
from alpwitness.potentials import Geometry


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def qgem_geom():
    return Geometry(d=50e-6, delta_x=10e-6, tau=1.0)


@pytest.fixture
def qgem_target():
    return WitnessTarget(W=-0.1, gamma=0.1, tau=1.0)


@pytest.fixture
def bound_file(tmp_path):
    def write(body, name="bound.txt"):
        path = tmp_path / name
        path.write_text(body, encoding="utf-8")
        return path

    return write



def pytest_terminal_summary(terminalreporter):
    lines = []
    for key in ("passed", "failed"):
        for report in terminalreporter.stats.get(key, []):
            if report.when == "call":
                lines += [v for k, v in report.user_properties if k == "acceptance"]
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
