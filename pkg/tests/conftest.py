import numpy as np
import pytest

from thermolearn import Scenario
from thermolearn.presets import preset_scenario


@pytest.fixture
def growth():
    return preset_scenario("fig1-growth")


@pytest.fixture
def low_growth():
    return preset_scenario("fig1-low")


@pytest.fixture
def zero_growth():
    return preset_scenario("fig1-zero")


@pytest.fixture
def negative_growth():
    return preset_scenario("fig1-negative")


def random_scenario(rng, r=None, absolute=None):
    """A valid scenario drawn from the default plausibility band."""
    theta0 = rng.uniform(0.0, 0.9)
    lam = rng.uniform(0.02, 0.95)
    h = rng.uniform(0.0, 0.05)
    p = rng.uniform(1.0, 10.0)
    r_b = rng.uniform(0.001, 0.1)
    if r is None:
        r = rng.uniform(-0.1, 0.1)
    if absolute is None:
        absolute = rng.random() < 0.5
    if absolute:
        a, y0 = rng.uniform(0.1, 50.0), rng.uniform(0.1, 100.0)
        above_floor = a * (y0 / (p * r_b)) ** (-lam)
        c_f = theta0 / (1 - theta0) * above_floor
        return Scenario.absolute(a=a, c_f=c_f, lam=lam, h=h, y0=y0, r_b=r_b, p=p, r=r)
    return Scenario.relative(theta0=theta0, lam=lam, h=h, p=p, r_b=r_b, r=r)


@pytest.fixture
def rng():
    return np.random.default_rng(20260419)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for _, _, line in mod.RESULTS:
        terminalreporter.write_line(line)
    failed = sum(not ok for _, ok, _ in mod.RESULTS)
    terminalreporter.write_line(f"{len(mod.RESULTS) - failed}/{len(mod.RESULTS)} checks passed")
