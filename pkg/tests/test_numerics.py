import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.integrate import quad

from thermolearn._numerics import bisect_root, growth_integral


def test_growth_integral_zero_rate_is_exactly_t():
    assert growth_integral(0.0, 37.5) == 37.5
    assert growth_integral(0.0, 0.0) == 0.0


def test_growth_integral_tiny_rate_has_no_cancellation():
    r, t = 1e-12, 10.0
    # series: t + r t^2 / 2 + ...
    assert growth_integral(r, t) == pytest.approx(t + r * t * t / 2, rel=1e-15)


@given(st.floats(-0.3, 0.3), st.floats(0.0, 200.0))
def test_growth_integral_matches_quadrature(r, t):
    expected, _ = quad(lambda s: math.exp(r * s), 0.0, t, epsabs=0.0, epsrel=1e-13)
    assert growth_integral(r, t) == pytest.approx(expected, rel=1e-10, abs=1e-300)


def test_growth_integral_broadcasts():
    out = growth_integral(0.02, np.array([0.0, 1.0, 2.0]))
    assert out.shape == (3,)
    assert out[0] == 0.0


def test_bisect_root_tolerance():
    root = bisect_root(lambda x: x * x - 2.0, 0.0, 2.0)
    assert abs(root - math.sqrt(2.0)) < 1e-12
