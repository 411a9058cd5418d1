import math
import warnings

import numpy as np
import pytest
from scipy.integrate import IntegrationWarning

from bjaudit import QuadratureConfig, QuadratureError, integrate_zero_to_inf


def test_exponential_integral():
    val = integrate_zero_to_inf(lambda t: math.exp(-t))
    assert val == pytest.approx(1.0, rel=1e-12)


def test_cauchy_density():
    val = integrate_zero_to_inf(lambda t: 1.0 / (1.0 + t * t))
    assert val == pytest.approx(math.pi / 2.0, rel=1e-12)


def test_kinked_integrand_with_breakpoints():
    # |t - 0.5| kink below 1 and |t - 3| kink above; exact value known piecewise
    def fn(t):
        return math.exp(-t) * (1.0 + abs(t - 0.5) * (t < 1.0))

    plain = integrate_zero_to_inf(fn, breakpoints=(0.5, 3.0))
    dense = integrate_zero_to_inf(
        fn, QuadratureConfig(rel_tol=1e-12, limit=400), breakpoints=(0.5,)
    )
    assert plain == pytest.approx(dense, rel=1e-9)


def test_quadrature_error_raised_when_starved():
    # One subdivision with a tight tolerance cannot resolve the heavy tail.
    # (scipy floors epsrel at 50 machine epsilons when epsabs is 0)
    cfg = QuadratureConfig(rel_tol=1e-13, limit=1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        with pytest.raises(QuadratureError) as excinfo:
            integrate_zero_to_inf(lambda t: 1.0 / (1.0 + t**1.5), cfg)
    assert excinfo.value.achieved > 0.0


def test_breakpoints_outside_domain_ignored():
    val = integrate_zero_to_inf(
        lambda t: math.exp(-t), breakpoints=(-1.0, 0.0, math.inf)
    )
    assert val == pytest.approx(1.0, rel=1e-12)
