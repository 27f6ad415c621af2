import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from sharpgrad.specialfn import SphereArea, gamma_ratio, log_gamma, sphere_area


@pytest.mark.parametrize(
    "x, expected",
    [(0.5, math.log(math.sqrt(math.pi))), (5, math.log(24)), (1.5, math.log(math.sqrt(math.pi) / 2))],
)
def test_log_gamma_known_values(x, expected):
    assert log_gamma(x) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize("x", [1.0, 2.0])
def test_log_gamma_zero_at_one_and_two(x):
    assert abs(log_gamma(x)) < 1e-15


@pytest.mark.parametrize("x", [0.0, -1.0, -0.5])
def test_log_gamma_rejects_nonpositive(x):
    with pytest.raises(ValueError):
        log_gamma(x)


@pytest.mark.parametrize("x", [0.05, 0.3, 1.7, 7.25, 33.3, 101.5, 199.9])
def test_gamma_relative_accuracy(x):
    # reference at 50 digits
    ref = mpmath.loggamma(mpmath.mpf(x), prec=200)
    err = abs(math.expm1(log_gamma(x) - float(ref)))
    assert err < 1e-13


@pytest.mark.parametrize("a, b, expected", [(0.5, 1.5, 2.0), (0.25, 1.25, 4.0), (4, 5, 0.25)])
def test_gamma_ratio_recurrence_examples(a, b, expected):
    assert gamma_ratio(a, b) == pytest.approx(expected, rel=1e-14)


def test_gamma_ratio_rejects_nonpositive():
    with pytest.raises(ValueError):
        gamma_ratio(0.0, 1.0)
    with pytest.raises(ValueError):
        gamma_ratio(1.0, -2.0)


@given(st.floats(min_value=0.1, max_value=100.0))
def test_recurrence(x):
    assert abs(gamma_ratio(x + 1, x) - x) <= 1e-12 * x


def test_reflection_spots():
    assert math.exp(log_gamma(0.5)) == pytest.approx(math.sqrt(math.pi), rel=1e-13)
    assert math.exp(log_gamma(1.0)) == pytest.approx(1.0, rel=1e-13)
    assert math.exp(log_gamma(2.0)) == pytest.approx(1.0, rel=1e-13)


@pytest.mark.parametrize(
    "n, expected", [(1, 2.0), (2, 2 * math.pi), (3, 4 * math.pi), (4, 2 * math.pi**2)]
)
def test_sphere_area_values(n, expected):
    a = sphere_area(n)
    assert isinstance(a, SphereArea) and a.n == n
    assert float(a) == pytest.approx(expected, rel=1e-14)


@given(st.integers(min_value=3, max_value=60))
def test_sphere_area_ratio(n):
    ratio = sphere_area(n).value / sphere_area(n - 2).value
    assert ratio == pytest.approx(2 * math.pi / (n - 2), rel=1e-12)


@pytest.mark.parametrize("n", [0, -3, 2.5])
def test_sphere_area_rejects(n):
    with pytest.raises(ValueError):
        sphere_area(n)


def test_large_arguments_do_not_overflow():
    # Gamma(400) overflows a double; the log-space ratio does not
    assert gamma_ratio(400.5, 400.0) == pytest.approx(math.sqrt(400.0), rel=1e-3)
