import math

import pytest
from hypothesis import HealthCheck, settings

from sharpgrad.specialfn import sphere_area

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def omega(n):
    return sphere_area(n).value


@pytest.fixture
def w3():
    return omega(3)


def rel(a, b):
    return abs(a - b) / abs(b) if b != 0 else abs(a)


INF = math.inf
