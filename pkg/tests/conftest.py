import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from foldideals.linalg import QQ
from foldideals.sigma import build_collection

settings.register_profile(
    "default", max_examples=30, deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

X, Y, Z = (1, 0, 0), (0, 1, 0), (0, 0, 1)
XYZ = (1, 1, 1)


@pytest.fixture
def sigma_double_x():
    # (x,2),(y,1),(z,1),(x+y+z,1) in three variables; generic support, N = 5
    return build_collection([(X, 2), (Y, 1), (Z, 1), (XYZ, 1)], QQ)


@pytest.fixture
def four_lines():
    return build_collection([(X, 1), (Y, 1), (Z, 1), (XYZ, 1)], QQ)


@pytest.fixture
def five_planes():
    e = [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (1, 1, 1, 1)]
    return build_collection([(v, 1) for v in e], QQ)
