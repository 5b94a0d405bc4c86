from __future__ import annotations

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

SMALL_TYPES = ["A2", "B2", "I2_5", "A3"]
CERT_TYPES = ["A2", "A3", "A4", "B3", "D4", "F4", "H3", "I2_5", "I2_6"]
ALL_TYPES = [
    "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8",
    "B2", "B3", "B4", "B5", "B6",
    "D4", "D5", "D6", "D7",
    "E6", "E7", "E8", "F4", "H3", "H4",
    "I2_5", "I2_6", "I2_7", "I2_8", "I2_9", "I2_12",
]


@pytest.fixture
def A2():
    from algraph.garside import context

    return context("A2")


@pytest.fixture
def A3():
    from algraph.garside import context

    return context("A3")
