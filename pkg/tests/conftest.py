"""Shared pytest fixtures for ladder-workbench tests.

Provides small problem instances, a seeded generator and a quiet logging
environment so sweeps do not flood the output.
"""

import numpy as np
import pytest

from ladder_workbench.ladder import space_chain
from ladder_workbench.oracle import InputDistribution
from ladder_workbench.problems import (
    collision,
    collision_property,
    preimage,
    preimage_property,
)
from ladder_workbench.utils.config import reset_active


@pytest.fixture(autouse=True)
def quiet_env(monkeypatch):
    """Run every test with LADDER_WORKBENCH_ENV=test and default caps."""
    monkeypatch.setenv("LADDER_WORKBENCH_ENV", "test")
    reset_active()
    yield
    reset_active()


@pytest.fixture
def rng():
    """Seeded numpy generator.

    Returns:
        numpy.random.Generator: Generator seeded with 1234
    """
    return np.random.default_rng(1234)


@pytest.fixture
def collision_3_2():
    """Collision on N = 3, M = 2 with its property and uniform space chain.

    Returns:
        tuple: (spec, property, chain)
    """
    spec = collision(3, 2)
    return spec, collision_property(3, 2), space_chain(InputDistribution.uniform(spec), spec)


@pytest.fixture
def collision_2_2():
    spec = collision(2, 2)
    return spec, collision_property(2, 2), space_chain(InputDistribution.uniform(spec), spec)


@pytest.fixture
def preimage_3_4():
    spec = preimage(3, 4)
    return spec, preimage_property(3, 4), space_chain(InputDistribution.uniform(spec), spec)
