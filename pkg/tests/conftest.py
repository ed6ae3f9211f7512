"""Shared fixtures: the default constructed pair, the tame pair, and the
divergent kernel combination, built once per session."""

import pytest

from hblab import ConstructionParams, build_pair, tame_pair
from hblab.experiments import build_divergent_combo


@pytest.fixture(scope="session")
def params():
    return ConstructionParams(alpha=1.2, beta=1.5, power_m=1)


@pytest.fixture(scope="session")
def pair(params):
    return build_pair(params)


@pytest.fixture(scope="session")
def tame():
    return tame_pair(degree=160)


@pytest.fixture(scope="session")
def combo(params, pair):
    return build_divergent_combo(params, pair)
