"""Shared fixtures: baseline parameter set and its derived objects."""

import pytest

from ommsim.dynamics import build_drift_matrix, build_noise_model
from ommsim.model import paper_defaults
from ommsim.steady_state import solve_steady_state


@pytest.fixture(scope="session")
def base_params():
    return paper_defaults()


@pytest.fixture(scope="session")
def base_steady(base_params):
    return solve_steady_state(base_params)


@pytest.fixture(scope="session")
def base_drift(base_params, base_steady):
    return build_drift_matrix(base_params, base_steady)


@pytest.fixture(scope="session")
def base_noise(base_params):
    return build_noise_model(base_params)
