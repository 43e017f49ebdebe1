"""Shared fixtures of the seqnorms tests."""
import os
import sys

# 3rd party libraries
import numpy as np
import pytest

# The command scripts import the user's config.py, which lives at the
# repository root until the package is installed
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

# Local imports
from seqnorms.evaluation import optim  # nopep8


@pytest.fixture(autouse=True)
def witness_checks():
    """Every test runs with the witness post conditions switched on."""
    previous = optim.set_witness_checks(True)
    yield
    optim.set_witness_checks(previous)


@pytest.fixture
def budget():
    return optim.OptBudget(restarts=2, iterations=60, directions=2, seed=7)


@pytest.fixture
def tiny_budget():
    return optim.OptBudget(restarts=1, iterations=20, directions=0, seed=7)


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


@pytest.fixture
def clean_env(monkeypatch):
    monkeypatch.delenv('SEQNORMS_BUDGET', raising=False)
    monkeypatch.delenv('SEQNORMS_CHECK_WITNESSES', raising=False)
