"""
conftest.py
Shared pytest fixtures: bundled automata and their saturations.
"""

import os
import sys

import pytest

# Allow imports from project root
sys.path.insert(0, os.path.dirname(__file__))

from data.corpus import load_bundled  # noqa: E402
from models.semigroup import saturate  # noqa: E402


@pytest.fixture(scope="session")
def adding_machine():
    return load_bundled("adding_machine")


@pytest.fixture(scope="session")
def combined():
    return load_bundled("combined")


@pytest.fixture(scope="session")
def u1():
    return load_bundled("u1")


@pytest.fixture(scope="session")
def identity():
    return load_bundled("identity")


@pytest.fixture(scope="session")
def adding_sa(adding_machine):
    return saturate(adding_machine, ["e"])


@pytest.fixture(scope="session")
def combined_sa(combined):
    return saturate(combined, ["e", "z"])


@pytest.fixture(scope="session")
def identity_sa(identity):
    return saturate(identity, ["e"])
