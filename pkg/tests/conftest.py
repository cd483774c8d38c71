"""
Shared fixtures: corpus lattices, seeded randomness and document files
"""
import random

import pytest

from lattices.corpus import a1, a2, d4, e8, gaussian_integers, hyperbolic_plane
from lattices.lattice import orthogonal_lattice


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def A1():
    return a1()


@pytest.fixture
def A2():
    return a2()


@pytest.fixture
def D4():
    return d4()


@pytest.fixture
def E8():
    return e8()


@pytest.fixture
def U():
    return hyperbolic_plane()


@pytest.fixture
def gaussian_lattice():
    return gaussian_integers()


@pytest.fixture
def isotropic_ternary():
    """diag(2, −2, −2)"""
    return orthogonal_lattice([[2, 0, 0], [0, -2, 0], [0, 0, -2]], label="diag(2,-2,-2)")


@pytest.fixture
def write_text(tmp_path):
    """Write a text file under tmp_path and return its path"""
    def write(name: str, content: str) -> str:
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return str(path)
    return write
