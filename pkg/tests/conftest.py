import random
from fractions import Fraction

import pytest

from qpadic.padic import CycloElement, make_field


@pytest.fixture(scope="session")
def field22():
    return make_field(2, 2, 32)


@pytest.fixture(scope="session")
def field23():
    return make_field(2, 3, 64)


@pytest.fixture(scope="session")
def field26():
    return make_field(2, 6, 64)


@pytest.fixture(scope="session")
def field32():
    return make_field(3, 2, 32)


def random_element(fld, rng, sparse=4, ppow=2):
    """Sparse random integral element: a few terms c * p^j * pi^i."""
    ints = [0] * fld.e
    for _ in range(min(sparse, fld.e)):
        i = rng.randrange(fld.e)
        ints[i] = rng.randint(-9, 9) * fld.p ** rng.randint(0, ppow)
    return CycloElement.from_int_vector(fld, ints)


def random_monic_element(fld, rng, degmax=6):
    """Monic low-degree integral element (fast path for the resultant oracle)."""
    deg = rng.randint(0, min(degmax, fld.e - 1))
    ints = [0] * fld.e
    ints[deg] = rng.choice([1, -1])
    for i in range(deg):
        if rng.random() < 0.7:
            ints[i] = rng.randint(-9, 9) * fld.p ** rng.randint(0, 2)
    return CycloElement.from_int_vector(fld, ints)


@pytest.fixture
def rng():
    return random.Random(20260809)


def frac(s) -> Fraction:
    return Fraction(s)
