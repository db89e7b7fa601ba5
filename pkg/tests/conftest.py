import random
from fractions import Fraction

import pytest

from affchar.rootdata import build_root_system


def rand_fraction(rng, lo=-9, hi=9, max_den=6):
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_weight(rng, rank, lo=-9, hi=9, max_den=6):
    return tuple(rand_fraction(rng, lo, hi, max_den) for _ in range(rank))


@pytest.fixture(scope="session")
def sl2():
    return build_root_system("A", 1)


@pytest.fixture(scope="session")
def sl3():
    return build_root_system("A", 2)


@pytest.fixture()
def rng():
    return random.Random(20240811)
