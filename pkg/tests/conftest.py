import random

import pytest

from lieext import Field, builtin


@pytest.fixture
def gf5():
    return Field(5)


@pytest.fixture
def gf7():
    return Field(7)


@pytest.fixture
def qq():
    return Field(0)


@pytest.fixture
def witt5():
    return builtin("witt5", 5)


@pytest.fixture
def wittext5():
    return builtin("wittext5", 5)


@pytest.fixture
def rng():
    return random.Random(20240611)


def rand_vec(field, n, rng):
    return tuple(field.random(rng) for _ in range(n))
