"""Shared helpers for the test suite: seeded random exact objects."""

import random
from fractions import Fraction

import pytest

from gfermat.exactfield import ExactMatrix


def rand_fraction(rng, bound=9, nonzero=False):
    while True:
        value = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
        if not nonzero or value != 0:
            return value


def rand_invertible(rng, size, bound=5):
    while True:
        matrix = ExactMatrix.from_rows(
            [[rand_fraction(rng, bound) for _ in range(size)] for _ in range(size)]
        )
        if matrix.det() != 0:
            return matrix


@pytest.fixture
def rng():
    return random.Random(20240811)
