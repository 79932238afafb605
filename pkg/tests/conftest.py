"""Shared helpers: the worked example maps and a seeded random-map source."""

import random
from fractions import Fraction

import pytest

from minres.dynrep import HomogPair
from minres.polyroots import resultant


def example_21(d=3, p=5):
    """(z^d - p)/z^(d-1)."""
    a = [1] + [0] * (d - 1) + [-p]
    b = [0, 1] + [0] * (d - 1)
    return HomogPair(d, a, b, p)


def example_22():
    """(z^2 - 1)/(2z) at p = 2."""
    return HomogPair(2, [1, 0, -1], [0, 2, 0], 2)


def example_23(p):
    """(z^p - z)/p."""
    return HomogPair(p, [1] + [0] * (p - 2) + [-1, 0], [0] * p + [p], p)


def example_24(p=5):
    """(p^4 z^3 + p z + 1)/(p^6 z^3)."""
    return HomogPair(3, [p ** 4, 0, p, 1], [p ** 6, 0, 0, 0], p)


def example_25(n, p=3):
    """(p^n z^3 + z^2 - p^n z)/(-p^n z^2 + z + p^n)."""
    q = p ** n
    return HomogPair(3, [q, 1, -q, 0], [0, -q, 1, q], p)


def example_26(p=5):
    """z^2/(1 + pz)^4, degree 4."""
    return HomogPair(
        4, [0, 0, 1, 0, 0], [p ** 4, 4 * p ** 3, 6 * p ** 2, 4 * p, 1], p
    )


def example_27(p=5):
    """(p z^3 + z^2)/p."""
    return HomogPair(3, [p, 1, 0, 0], [0, 0, 0, p], p)


def random_valid_pair(rng, d=None, p=None, lo=-20, hi=20):
    """A random degree-d pair with integer coefficients and nonzero
    resultant (true degree enforced through a nonzero top row)."""
    p = p or rng.choice([2, 3, 5, 7])
    d = d or rng.choice([2, 3, 4])
    while True:
        a = [rng.randint(lo, hi) for _ in range(d + 1)]
        b = [rng.randint(lo, hi) for _ in range(d + 1)]
        if a[0] == 0 and b[0] == 0:
            continue
        if all(c == 0 for c in a) or all(c == 0 for c in b):
            continue
        if resultant(a, b, d) != 0:
            return HomogPair(d, a, b, p)


@pytest.fixture
def rng():
    return random.Random(20260810)
