from __future__ import annotations

import random
from fractions import Fraction

import pytest

from arrsyz.arrangement import Arrangement, ProjectiveTransform, from_strings
from arrsyz.algebra import Matrix

BRAID = ["x", "y", "z", "x+y+z", "x+z", "y+z"]
BOOLEAN = ["x", "y", "z"]
GENERIC5 = ["x", "y", "z", "x+y+z", "x+2y+3z"]


@pytest.fixture
def braid() -> Arrangement:
    return from_strings(BRAID)


@pytest.fixture
def boolean() -> Arrangement:
    return from_strings(BOOLEAN)


@pytest.fixture
def generic5() -> Arrangement:
    return from_strings(GENERIC5)


def random_transform(rng: random.Random, k: int = 3, bound: int = 3) -> ProjectiveTransform:
    while True:
        m = Matrix([[rng.randint(-bound, bound) for _ in range(k)] for _ in range(k)])
        if m.det() != 0:
            return ProjectiveTransform(m)


def random_rational(rng: random.Random, bound: int = 5) -> Fraction:
    while True:
        num = rng.randint(-bound, bound)
        if num:
            return Fraction(num, rng.randint(1, bound))


def random_ts(rng: random.Random, m: int, exclude=()) -> list[Fraction]:
    out: list[Fraction] = []
    while len(out) < m:
        t = random_rational(rng)
        if t not in out and t not in exclude:
            out.append(t)
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
