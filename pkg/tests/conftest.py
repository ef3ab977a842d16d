import itertools
import random
import sys
from fractions import Fraction

import pytest

from hyperperm.tensor import Tensor, identity_tensor, make_tensor, ones_tensor


def random_rational_tensor(rng, dims, lo=-9, hi=9, max_den=5):
    size = 1
    for n in dims:
        size *= n
    return Tensor(dims, [Fraction(rng.randint(lo, hi), rng.randint(1, max_den)) for _ in range(size)])


def random_01_tensor(rng, dims, p=0.6):
    size = 1
    for n in dims:
        size *= n
    return Tensor(dims, [int(rng.random() < p) for _ in range(size)])


def all_01_tensors(dims):
    size = 1
    for n in dims:
        size *= n
    for bits in itertools.product((0, 1), repeat=size):
        yield Tensor(dims, bits)


@pytest.fixture
def rng():
    return random.Random(20171)


@pytest.fixture
def B():
    return make_tensor((2, 2, 2), [1, 0, 0, 1, 0, 1, 1, 0])


@pytest.fixture
def I3():
    return identity_tensor(3, 3)


@pytest.fixture
def J3():
    return ones_tensor(3, 3)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
