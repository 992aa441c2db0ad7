import json
import random
from fractions import Fraction

import pytest

from characters import SubstitutionContext, build_sigma_grid
from partitions import CoreIndex


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def simple_grid():
    """L = 2, N = 1 grid whose rows alternate between h_1 = θ_0t_0 + θ_1t_1 and 1"""
    ctx = SubstitutionContext(2, 1, (Fraction(1, 2), Fraction(1, 3)))
    return build_sigma_grid(CoreIndex((0, 1)), CoreIndex((0, 0)), ctx)


@pytest.fixture
def constant_grid():
    """Every σ_{m,n} equals 1"""
    ctx = SubstitutionContext(2, 2, (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)))
    return build_sigma_grid(CoreIndex((0, 0)), CoreIndex((0, 0)), ctx)


@pytest.fixture
def write_config(tmp_path):
    def write(data):
        path = tmp_path / "config.json"
        path.write_text(json.dumps(data))
        return str(path)

    return write
