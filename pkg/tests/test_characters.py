from fractions import Fraction

import pytest

from characters import (
    ParameterSet, SubstitutionContext, build_sigma_grid, complete_homogeneous, derive_parameters, kappa_mn,
    shift_theta, universal_character,
)
from errors import ConfigError
from laurent import LaurentPoly, variables
from partitions import EMPTY, CoreIndex, Partition
from scalars import parse_rational

CTX = SubstitutionContext(2, 1, (Fraction(1, 2), Fraction(1, 3)))
t0, t1 = variables(2)
H1 = Fraction(1, 2) * t0 + Fraction(1, 3) * t1
H1_INV = Fraction(1, 2) * t0 ** -1 + Fraction(1, 3) * t1 ** -1


def test_context_validation():
    with pytest.raises(ConfigError):
        SubstitutionContext(1, 1, (1, 2))
    with pytest.raises(ConfigError):
        SubstitutionContext(2, 0, (1,))
    with pytest.raises(ConfigError):
        SubstitutionContext(2, 2, (1, 2))
    assert CTX.theta_sum == Fraction(5, 6)
    assert CTX.shifted({1: 1}).theta == (Fraction(1, 2), Fraction(4, 3))


def test_complete_homogeneous_low_degrees():
    assert complete_homogeneous(0, CTX) == 1
    assert complete_homogeneous(-1, CTX).is_zero()
    assert complete_homogeneous(1, CTX) == H1
    p2 = Fraction(1, 2) * t0 ** 2 + Fraction(1, 3) * t1 ** 2
    assert complete_homogeneous(2, CTX) == (H1 * H1 + p2) / 2
    assert complete_homogeneous(1, CTX, inverse=True) == H1_INV


def test_universal_character_examples():
    one = Partition((1,))
    assert universal_character(EMPTY, EMPTY, CTX) == 1
    assert universal_character(one, EMPTY, CTX) == H1
    assert universal_character(EMPTY, one, CTX) == H1_INV
    assert universal_character(one, one, CTX) == H1_INV * H1 - 1


def test_universal_character_is_homogeneous():
    value = universal_character(Partition((2, 1)), Partition((1,)), CTX)
    assert value.degrees() == {2}


def test_simple_grid_cells(simple_grid):
    assert simple_grid.degrees == ((1, 1), (0, 0))
    assert simple_grid.cell(0, 0) == H1
    assert simple_grid.cell(2, 1) == H1
    assert simple_grid.cell(1, 0) == 1
    shifted = Fraction(3, 2) * t0 + Fraction(1, 3) * t1
    assert simple_grid.cell(0, 0, {0: 1}) == shifted
    assert shift_theta(simple_grid, 0, 1).cell(0, 1) == shifted


def test_shifted_grid_is_reused(simple_grid):
    first = shift_theta(simple_grid, 1, -1)
    assert shift_theta(simple_grid, 1, -1) is first
    assert simple_grid.cell(0, 0, {1: -1}) == first.cell(0, 0)
    assert shift_theta(simple_grid, 0, 0) is simple_grid


def test_grid_sign_and_correction(simple_grid):
    signed = simple_grid.with_signs([[1, -1], [1, 1]])
    assert signed.cell(0, 1) == -H1
    assert signed.cell(0, 1, {1: 1}) == -(Fraction(1, 2) * t0 + Fraction(4, 3) * t1)
    broken = simple_grid.corrupted(0, 0, LaurentPoly.constant(1, 2))
    assert broken.cell(0, 0) == H1 + 1
    assert broken.cell(0, 1) == H1


def test_mismatched_core_length():
    with pytest.raises(ConfigError):
        build_sigma_grid(CoreIndex((0, 0, 1)), CoreIndex((0, 0)), CTX)


def test_derive_parameters(simple_grid):
    params = derive_parameters(simple_grid)
    assert params.e == (Fraction(1, 2), Fraction(0))
    assert params.kappa == (Fraction(11, 12), Fraction(-1, 12))
    assert params.a_frak == (Fraction(-1, 2), Fraction(3, 2))
    assert sum(params.b_frak) == 1
    assert kappa_mn(simple_grid, 0, 0) == Fraction(11, 6)


def test_parameter_set_extension():
    params = ParameterSet((Fraction(1, 2), Fraction(1, 3)), (Fraction(1, 2), 0), (Fraction(11, 12), Fraction(-1, 12)))
    assert params.L == 2 and params.N == 1
    assert params.e_ext(2) == Fraction(3, 2)
    assert params.e_ext(-1) == -1
    assert params.kappa_ext(3) == Fraction(-1, 12)
    assert params.e_sum_ok()
    assert params.to_json()["a_frak"] == ["-1/2", "3/2"]


def test_parameter_set_rejects_bad_kappa():
    with pytest.raises(ConfigError):
        ParameterSet((Fraction(1, 2), Fraction(1, 3)), (Fraction(1, 2), 0), (0, 0))
    with pytest.raises(ConfigError):
        ParameterSet((Fraction(1, 2), Fraction(1, 3)), (Fraction(1, 2),), (Fraction(5, 6),))


@pytest.mark.parametrize("text, value", [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)), (0.25, Fraction(1, 4))])
def test_parse_rational(text, value):
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["abc", "1/0", True])
def test_parse_rational_rejects(text):
    with pytest.raises(ConfigError):
        parse_rational(text)
