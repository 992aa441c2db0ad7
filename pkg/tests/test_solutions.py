from fractions import Fraction

import pytest

from characters import derive_parameters
from errors import ConfigError
from identities import all_passed
from solutions import canonical_from_sigma, check_extension

# simple grid at t_1 = 2 (t_0 = 1): h = 7/6, q = t_1(h + t_0)/(h + t_1), qp = θ_1(h − t_1)/(2h)
Q_AT_2 = Fraction(26, 19)
P_AT_2 = Fraction(-95, 1092)


def test_solution_shape(simple_grid):
    sol = canonical_from_sigma(simple_grid)
    assert (sol.L, sol.N) == (2, 1)
    assert len(sol.q) == 1 and len(sol.q[0]) == 1
    assert sol.params == derive_parameters(simple_grid)
    assert sol.point().s == sol.times()


def test_exact_evaluation(simple_grid):
    pt = canonical_from_sigma(simple_grid).evaluate([Fraction(2)])
    assert pt.s == (Fraction(4),)
    assert pt.q[0][0] == Q_AT_2
    assert pt.p[0][0] == P_AT_2
    assert pt.q[0][0] * pt.p[0][0] == Fraction(-5, 42)


def test_evaluation_on_positive_branch(simple_grid):
    pt = canonical_from_sigma(simple_grid).evaluate_at_s([4.0])
    assert pt.s == (4.0,)
    assert complex(pt.q[0][0]) == pytest.approx(float(Q_AT_2))
    assert complex(pt.p[0][0]) == pytest.approx(float(P_AT_2))


def test_evaluation_needs_n_times(simple_grid):
    with pytest.raises(ConfigError):
        canonical_from_sigma(simple_grid).evaluate([1, 2])


def test_extension_to_p0(simple_grid):
    reports = check_extension(canonical_from_sigma(simple_grid))
    assert len(reports) == 1
    assert all_passed(reports)
