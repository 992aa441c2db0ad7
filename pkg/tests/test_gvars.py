from fractions import Fraction

import numpy as np
import pytest

from gvars import (
    check_gvars, check_uv_relations, f_entry, g_entry, g_entry_hirota, gvars_from_sigma, theta_shift_relation,
)
from identities import all_passed
from laurent import variables

t0, t1 = variables(2)
H = Fraction(1, 2) * t0 + Fraction(1, 3) * t1


@pytest.mark.parametrize("n", [0, 1])
def test_f_alternates_between_rows(simple_grid, n):
    assert f_entry(simple_grid, 0, 0, n) == (H + t0) / H
    assert f_entry(simple_grid, 1, 1, n) == H / (H + t1)


@pytest.mark.parametrize("n", [0, 1])
def test_g_explicit_values(simple_grid, n):
    assert g_entry(simple_grid, 1, 0, n) == Fraction(1, 3) * (H + t1) / H
    assert g_entry(simple_grid, 0, 1, n) == Fraction(1, 2) * (H - t0) / H


def test_two_forms_of_g_agree(simple_grid):
    for i in range(2):
        for m in range(2):
            assert g_entry(simple_grid, i, m, 0) == g_entry_hirota(simple_grid, i, m, 0)


def test_check_gvars(simple_grid):
    reports = check_gvars(gvars_from_sigma(simple_grid))
    assert all_passed(reports)
    names = {r.identity for r in reports}
    assert names == {"gvars.g_forms", "gvars.f_conservation", "gvars.g_conservation", "gvars.kappa"}


@pytest.mark.parametrize("i", [0, 1])
def test_theta_shift_relation(simple_grid, i):
    assert all_passed(theta_shift_relation(simple_grid, i))


def test_uv_difference(simple_grid):
    reports = [r for r in check_uv_relations(simple_grid) if r.identity == "uv.difference"]
    # two ordered pairs, four cells each
    assert len(reports) == 8
    assert all_passed(reports)


def test_numeric_values_match_exact(simple_grid):
    gv = gvars_from_sigma(simple_grid)
    values = gv.values([1, 2])
    assert values["f"].shape == (2, 2, 2)
    exact = complex(gv.G(1, 0, 0).evaluate([Fraction(1), Fraction(2)]))
    assert np.isclose(values["g"][1, 0, 0], exact)
    # h = 1/2 + 2/3 = 7/6, g = θ_1(h + t_1)/h
    assert exact == pytest.approx(float(Fraction(1, 3) * Fraction(19, 6) / Fraction(7, 6)))
