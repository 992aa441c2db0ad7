import time
from fractions import Fraction

import pytest

from characters import SubstitutionContext, build_sigma_grid
from errors import ConfigError
from identities import (
    all_passed, check_antisymmetry, check_bilinear, check_duc, check_duc_all, check_toda, check_toda_all,
    duc_instances, failures, make_report, sign_search,
)
from laurent import LaurentPoly
from partitions import CoreIndex


def test_simple_grid_bilinear(simple_grid):
    reports = check_bilinear(simple_grid)
    # 4 cells, 2 ordered pairs with two identities each, 2 hirota_i, 1 homogeneity
    assert len(reports) == 4 * (2 * 2 + 2 + 1)
    assert all_passed(reports)
    assert {r.identity for r in reports} == {
        "bilinear.cross", "bilinear.hirota_i", "bilinear.hirota_ij", "bilinear.homogeneity",
    }


def test_simple_grid_toda(simple_grid):
    reports = check_toda_all(simple_grid)
    assert len(reports) == 4
    assert all_passed(reports)


def test_toda_needs_distinct_indices(simple_grid):
    with pytest.raises(ConfigError):
        check_toda(simple_grid, 0, 0, 1, 1)


def test_cross_identity_is_antisymmetric(simple_grid):
    assert check_antisymmetry(simple_grid, 0, 1, 0, 1).passed


def test_corrupted_grid_is_caught(simple_grid):
    broken = simple_grid.corrupted(0, 0, LaurentPoly.constant(1, 2))
    bad = failures(check_bilinear(broken))
    assert bad
    assert any(r.identity == "bilinear.homogeneity" and r.indices == {"m": 0, "n": 0} for r in bad)
    report = bad[0].to_json()
    assert report["pass"] is False
    assert report["residual_terms"] > 0
    assert "residual" in report


def test_sign_search_keeps_plain_grid(simple_grid):
    assert sign_search(simple_grid) == ((1, 1), (1, 1))
    with pytest.raises(ConfigError):
        sign_search(simple_grid, max_L=1)


def test_duc_instances_shape():
    instances = duc_instances(1)
    assert {"family": 2, "I": (0,), "J": (), "m": 0, "n": 0} in instances
    assert {"family": 1, "I": (0, 1), "J": (), "m": 0, "n": 0} in instances
    for inst in duc_instances(3):
        gap = len(inst["I"]) - len(inst["J"])
        assert not set(inst["I"]) & set(inst["J"])
        if inst["family"] == 1:
            assert gap == inst["m"] + inst["n"] + 2
        elif inst["family"] == 2:
            assert gap == inst["n"] + 1
        else:
            assert gap == inst["m"] + 1


def test_duc_on_constant_grid(constant_grid):
    reports = check_duc_all(constant_grid, bases=[(0, 0), (1, 0)])
    assert reports
    assert all_passed(reports)
    assert {r.identity for r in reports} == {"duc.family1", "duc.family2", "duc.family3"}


@pytest.mark.parametrize(
    "family, I, J, m, n",
    [
        (1, (0, 1), (1,), 0, 0),
        (1, (0, 5), (), 0, 0),
        (1, (0, 1), (), 0, 1),
        (2, (0,), (), -1, 0),
        (4, (0,), (), 0, 0),
    ],
)
def test_duc_config_errors(constant_grid, family, I, J, m, n):
    with pytest.raises(ConfigError):
        check_duc(constant_grid, family, I, J, m, n)


def test_numeric_report_tolerance():
    start = time.perf_counter()
    close = make_report("numeric", {"k": 0}, 1e-12, start, tolerance=1e-9)
    far = make_report("numeric", {"k": 1}, 1e-3, start, tolerance=1e-9)
    assert close.passed and not close.symbolic
    assert not far.passed
    assert far.to_json()["residual_abs"] == pytest.approx(1e-3)


@pytest.mark.slow
def test_constant_grid_with_three_times():
    ctx = SubstitutionContext(3, 2, (Fraction(1, 2), Fraction(1, 3), Fraction(2, 5)))
    grid = build_sigma_grid(CoreIndex((0, 0, 0)), CoreIndex((0, 0, 0)), ctx)
    assert all_passed(check_bilinear(grid))
    assert all_passed(check_toda_all(grid))
