"""Exact certification on non-trivial σ-grids beyond the two-by-one example"""

import pytest

from characters import SubstitutionContext, build_sigma_grid
from gvars import check_uv_relations, g_system_residual
from identities import all_passed, check_bilinear, check_toda_all
from lax import build_lax_from_sigma, check_factorization, check_rank_one, schlesinger_residual, zero_curvature_residual
from partitions import CoreIndex
from scalars import generic_theta
from solutions import canonical_from_sigma, check_extension, flow_residual

FAST = [(2, 2, (0, 1), (1, 0)), (3, 1, (0, 1, 0), (0, 0, 1))]
SLOW = [(3, 2, (0, 1, 0), (0, 0, 1))]
FAMILY = [pytest.param(*case) for case in FAST] + [pytest.param(*case, marks=pytest.mark.slow) for case in SLOW]


def family_grid(L, N, nu, nu_prime):
    ctx = SubstitutionContext(L, N, tuple(generic_theta(N + 1)))
    return build_sigma_grid(CoreIndex(nu), CoreIndex(nu_prime), ctx)


@pytest.mark.parametrize("L, N, nu, nu_prime", FAMILY)
def test_bilinear_and_toda(L, N, nu, nu_prime):
    grid = family_grid(L, N, nu, nu_prime)
    assert all_passed(check_bilinear(grid))
    assert all_passed(check_toda_all(grid))


@pytest.mark.parametrize("L, N, nu, nu_prime", FAMILY)
def test_g_system(L, N, nu, nu_prime):
    grid = family_grid(L, N, nu, nu_prime)
    assert all_passed(g_system_residual(grid))
    assert all_passed(check_uv_relations(grid))


@pytest.mark.parametrize("L, N, nu, nu_prime", FAMILY)
def test_rational_solution_follows_the_flows(L, N, nu, nu_prime):
    solution = canonical_from_sigma(family_grid(L, N, nu, nu_prime))
    assert all_passed(check_extension(solution))
    assert all_passed(flow_residual(solution))


@pytest.mark.parametrize("L, N, nu, nu_prime", FAMILY)
def test_lax_pair_from_sigma(L, N, nu, nu_prime):
    lax = build_lax_from_sigma(family_grid(L, N, nu, nu_prime))
    assert all_passed(check_factorization(lax))
    assert all_passed(check_rank_one(lax))
    assert all_passed(schlesinger_residual(lax))


@pytest.mark.slow
@pytest.mark.parametrize("L, N, nu, nu_prime", FAST + SLOW)
def test_zero_curvature(L, N, nu, nu_prime):
    lax = build_lax_from_sigma(family_grid(L, N, nu, nu_prime))
    for i in range(1, N + 1):
        assert all_passed(zero_curvature_residual(lax, i))
