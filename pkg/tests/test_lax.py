import pytest

from errors import ComputationError, ConfigError
from hamiltonian import FLOAT_TOLERANCE, random_parameters, random_point
from identities import all_passed
from lax import (
    QP_GAUGE, accessory_count, build_lax_from_point, build_lax_from_sigma, characteristic_polynomial,
    check_factorization, check_rank_one, check_trace_hamiltonian, evaluate_lax, lax_summary, max_trace_mismatch,
    riemann_scheme, schlesinger_residual, trace_hamiltonian, zero_curvature_matrix,
)
from partitions import Partition

SHAPES = [(2, 1), (2, 2), (3, 1), (3, 2)]


@pytest.mark.parametrize("L, N", SHAPES)
def test_qp_gauge_factorization(rng, L, N):
    lax = build_lax_from_point(random_parameters(rng, L, N), random_point(rng, L, N))
    assert lax.gauge == QP_GAUGE
    assert len(lax.A) == N + 3
    assert all_passed(check_factorization(lax))
    assert all_passed(check_rank_one(lax))


@pytest.mark.parametrize("L, N", SHAPES)
def test_riemann_scheme(rng, L, N):
    lax = build_lax_from_point(random_parameters(rng, L, N), random_point(rng, L, N))
    scheme = riemann_scheme(lax)
    assert scheme.passed
    assert [row["singularity"] for row in scheme.rows] == [f"u{i}" for i in range(N + 1)] + ["0", "inf"]
    assert scheme.to_json()["pass"] is True


@pytest.mark.parametrize("L, N", SHAPES)
def test_trace_hamiltonian_exact(rng, L, N):
    for _ in range(2):
        reports = check_trace_hamiltonian(random_parameters(rng, L, N), random_point(rng, L, N))
        assert all_passed(reports)
        assert {r.identity for r in reports} == {"lax.trace_pairing", "lax.trace_infinity", "lax.trace_hamiltonian"}


def test_trace_hamiltonian_float(rng):
    params = random_parameters(rng, 3, 2)
    points = [random_point(rng, 3, 2, exact=False) for _ in range(3)]
    for pt in points:
        assert all_passed(check_trace_hamiltonian(params, pt, tolerance=FLOAT_TOLERANCE))
    assert max_trace_mismatch(params, points) < FLOAT_TOLERANCE


def test_trace_hamiltonian_index(rng):
    lax = build_lax_from_point(random_parameters(rng, 2, 1), random_point(rng, 2, 1))
    with pytest.raises(ConfigError):
        trace_hamiltonian(lax, 0)


def test_accessory_count_examples():
    assert accessory_count([(1, 1)] * 4) == 2
    assert accessory_count([(2, 1)] * 3 + [(1, 1, 1)] * 2) == 8
    assert accessory_count([Partition((1, 1))] * 4, n_sing=4) == 2


@pytest.mark.parametrize(
    "spectral, n_sing",
    [([], None), ([(1, 1), (2, 1)], None), ([(1, 1)] * 4, 5)],
)
def test_accessory_count_errors(spectral, n_sing):
    with pytest.raises(ConfigError):
        accessory_count(spectral, n_sing)


def test_summary_of_qp_gauge(rng):
    lax = build_lax_from_point(random_parameters(rng, 2, 1), random_point(rng, 2, 1))
    summary = lax_summary(lax)
    assert summary["expected_accessory_parameters"] == 2
    assert len(summary["spectral_type"]) == 4
    assert summary["riemann_scheme"]["pass"] is True
    # A_0 and A_1 are rank one with the non-zero eigenvalue −θ_i
    assert summary["spectral_type"][0] == [1, 1]


def test_v_gauge_needs_evaluation(simple_grid):
    lax = build_lax_from_sigma(simple_grid)
    assert lax.gauge == "v"
    assert len(lax.A) == 4
    with pytest.raises(ComputationError):
        lax_summary(lax)
    with pytest.raises(ConfigError):
        characteristic_polynomial(lax.A[0])


def test_qp_gauge_rejects_v_only_operations(rng):
    lax = build_lax_from_point(random_parameters(rng, 2, 1), random_point(rng, 2, 1))
    with pytest.raises(ConfigError):
        evaluate_lax(lax, [2])
    with pytest.raises(ConfigError):
        zero_curvature_matrix(lax, 1)
    with pytest.raises(ConfigError):
        schlesinger_residual(lax)
