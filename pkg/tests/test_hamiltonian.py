import random
from fractions import Fraction

import pytest

from characters import ParameterSet
from errors import ConfigError, IndeterminacyError, SingularLocusError
from hamiltonian import (
    ExtendedPhaseView, PhasePoint, check_mixed_partial, garnier_compare, garnier_inverse, garnier_parameters,
    garnier_transform, gradient, hamiltonian, mixed_partial, poisson_bracket, pvi_parameters, pvi_specialize,
    random_parameters, random_point, symbolic_point, to_float_point, vector_field,
)

PARAMS = ParameterSet((Fraction(1, 2), Fraction(1, 3)), (Fraction(1, 2), Fraction(0)), (Fraction(11, 12), Fraction(-1, 12)))


def test_phase_point_validation():
    with pytest.raises(ConfigError):
        PhasePoint((), [], [])
    with pytest.raises(ConfigError):
        PhasePoint((Fraction(2),), [[1], [2]], [[1]])
    with pytest.raises(ConfigError):
        PhasePoint((Fraction(2),), [[1]], [[1, 2]])
    with pytest.raises(ConfigError):
        PhasePoint((Fraction(2),), [[1.5]], [[Fraction(1)]])


def test_phase_point_flat_layout():
    pt = PhasePoint((2, 3), [[1, 2], [3, 4]], [[5, 6], [7, 8]])
    assert (pt.N, pt.L) == (2, 3)
    assert pt.flat() == [1, 2, 3, 4, 5, 6, 7, 8]
    assert PhasePoint.from_flat(pt.s, pt.flat(), 3) == pt
    with pytest.raises(ConfigError):
        PhasePoint.from_flat(pt.s, pt.flat()[:-1], 3)


@pytest.mark.parametrize("s", [(Fraction(0),), (Fraction(1),), (Fraction(2), Fraction(2))])
def test_singular_locus_exact(s):
    width = len(s)
    pt = PhasePoint(s, [[1]] * width, [[1]] * width)
    with pytest.raises(SingularLocusError):
        pt.check_regular()


def test_singular_locus_margin():
    pt = PhasePoint((0.999,), [[1.0]], [[1.0]])
    pt.check_regular()
    with pytest.raises(SingularLocusError) as info:
        pt.check_regular(0.01)
    assert info.value.last_state["s"] == ["0.999"]


def test_extended_symbols():
    pt = PhasePoint((Fraction(3),), [[Fraction(2)]], [[Fraction(5)]])
    view = ExtendedPhaseView(PARAMS, pt)
    assert view.q(0, 1) == 1 and view.q(1, 0) == 1
    assert view.q(1, 3) == 2 * 3
    assert view.p(1, 0) == Fraction(1, 3) - 10
    assert view.p(0, 1) == Fraction(-1, 12) - 10
    assert view.p(1, 2) == view.p(1, 0) / 3
    # Σ_i q_n p_n over the extended index set is κ_n, and θ_i along each row
    assert sum(view.q(i, 1) * view.p(i, 1) for i in range(2)) == PARAMS.kappa[1]
    assert sum(view.q(1, n) * view.p(1, n) for n in range(2)) == PARAMS.theta[1]


def test_parameter_mismatch():
    pt = random_point(random.Random(0), 3, 1)
    with pytest.raises(ConfigError):
        hamiltonian(PARAMS, pt, 1)
    with pytest.raises(ConfigError):
        hamiltonian(PARAMS, random_point(random.Random(0), 2, 1), 2)


def test_random_draws_are_consistent(rng):
    params = random_parameters(rng, 3, 2)
    assert params.e_sum_ok()
    assert sum(params.kappa) == sum(params.theta)
    pt = random_point(rng, 3, 2)
    pt.check_regular()
    assert to_float_point(pt).mode == "float"


def test_vector_field_is_hamiltonian(rng):
    params, pt = random_parameters(rng, 2, 1), random_point(rng, 2, 1)
    dq, dp = gradient(params, pt, 1)
    vq, vp = vector_field(params, pt, 1)
    assert vq == dp
    assert vp == [[-v for v in row] for row in dq]
    assert poisson_bracket(params, pt, 1, 1) == 0


def test_gradient_matches_symbolic_derivative(rng):
    params = random_parameters(rng, 3, 1)
    pt = random_point(rng, 3, 1)
    symbolic = symbolic_point(3, 1, pt.s)
    H = hamiltonian(params, symbolic, 1)
    values = [v for row in pt.q for v in row] + [v for row in pt.p for v in row]
    dq, dp = gradient(params, pt, 1)
    for n in range(2):
        assert H.derivative(n).evaluate(values) == dq[0][n]
        assert H.derivative(2 + n).evaluate(values) == dp[0][n]


def test_mixed_partials_exact(rng):
    for _ in range(3):
        params, pt = random_parameters(rng, 3, 2), random_point(rng, 3, 2)
        assert check_mixed_partial(params, pt, 1, 2).passed
        assert check_mixed_partial(params, pt, 2, 1).passed
        assert mixed_partial(params, pt, 1, 2) == mixed_partial(params, pt, 2, 1)


def test_mixed_partial_needs_two_flows(rng):
    with pytest.raises(ConfigError):
        mixed_partial(random_parameters(rng, 2, 2), random_point(rng, 2, 2), 1, 1)


@pytest.mark.parametrize("L", [2, 3])
def test_pvi_parameter_sum(rng, L):
    params = random_parameters(rng, L, 1)
    reports = [r for r in pvi_specialize(params, random_point(rng, L, 1)) if r.identity == "pvi.parameter_sum"]
    assert len(reports) == L - 1
    assert all(r.passed for r in reports)
    a = pvi_parameters(params)
    assert a[0] + a[1] + 2 * a[2] + a[3] + a[4] == 1


def test_pvi_needs_single_time(rng):
    with pytest.raises(ConfigError):
        pvi_specialize(random_parameters(rng, 2, 2), random_point(rng, 2, 2))


def test_garnier_coordinates_invert(rng):
    params = random_parameters(rng, 2, 2)
    for _ in range(10):
        pt = random_point(rng, 2, 2)
        try:
            gp = garnier_transform(params, pt)
        except IndeterminacyError:
            continue
        back = garnier_inverse(params, gp.s, gp.Q, gp.P)
        assert back == pt
        for i in range(2):
            assert gp.Q[i][0] * gp.P[i][0] == -pt.q[i][0] * pt.p[i][0]
        return
    pytest.fail("no regular point in 10 draws")


def test_garnier_needs_two_by_two(rng):
    with pytest.raises(ConfigError):
        garnier_parameters(random_parameters(rng, 3, 1))
    with pytest.raises(ConfigError):
        garnier_compare(random_parameters(rng, 3, 1), [Fraction(2)])
    with pytest.raises(ConfigError):
        garnier_compare(random_parameters(rng, 2, 2), [Fraction(2)])
