import random

import pytest
from hypothesis import given, settings, strategies as st

from errors import ConfigError, IndeterminacyError
from hamiltonian import random_parameters, random_point
from identities import all_passed
from solutions import canonical_from_sigma
from symmetry import (
    Generator, apply, apply_word, check_canonicity, check_relations, check_root_table, parameter_action,
    parse_generator, parse_word, relation_words, root_action, transport_solution, word_parameter_action, word_text,
)

DRAWS = 30


def regular_draws(rng, L, N, count, exact=True):
    """(constants, point) pairs; the caller skips draws that hit an indeterminacy"""
    for _ in range(count):
        yield random_parameters(rng, L, N), random_point(rng, L, N, exact=exact)


def test_parse_tokens():
    word = parse_word("r1,pi, r0' ,zeta01,eta1,rho,iota", 2, 1)
    assert [g.kind for g in word] == ["r", "pi", "r'", "zeta", "eta", "rho", "iota"]
    assert word[3].indices == (0, 1)
    assert word_text(word) == "r1,pi,r0',zeta01,eta1,rho,iota"
    assert parse_generator("zeta1_2", 2, 2) == Generator("zeta", (1, 2))
    assert parse_word("", 2, 1) == []


@pytest.mark.parametrize(
    "token, L, N",
    [("foo", 2, 1), ("r2", 2, 1), ("eta3", 2, 2), ("zeta11", 2, 1), ("zeta1", 2, 1), ("phi", 2, 2)],
)
def test_bad_tokens(token, L, N):
    with pytest.raises(ConfigError):
        parse_generator(token, L, N)


def test_phi_rejected_at_apply(rng):
    with pytest.raises(ConfigError):
        apply(Generator("phi"), random_parameters(rng, 2, 2), random_point(rng, 2, 2))


@pytest.mark.parametrize("n", [0, 1, 2])
def test_reflection_flips_root(rng, n):
    params = random_parameters(rng, 3, 1)
    image = parameter_action(Generator("r", (n,)), params)
    assert image.a_frak[n] == -params.a_frak[n]
    assert image.b_frak == params.b_frak
    assert sum(image.e) == sum(params.e)


@pytest.mark.parametrize("L, N", [(2, 1), (3, 2)])
def test_root_table_agrees(rng, L, N):
    params = random_parameters(rng, L, N)
    tokens = [f"r{n}" for n in range(L)] + [f"r{n}'" for n in range(L)]
    tokens += ["pi", "rho", "iota"] + [f"eta{i}" for i in range(N + 1)]
    for token in tokens:
        report = check_root_table(parse_generator(token, L, N), params)
        assert report is not None and report.passed, token
    assert root_action(Generator("phi"), random_parameters(rng, L, 1)) is None


def test_iota_squares_to_identity_on_constants(rng):
    params = random_parameters(rng, 3, 2)
    assert word_parameter_action(parse_word("iota,iota", 3, 2), params) == params


def test_pi_order_on_constants(rng):
    params = random_parameters(rng, 3, 1)
    assert word_parameter_action(parse_word("pi,pi,pi", 3, 1), params) == params


@pytest.mark.parametrize(
    "L, N, words",
    [
        (2, 1, ["r1,r1", "r1',r1'", "pi,pi", "rho,rho", "zeta0_1,zeta0_1", "phi,phi"]),
        (2, 2, ["zeta1_2,zeta1_2", "zeta0_2,zeta0_2"]),
    ],
)
def test_involutions(rng, L, N, words):
    for text in words:
        word = parse_word(text, L, N)
        checked = 0
        for params, pt in regular_draws(rng, L, N, DRAWS):
            try:
                image = apply_word(word, params, pt)
            except (IndeterminacyError, ZeroDivisionError):
                continue
            assert image == (params, pt), text
            checked += 1
        assert checked > 0, text


def test_relations_report(rng):
    reports = check_relations(2, 1, trials=3, rng=rng)
    assert len(reports) == len(relation_words(2, 1))
    wanted = {"r1,r1", "r1',r1'", "pi,pi", "rho,rho", "phi,phi", "zeta0_1,zeta0_1"}
    chosen = [r for r in reports if r.indices["left"] in wanted]
    assert len(chosen) == len(wanted)
    assert all(r.passed for r in chosen)


@pytest.mark.parametrize(
    "token, L, N",
    [("pi", 2, 1), ("rho", 2, 1), ("r1", 2, 1), ("phi", 2, 1), ("zeta10", 2, 1), ("zeta12", 2, 2)],
)
def test_canonicity(token, L, N):
    gen = parse_generator(token, L, N)
    rng = random.Random(99)
    for params, pt in regular_draws(rng, L, N, DRAWS, exact=False):
        try:
            report = check_canonicity(gen, params, pt)
        except (IndeterminacyError, ZeroDivisionError):
            continue
        assert report.passed, report.residual
        return
    pytest.fail(f"no regular point for {token}")


def test_pi_moves_time(rng):
    params, pt = random_parameters(rng, 2, 1), random_point(rng, 2, 1)
    _, image = apply(Generator("pi"), params, pt)
    assert image.s == pt.s
    # q' = s/q on L = 2
    assert image.q[0][0] == pt.s[0] / pt.q[0][0]


@st.composite
def generator_on_constants(draw):
    L = draw(st.integers(min_value=2, max_value=4))
    N = draw(st.integers(min_value=1, max_value=3))
    tokens = [f"r{n}" for n in range(L)] + [f"r{n}'" for n in range(L)] + ["pi", "rho", "iota"]
    tokens += [f"eta{i}" for i in range(N + 1)] + [f"zeta{i}_{j}" for i in range(N + 1) for j in range(N + 1) if i != j]
    if N == 1:
        tokens.append("phi")
    params = random_parameters(random.Random(draw(st.integers(min_value=0, max_value=10_000))), L, N)
    return parse_generator(draw(st.sampled_from(tokens)), L, N), params


@settings(max_examples=80, deadline=None)
@given(generator_on_constants())
def test_generators_keep_parameter_sums(case):
    gen, params = case
    image = parameter_action(gen, params)
    assert sum(image.kappa) == sum(image.theta)
    assert sum(image.a_frak) == 1
    assert sum(image.b_frak) == 1


def test_word_acts_leftmost_first(rng):
    word = parse_word("pi,r1", 3, 1)
    for params, pt in regular_draws(rng, 3, 1, DRAWS):
        try:
            expected = apply(word[1], *apply(word[0], params, pt))
        except (IndeterminacyError, ZeroDivisionError):
            continue
        assert apply_word(word, params, pt) == expected
        assert word_parameter_action(word, params) == expected[0]
        return
    pytest.fail("no regular point for pi,r1")


@pytest.mark.parametrize("L, N", [(2, 1), (3, 1), (3, 2)])
def test_every_relation_holds(L, N):
    reports = check_relations(L, N, trials=4, rng=random.Random(L * 10 + N))
    failed = [(r.indices["left"], r.indices["right"]) for r in reports if not r.passed]
    assert failed == []


@pytest.mark.slow
@pytest.mark.parametrize("L, N", [(2, 1), (3, 1), (3, 2)])
def test_every_relation_holds_at_twenty_points(L, N):
    assert all_passed(check_relations(L, N, trials=20, rng=random.Random(7)))


def test_unevaluated_relation_fails(monkeypatch):
    def indeterminate(word, params, pt):
        raise IndeterminacyError("denominator vanishes", denominator="q")

    monkeypatch.setattr("symmetry.apply_word", indeterminate)
    reports = check_relations(2, 1, trials=2, rng=random.Random(0), max_attempts=1)
    assert reports
    assert not any(r.passed for r in reports)
    assert all(r.detail.startswith("only 0 of 2 points") for r in reports)


@pytest.mark.parametrize("text", ["r1,r1", "pi,r1", "r1,pi"])
def test_transport_of_rational_solution(simple_grid, text):
    solution = canonical_from_sigma(simple_grid)
    result = transport_solution(parse_word(text, 2, 1), solution)
    assert result.passed, text
    if text == "r1,r1":
        assert result.point == solution.point()
        assert result.params == solution.params
