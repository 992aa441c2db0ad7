from fractions import Fraction

import pytest
from pydantic import ValidationError

from errors import ConfigError
from models import GridConfig, IntegrateConfig, PointConfig, RunConfig, load_config

GRID = {"L": 2, "N": 1, "nu": [0, 1], "nu_prime": [0, 0]}


def test_rationals_parse_from_strings():
    grid = GridConfig(**GRID, theta=["1/2", "-1/3"])
    assert grid.theta == [Fraction(1, 2), Fraction(-1, 3)]
    assert grid.model_dump(mode="json")["theta"] == ["1/2", "-1/3"]
    point = PointConfig(s=["0.25"], q=[[2]], p=[["3/4"]])
    assert point.build().s == (Fraction(1, 4),)
    assert [list(row) for row in point.build("float").p] == [[0.75]]


def test_bad_rational_is_a_config_error():
    with pytest.raises(ConfigError):
        GridConfig(**GRID, theta=["1/2", "x/3"])
    with pytest.raises(ConfigError):
        GridConfig(**GRID, theta=["1/2", "1/0"])


def test_generic_theta_when_omitted():
    grid = GridConfig(**GRID)
    assert len(grid.resolved_theta()) == 2
    assert grid.build().context.N == 1


@pytest.mark.parametrize(
    "changes",
    [{"nu": [0]}, {"nu_prime": [0, 0, 0]}, {"theta": ["1/2"]}, {"L": 1}, {"N": 0}],
)
def test_grid_shape_errors(changes):
    with pytest.raises(ValidationError):
        GridConfig(**{**GRID, **changes})


def test_integrate_needs_one_start():
    point = {"s": ["1/2"], "q": [["2"]], "p": [["1/3"]]}
    parameters = {"theta": ["1/2", "1/3"], "e": ["1/2", "0"], "kappa": ["11/12", "-1/12"]}
    IntegrateConfig(parameters=parameters, point=point)
    IntegrateConfig(grid=GRID, t_start=["2"])
    with pytest.raises(ValidationError):
        IntegrateConfig()
    with pytest.raises(ValidationError):
        IntegrateConfig(grid=GRID, t_start=["2"], parameters=parameters, point=point)
    with pytest.raises(ValidationError):
        IntegrateConfig(grid=GRID)


def test_load_config(write_config):
    path = write_config({"seed": 3, "symmetry": {"L": 3, "N": 1, "words": ["pi,pi,pi"]}})
    config = load_config(path, {"seed": 11, "out": None})
    assert config.seed == 11
    assert config.section("symmetry").words == ["pi,pi,pi"]
    assert config.resolved()["symmetry"]["L"] == 3
    with pytest.raises(ConfigError):
        config.section("certify")


def test_load_config_without_file():
    config = load_config(None)
    assert isinstance(config, RunConfig)
    assert config.mode in ("exact", "float")


def test_load_config_errors(tmp_path, write_config):
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "missing.json"))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_config(str(bad))
    with pytest.raises(ValidationError):
        load_config(write_config({"sed": 1}))
