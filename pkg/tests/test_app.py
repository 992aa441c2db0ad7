import csv
import json

import pytest

from app import build_parser, main

SIMPLE_GRID = {"L": 2, "N": 1, "nu": [0, 1], "nu_prime": [0, 0], "theta": ["1/2", "1/3"]}
EXPLICIT_START = {
    "parameters": {"theta": ["1/2", "1/3"], "e": ["1/2", "0"], "kappa": ["11/12", "-1/12"]},
    "point": {"s": ["1/2"], "q": [["2"]], "p": [["1/3"]]},
}


def run(command, config_path, out):
    return main([command, "--config", config_path, "--out", str(out)])


def read_report(out, name):
    with open(out / name) as handle:
        return json.load(handle)


def test_parser_requires_a_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
    args = build_parser().parse_args(["lax", "--seed", "5", "--mode", "float"])
    assert (args.command, args.seed, args.mode) == ("lax", 5, "float")


def test_certify_simple_grid(tmp_path, write_config):
    path = write_config({"certify": {"grids": [SIMPLE_GRID], "duc": False, "phase": False, "lax": False}})
    assert run("certify", path, tmp_path / "out") == 0
    report = read_report(tmp_path / "out", "certify.json")
    assert report["pass"] is True
    assert report["config"]["certify"]["grids"][0]["theta"] == ["1/2", "1/3"]
    assert report["grids"][0]["summary"]["total_failures"] == 0


@pytest.mark.parametrize(
    "command, config",
    [
        ("certify", {}),
        ("certify", {"certify": {"grids": []}}),
        ("symmetry", {"symmetry": {"L": 2, "N": 2, "words": ["phi"]}}),
        ("symmetry", {"symmetry": {"L": 2, "N": 1, "words": ["r5"]}}),
        ("garnier-compare", {"compare": {"L": 3, "N": 1}}),
        ("pvi-compare", {"compare": {"L": 2, "N": 2}}),
        ("integrate", {"integrate": {"grid": SIMPLE_GRID}}),
    ],
)
def test_config_errors_exit_2(tmp_path, write_config, command, config):
    assert run(command, write_config(config), tmp_path / "out") == 2


def test_unreadable_config_exits_2(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    assert run("certify", str(bad), tmp_path) == 2
    assert run("certify", str(tmp_path / "missing.json"), tmp_path) == 2


def test_integrate_explicit_start(tmp_path, write_config):
    out = tmp_path / "out"
    path = write_config({"integrate": {**EXPLICIT_START, "path": []}})
    assert run("integrate", path, out) == 0
    with open(out / "trajectory.csv") as handle:
        rows = list(csv.reader(handle))
    assert len(rows) == 2
    report = read_report(out, "integrate.json")
    assert report["diagnostics"]["samples"] == 1
    assert report["diagnostics"]["max_trace_hamiltonian_mismatch"] < 1e-9


def test_integrate_aborts_near_singular_locus(tmp_path, write_config):
    start = {**EXPLICIT_START, "point": {"s": ["0.99"], "q": [["2"]], "p": [["1/3"]]}}
    out = tmp_path / "out"
    path = write_config({"integrate": {**start, "path": [[1.0]], "singular_margin": 0.005}})
    assert run("integrate", path, out) == 4
    assert read_report(out, "integrate.json")["aborted"]["exit_code"] == 4


def test_integrate_from_rational_solution(tmp_path, write_config):
    out = tmp_path / "out"
    path = write_config({"integrate": {"grid": SIMPLE_GRID, "t_start": ["2"], "path": []}})
    assert run("integrate", path, out) == 0
    diagnostics = read_report(out, "integrate.json")["diagnostics"]
    assert diagnostics["endpoint_within_tolerance"] is True


def test_symmetry_words(tmp_path, write_config):
    out = tmp_path / "out"
    config = {"seed": 4, "symmetry": {"L": 2, "N": 1, "words": ["r1,r1", "pi"], "relations": False, "canonicity": False}}
    assert run("symmetry", write_config(config), out) == 0
    report = read_report(out, "symmetry.json")
    assert [w["word"] for w in report["words"]] == ["r1,r1", "pi"]
    assert report["config"]["seed"] == 4
