"""
`pvi-compare` and `garnier-compare`: reductions to the classical Hamiltonians

How this file ties into the app:
- `pvi-compare` (N = 1): H_1 against the P_VI Hamiltonian (L = 2) or its coupled form (L >= 3)
- `garnier-compare` (L = 2): H_i in Garnier coordinates against the Garnier Hamiltonian
- both read the `compare` section; constants and times are random exact values when omitted
"""

import random
from fractions import Fraction
from typing import Any, Dict, List

from characters import ParameterSet
from errors import ConfigError
from hamiltonian import (
    garnier_compare, garnier_parameters, pvi_parameters, pvi_specialize, random_parameters, random_times,
    symbolic_point,
)
from middleware import tracked_command
from models import CompareConfig, RunConfig

from .reporting import exit_code_for, summarize, write_report


def compare_parameters(cfg: CompareConfig, rng: random.Random) -> ParameterSet:
    if cfg.parameters is None:
        return random_parameters(rng, cfg.L, cfg.N)
    params = cfg.parameters.build()
    if (params.L, params.N) != (cfg.L, cfg.N):
        raise ConfigError(f"parameters are for (L, N) = ({params.L}, {params.N}), compare section says ({cfg.L}, {cfg.N})")
    return params


def _as_text(values: Dict[str, Any]) -> Dict[str, str]:
    return {key: str(value) for key, value in values.items()}


@tracked_command("pvi-compare")
def run_pvi_compare(config: RunConfig) -> int:
    cfg: CompareConfig = config.section("compare")
    if cfg.N != 1:
        raise ConfigError(f"pvi-compare needs N = 1, got N = {cfg.N}")
    params = compare_parameters(cfg, random.Random(config.seed))
    reports = pvi_specialize(params, symbolic_point(cfg.L, 1))
    body = {
        "parameters": params.to_json(),
        "pvi_parameters": [[str(a) for a in pvi_parameters(params, n)] for n in range(1, cfg.L)],
        "summary": summarize(reports),
        "pass": exit_code_for(reports) == 0,
    }
    write_report(config, "pvi-compare", body)
    return exit_code_for(reports)


@tracked_command("garnier-compare")
def run_garnier_compare(config: RunConfig) -> int:
    cfg: CompareConfig = config.section("compare")
    if cfg.L != 2:
        raise ConfigError(f"garnier-compare needs L = 2, got L = {cfg.L}")
    rng = random.Random(config.seed)
    params = compare_parameters(cfg, rng)
    s: List[Fraction] = list(cfg.s) if cfg.s is not None else list(random_times(rng, cfg.N))
    reports = garnier_compare(params, s)
    body = {
        "parameters": params.to_json(),
        "s": [str(v) for v in s],
        "garnier_parameters": _as_text(garnier_parameters(params)),
        "summary": summarize(reports),
        "pass": exit_code_for(reports) == 0,
    }
    write_report(config, "garnier-compare", body)
    return exit_code_for(reports)
