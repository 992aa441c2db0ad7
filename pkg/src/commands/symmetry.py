"""
`symmetry`: relations, root-table agreement, canonicity and solution transport

How this file ties into the app:
- registered as the `symmetry` subcommand in `src/app.py`
- words come from the config as comma-separated tokens ("r1,pi"); on points the leftmost generator acts first
- an unknown token, or phi with N != 1, is a config error (exit 2)
"""

import random
from typing import Any, Dict, List

from dependencies import logger
from errors import IndeterminacyError
from hamiltonian import random_parameters, random_point
from identities import IdentityReport
from middleware import tracked_command
from models import RunConfig, SymmetryConfig
from solutions import canonical_from_sigma
from symmetry import (
    Generator, apply_word, check_canonicity, check_relations, check_root_table, parse_word, transport_solution,
    word_text,
)

from .reporting import exit_code_for, summarize, write_report

MAX_DRAWS = 50


def word_images(cfg: SymmetryConfig, words: List[List[Generator]], rng: random.Random) -> List[Dict[str, Any]]:
    """Each word applied to one random exact (constants, point) pair"""
    out = []
    for word in words:
        for _ in range(MAX_DRAWS):
            params, pt = random_parameters(rng, cfg.L, cfg.N), random_point(rng, cfg.L, cfg.N)
            try:
                image_params, image = apply_word(word, params, pt)
            except (IndeterminacyError, ZeroDivisionError):
                continue
            out.append({
                "word": word_text(word),
                "parameters": params.to_json(),
                "point": pt.to_json(),
                "image_parameters": image_params.to_json(),
                "image_point": image.to_json(),
            })
            break
        else:
            logger.warning(f"no regular point found for {word_text(word)} in {MAX_DRAWS} draws")
    return out


def canonicity_reports(cfg: SymmetryConfig, generators: List[Generator], rng: random.Random) -> List[IdentityReport]:
    reports = []
    for gen in generators:
        for _ in range(MAX_DRAWS):
            params, pt = random_parameters(rng, cfg.L, cfg.N), random_point(rng, cfg.L, cfg.N, exact=False)
            try:
                reports.append(check_canonicity(gen, params, pt))
            except (IndeterminacyError, ZeroDivisionError):
                continue
            break
    return reports


@tracked_command("symmetry")
def run_symmetry(config: RunConfig) -> int:
    cfg: SymmetryConfig = config.section("symmetry")
    rng = random.Random(config.seed)
    words = [parse_word(text, cfg.L, cfg.N) for text in cfg.words]
    generators = list(dict.fromkeys(gen for word in words for gen in word))

    gating: List[IdentityReport] = []
    if cfg.relations:
        gating += check_relations(cfg.L, cfg.N, cfg.trials, rng)
    sample_params = random_parameters(rng, cfg.L, cfg.N)
    for gen in generators:
        report = check_root_table(gen, sample_params)
        if report is not None:
            gating.append(report)
    if cfg.canonicity:
        gating += canonicity_reports(cfg, generators, rng)

    transported = []
    if cfg.grid is not None:
        solution = canonical_from_sigma(cfg.grid.build())
        for word in words:
            result = transport_solution(word, solution)
            gating += result.reports
            transported.append(result.to_json())

    body = {
        "summary": summarize(gating),
        "words": word_images(cfg, words, rng),
        "transported": transported,
        "pass": exit_code_for(gating) == 0,
    }
    write_report(config, "symmetry", body)
    return exit_code_for(gating)
