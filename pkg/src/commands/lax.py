"""
`lax`: Lax-pair diagnostics for one σ-grid

How this file ties into the app:
- registered as the `lax` subcommand in `src/app.py`
- builds both gauges: v-gauge from σ, qp-gauge from random exact phase points
- Riemann scheme, spectral type and accessory count go into `lax.json`
"""

import random
from typing import Any, Dict, List, Tuple

from dependencies import logger
from hamiltonian import FLOAT_TOLERANCE, random_parameters, random_point
from identities import IdentityReport
from lax import (
    LaxData, build_lax_from_point, build_lax_from_sigma, check_factorization, check_rank_one,
    check_trace_hamiltonian, evaluate_lax, gauge_invariant_traces, lax_summary, riemann_scheme, schlesinger_bare,
    schlesinger_residual, zero_curvature_residual,
)
from middleware import tracked_command
from models import LaxConfig, RunConfig
from scalars import EXACT

from .reporting import exit_code_for, summarize, write_report


def summarize_lax(lax: LaxData) -> Tuple[Dict[str, Any], List[IdentityReport]]:
    """JSON summary of numeric Lax data plus the Riemann-scheme reports"""
    scheme = riemann_scheme(lax)
    summary = lax_summary(lax, scheme)
    logger.info(f"{lax.gauge}-gauge spectral type {summary['spectral_type']}, "
                f"{summary['accessory_parameters']} accessory parameters")
    return summary, scheme.reports


@tracked_command("lax")
def run_lax(config: RunConfig) -> int:
    cfg: LaxConfig = config.section("lax")
    rng = random.Random(config.seed)
    grid = cfg.grid.build()
    L, N = grid.L, grid.N

    gating: List[IdentityReport] = []
    informational: List[IdentityReport] = []
    v_lax = build_lax_from_sigma(grid)
    gating += check_factorization(v_lax)
    gating += check_rank_one(v_lax)
    gating += schlesinger_residual(v_lax)
    informational += schlesinger_bare(v_lax)
    informational += gauge_invariant_traces(grid)
    if cfg.zero_curvature:
        for i in range(1, N + 1):
            gating += zero_curvature_residual(v_lax, i)

    body: Dict[str, Any] = {}
    if cfg.t_point is not None:
        body["v_gauge"], reports = summarize_lax(evaluate_lax(v_lax, list(cfg.t_point)))
        gating += reports

    params, pt = random_parameters(rng, L, N), random_point(rng, L, N)
    qp_lax = build_lax_from_point(params, pt)
    gating += check_factorization(qp_lax)
    gating += check_rank_one(qp_lax)
    body["qp_gauge"], reports = summarize_lax(qp_lax)
    gating += reports
    body["qp_gauge"]["point"] = {"parameters": params.to_json(), **pt.to_json()}

    exact = config.mode == EXACT
    tolerance = 0.0 if exact else FLOAT_TOLERANCE
    for _ in range(cfg.random_points):
        point = random_point(rng, L, N, exact=exact)
        gating += check_trace_hamiltonian(random_parameters(rng, L, N), point, tolerance=tolerance)

    body.update({
        "summary": summarize(gating),
        "informational": summarize(informational),
        "pass": exit_code_for(gating) == 0,
    })
    write_report(config, "lax", body)
    return exit_code_for(gating)
