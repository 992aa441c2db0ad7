"""
`integrate`: float integration of the flows with exact-solution and trace diagnostics

Writes `trajectory.csv` and `integrate.json` to the output directory. When the
start lies on a rational solution, the endpoint is compared with the solution
evaluated at the endpoint's s.

How this file ties into the app:
- registered as the `integrate` subcommand in `src/app.py`
- exit code 4 when the path enters the singular-locus guard band
"""

import cmath
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from characters import ParameterSet
from dependencies import logger
from errors import EXIT_OK, ConfigError, SingularLocusError
from hamiltonian import PhasePoint, to_float_point
from integrator import Trajectory, closedness_residuals, integrate, two_route_error, write_csv
from lax import max_trace_mismatch
from middleware import tracked_command
from models import IntegrateConfig, RunConfig
from solutions import CanonicalSolution, canonical_from_sigma

from .reporting import write_report

ENDPOINT_TOLERANCE = 1e-8


def starting_state(cfg: IntegrateConfig) -> Tuple[ParameterSet, PhasePoint, Optional[CanonicalSolution]]:
    if cfg.grid is not None:
        if len(cfg.t_start) != cfg.grid.N:
            raise ConfigError(f"t_start needs N = {cfg.grid.N} entries")
        solution = canonical_from_sigma(cfg.grid.build())
        return solution.params, to_float_point(solution.evaluate(list(cfg.t_start))), solution
    return cfg.parameters.build(), cfg.point.build("float"), None


def endpoint_error(solution: CanonicalSolution, t_start: List[Any], traj: Trajectory) -> float:
    """Distance of the endpoint from the solution, following t_i = t_i(start)(s_i/s_i(start))^{1/L}"""
    begin, end = traj.samples[0].point, traj.endpoint
    t_end = [complex(t) * cmath.exp(cmath.log(complex(b) / complex(a)) / solution.L)
             for t, a, b in zip(t_start, begin.s, end.s)]
    exact = solution.evaluate(t_end)
    return float(np.max(np.abs(np.asarray(end.flat(), dtype=complex) - np.asarray(exact.flat(), dtype=complex))))


@tracked_command("integrate")
def run_integrate(config: RunConfig) -> int:
    cfg: IntegrateConfig = config.section("integrate")
    params, start, solution = starting_state(cfg)
    path: List[Any] = [list(start.s)] + [list(w) for w in cfg.path]
    try:
        traj = integrate(params, start, path, cfg.rtol, cfg.atol, cfg.singular_margin, cfg.samples_per_segment)
    except SingularLocusError as e:
        write_report(config, "integrate", {"aborted": e.to_dict()})
        raise
    csv_path = write_csv(traj, f"{config.out}/trajectory.csv")

    closedness = closedness_residuals(params, traj)
    diagnostics: Dict[str, Any] = {
        "samples": len(traj.samples),
        "solver": traj.metadata,
        "max_trace_hamiltonian_mismatch": max_trace_mismatch(params, [s.point for s in traj.samples]),
        "max_bracket": max(closedness) if closedness else 0.0,
    }
    if solution is not None:
        error = endpoint_error(solution, list(cfg.t_start), traj)
        diagnostics["endpoint_error"] = error
        diagnostics["endpoint_within_tolerance"] = error <= ENDPOINT_TOLERANCE
    if cfg.two_route_end is not None:
        diagnostics["two_route"] = two_route_error(params, start, cfg.two_route_end,
                                                   cfg.rtol, cfg.atol, cfg.singular_margin)
    logger.info(f"integration finished with {len(traj.samples)} samples")
    write_report(config, "integrate", {"trajectory_csv": csv_path, "diagnostics": diagnostics})
    return EXIT_OK
