"""
Float integration of the Hamiltonian flows along piecewise-linear paths in s

On a segment s(τ) = a + (τ − k)(b − a), τ ∈ [k, k+1], the state obeys
dy/dτ = Σ_j (b_j − a_j) X_j(s, y) with X_j the s_j-flow of `vector_field`.
Each segment is one `scipy.integrate.solve_ivp` call (DOP853) with a terminal
event at the singular-locus guard band.

How this file ties into the app:
- `commands/integrate.py` calls `integrate`, `write_csv` and `two_route_error`
- `commands/integrate.py` re-checks the trace formula at every sample through `lax.max_trace_mismatch`
"""

import csv
import os
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from characters import ParameterSet
from dependencies import logger, settings
from errors import ComputationError, ConfigError, SingularLocusError
from hamiltonian import PhasePoint, hamiltonian, poisson_bracket, to_float_point, vector_field

METHOD = "DOP853"


@dataclass
class Sample:
    step: int
    path_param: float
    point: PhasePoint
    H: Tuple[float, ...]


@dataclass
class Trajectory:
    L: int
    N: int
    samples: List[Sample] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def endpoint(self) -> PhasePoint:
        return self.samples[-1].point

    def header(self) -> List[str]:
        s_cols = [f"s{i}" for i in range(1, self.N + 1)]
        q_cols = [f"q_{n}_{i}" for i in range(1, self.N + 1) for n in range(1, self.L)]
        p_cols = [f"p_{n}_{i}" for i in range(1, self.N + 1) for n in range(1, self.L)]
        h_cols = [f"H{i}" for i in range(1, self.N + 1)]
        return ["step", "path_param"] + s_cols + q_cols + p_cols + h_cols

    def rows(self) -> List[List[str]]:
        out = []
        for sample in self.samples:
            values = list(sample.point.s) + sample.point.flat() + list(sample.H)
            out.append([str(sample.step), _fmt(sample.path_param)] + [_fmt(v) for v in values])
        return out


def _fmt(value: Any) -> str:
    value = complex(value)
    if value.imag == 0:
        return format(value.real, ".17g")
    return format(value, ".17g")


def write_csv(traj: Trajectory, path: str) -> str:
    os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
    with open(path, "w", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(traj.header())
        writer.writerows(traj.rows())
    logger.info(f"Trajectory written: {path} ({len(traj.samples)} samples)")
    return path


def locus_distance(s: Sequence[Any]) -> float:
    """Distance of s to {s_i ∈ {0, 1}} ∪ {s_i = s_j}"""
    values = [abs(complex(v)) for v in s] + [abs(complex(v) - 1) for v in s]
    values += [abs(complex(a) - complex(b)) for k, a in enumerate(s) for b in s[k + 1:]]
    return min(values)


def _hamiltonians(params: ParameterSet, pt: PhasePoint) -> Tuple[Any, ...]:
    return tuple(hamiltonian(params, pt, i, check=False) for i in range(1, pt.N + 1))


def _rhs(params: ParameterSet, L: int, a: np.ndarray, b: np.ndarray, k: int):
    direction = b - a

    def rhs(tau: float, y: np.ndarray) -> np.ndarray:
        s = a + (tau - k) * direction
        pt = PhasePoint.from_flat(tuple(s), list(y), L)
        total = np.zeros_like(y)
        for j, weight in enumerate(direction, start=1):
            if weight == 0:
                continue
            dq, dp = vector_field(params, pt, j, check=False)
            flat = [v for row in dq for v in row] + [v for row in dp for v in row]
            total = total + weight * np.asarray(flat, dtype=y.dtype)
        return total

    return rhs


def integrate(
    params: ParameterSet,
    pt0: PhasePoint,
    path: Sequence[Sequence[Any]],
    rtol: Optional[float] = None,
    atol: Optional[float] = None,
    margin: Optional[float] = None,
    samples_per_segment: int = 10,
) -> Trajectory:
    """Follow the flows from pt0 along the waypoints `path` (path[0] = pt0.s)"""
    rtol = settings.rtol if rtol is None else rtol
    atol = settings.atol if atol is None else atol
    margin = settings.singular_margin if margin is None else margin
    start_time = time.perf_counter()

    pt0 = to_float_point(pt0) if pt0.mode == "exact" else pt0
    L, N = pt0.L, pt0.N
    waypoints = [np.asarray([complex(v) for v in w]) for w in path] or [np.asarray(pt0.s, dtype=complex)]
    if any(len(w) != N for w in waypoints):
        raise ConfigError(f"every waypoint needs {N} coordinates")
    if np.max(np.abs(waypoints[0] - np.asarray(pt0.s, dtype=complex))) > 1e-12:
        raise ConfigError("the path must start at the initial point's s")
    real = all(np.all(w.imag == 0) for w in waypoints) and all(isinstance(v, float) for v in pt0.values())
    dtype = float if real else complex
    waypoints = [w.real if real else w for w in waypoints]
    pt0.check_regular(margin)

    traj = Trajectory(L, N, metadata={
        "method": METHOD, "rtol": rtol, "atol": atol, "singular_margin": margin,
        "segments": max(len(waypoints) - 1, 0), "nfev": 0, "steps": 0,
    })
    y = np.asarray(pt0.flat(), dtype=dtype)
    traj.samples.append(Sample(0, 0.0, pt0, _hamiltonians(params, pt0)))

    for k in range(len(waypoints) - 1):
        a, b = waypoints[k], waypoints[k + 1]
        if np.max(np.abs(b - a)) == 0:
            continue
        rhs = _rhs(params, L, a, b, k)

        def guard(tau: float, state: np.ndarray, a=a, b=b, k=k) -> float:
            return locus_distance(a + (tau - k) * (b - a)) - margin

        guard.terminal = True
        guard.direction = -1

        t_eval = np.linspace(k, k + 1, samples_per_segment + 1)[1:]
        sol = solve_ivp(rhs, (k, k + 1), y, method=METHOD, t_eval=t_eval, events=guard,
                        rtol=rtol, atol=atol)
        traj.metadata["nfev"] += int(sol.nfev)
        traj.metadata["steps"] += int(sol.t.size)
        for col, tau in enumerate(sol.t):
            s = tuple((a + (tau - k) * (b - a)).tolist())
            pt = PhasePoint.from_flat(s, sol.y[:, col].tolist(), L)
            traj.samples.append(Sample(len(traj.samples), float(tau), pt, _hamiltonians(params, pt)))

        if sol.status == 1:
            last = traj.samples[-1]
            raise SingularLocusError(
                f"path reaches the singular-locus guard band at path parameter {float(sol.t_events[0][0]):.6g}",
                last_state={"path_param": last.path_param, **last.point.to_json()},
            )
        if sol.status != 0:
            raise ComputationError(f"integration failed on segment {k}: {sol.message}", segment=k)
        y = sol.y[:, -1]

    traj.metadata["runtime_ms"] = round((time.perf_counter() - start_time) * 1000, 2)
    logger.debug(f"integrated {len(traj.samples)} samples, nfev = {traj.metadata['nfev']}")
    return traj


def coordinate_route(start: Sequence[Any], end: Sequence[Any], order: Sequence[int]) -> List[Tuple[Any, ...]]:
    """Waypoints changing one s-coordinate at a time in the given order"""
    current = list(start)
    route = [tuple(current)]
    for index in order:
        current[index] = end[index]
        route.append(tuple(current))
    return route


def two_route_error(
    params: ParameterSet,
    pt0: PhasePoint,
    end: Sequence[Any],
    rtol: Optional[float] = None,
    atol: Optional[float] = None,
    margin: Optional[float] = None,
) -> Dict[str, Any]:
    """Integrate s_1 first then the rest, and the reverse order; compare endpoints"""
    N = pt0.N
    if N < 2:
        raise ConfigError("the two-route comparison needs N >= 2")
    start = [float(v) for v in pt0.s]
    forward = coordinate_route(start, end, list(range(N)))
    backward = coordinate_route(start, end, list(reversed(range(N))))
    first = integrate(params, pt0, forward, rtol, atol, margin).endpoint
    second = integrate(params, pt0, backward, rtol, atol, margin).endpoint
    error = float(np.max(np.abs(np.asarray(first.flat()) - np.asarray(second.flat()))))
    return {"forward": first.to_json(), "backward": second.to_json(), "max_abs_difference": error}


def closedness_residuals(params: ParameterSet, traj: Trajectory) -> List[float]:
    """|{H_i, H_j}| at every sample: total minus explicit s-derivative of H_i along the s_j-flow"""
    out = []
    for sample in traj.samples:
        worst = 0.0
        for i in range(1, traj.N + 1):
            for j in range(i + 1, traj.N + 1):
                worst = max(worst, abs(complex(poisson_bracket(params, sample.point, i, j))))
        out.append(worst)
    return out
