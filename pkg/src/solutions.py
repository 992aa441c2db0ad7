"""
Rational solutions of the Hamiltonian system read off a σ-grid

q_n^{(i)} = (t_i/t_0)^n σ_{n,−n}(θ_i+1)σ_{0,0}(θ_0+1) / (σ_{0,0}(θ_i+1)σ_{n,−n}(θ_0+1))
q_n^{(i)}p_n^{(i)} = g^{(i)}_{n,−n}/L

t_0 is set to 1 and s_i = t_i^L. Derivatives in s are taken in t:
∂/∂s_j = (1/(L t_j^{L−1})) ∂/∂t_j.

How this file ties into the app:
- `commands/certify.py` runs `flow_residual` on every configured grid
- `commands/integrate.py` uses `CanonicalSolution` as the exact endpoint oracle
- `symmetry.py` transports these solutions and re-certifies them with `chain_flow_residual`
- `lax.py` builds the qp-gauge from the same point for the gauge-invariance check
"""

import cmath
import numbers
import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, List, Sequence, Tuple

from characters import ParameterSet, SigmaGrid, derive_parameters
from dependencies import logger
from errors import ConfigError, DegenerateSolutionError
from gvars import gvars_from_sigma, sigma_ratio
from hamiltonian import PhasePoint, gradient
from identities import IdentityReport, make_report
from laurent import LaurentPoly, RationalFunction
from scalars import is_zero

Table = List[List[RationalFunction]]


@dataclass
class CanonicalSolution:
    """q, p as rational functions of t_1..t_N (ring of N+1 variables, t_0 = 1)"""

    grid: SigmaGrid
    params: ParameterSet
    q: Table
    p: Table

    @property
    def L(self) -> int:
        return self.grid.L

    @property
    def N(self) -> int:
        return self.grid.N

    @property
    def nvars(self) -> int:
        return self.grid.nvars

    def times(self) -> Tuple[LaurentPoly, ...]:
        return tuple(LaurentPoly.variable(i, self.nvars, self.L) for i in range(1, self.N + 1))

    def point(self) -> PhasePoint:
        """The solution as a symbolic phase point over t"""
        return PhasePoint(self.times(), self.q, self.p)

    def evaluate(self, t: Sequence[Any]) -> PhasePoint:
        """Numeric point at t = (t_1..t_N); Fractions stay exact"""
        if len(t) != self.N:
            raise ConfigError(f"expected {self.N} t-values, got {len(t)}")
        full = [1] + list(t)
        s = tuple(v ** self.L for v in t)
        q = [[entry.evaluate(full) for entry in row] for row in self.q]
        p = [[entry.evaluate(full) for entry in row] for row in self.p]
        return PhasePoint(s, q, p)

    def evaluate_at_s(self, s: Sequence[float]) -> PhasePoint:
        """Float point on the branch t_i = s_i^{1/L} (real positive root for s_i > 0)"""
        roots = []
        for value in s:
            if isinstance(value, numbers.Real) and value > 0:
                roots.append(float(value) ** (1.0 / self.L))
            else:
                roots.append(cmath.exp(cmath.log(complex(value)) / self.L))
        point = self.evaluate(roots)
        return PhasePoint(tuple(s), point.q, point.p)


def _t0_fixed(value: RationalFunction) -> RationalFunction:
    return value.substitute(0, 1)


def canonical_q(grid: SigmaGrid, i: int, n: int) -> RationalFunction:
    s = grid.cell
    factor = LaurentPoly.variable(i, grid.nvars, n) * LaurentPoly.variable(0, grid.nvars, -n)
    ratio = sigma_ratio(
        grid,
        [s(n, -n, {i: 1}), s(0, 0, {0: 1})],
        [s(0, 0, {i: 1}), s(n, -n, {0: 1})],
        f"q_{n}^({i})",
    )
    return ratio * factor


@lru_cache(maxsize=16)
def _cached_solution(grid: SigmaGrid) -> CanonicalSolution:
    L, N = grid.L, grid.N
    params = derive_parameters(grid)
    gv = gvars_from_sigma(grid)
    q: Table = []
    p: Table = []
    for i in range(1, N + 1):
        row_q, row_p = [], []
        for n in range(1, L):
            qn = canonical_q(grid, i, n)
            if qn.is_zero():
                raise DegenerateSolutionError(f"q_{n}^({i}) vanishes identically", quantity=f"q_{n}^({i})")
            qp = gv.G(i, n, -n) / L
            row_q.append(_t0_fixed(qn))
            row_p.append(_t0_fixed(qp / qn))
        q.append(row_q)
        p.append(row_p)
    logger.debug(f"canonical solution built for L = {L}, N = {N}, nu = {grid.nu.to_json()}")
    return CanonicalSolution(grid, params, q, p)


def canonical_from_sigma(grid: SigmaGrid) -> CanonicalSolution:
    return _cached_solution(grid)


def check_extension(sol: CanonicalSolution) -> List[IdentityReport]:
    """g^{(i)}_{0,0}/L reproduces p_0^{(i)} = θ_i − Σ_n q_n^{(i)}p_n^{(i)}"""
    grid, L = sol.grid, sol.L
    reports = []
    for i in range(1, sol.N + 1):
        start = time.perf_counter()
        p0 = _t0_fixed(gvars_from_sigma(grid).G(i, 0, 0) / L)
        expected = grid.theta[i] - sum((sol.q[i - 1][k] * sol.p[i - 1][k] for k in range(L - 1)), 0)
        reports.append(make_report("solution.extension", {"i": i}, p0 - expected, start))
    return reports


def _s_derivative(value: RationalFunction, j: int, L: int, nvars: int) -> RationalFunction:
    return value.derivative(j) / LaurentPoly.variable(j, nvars, L - 1) / L


def flow_residual_for(params: ParameterSet, q: Table, p: Table, L: int, nvars: int) -> List[IdentityReport]:
    """Residuals of ∂q/∂s_j = ∂H_j/∂p and ∂p/∂s_j = −∂H_j/∂q for t-rational q, p"""
    N = len(q)
    times = tuple(LaurentPoly.variable(i, nvars, L) for i in range(1, N + 1))
    pt = PhasePoint(times, q, p)
    reports = []
    for j in range(1, N + 1):
        dq, dp = gradient(params, pt, j, check=False)
        for i in range(1, N + 1):
            for n in range(1, L):
                start = time.perf_counter()
                lhs = _s_derivative(q[i - 1][n - 1], j, L, nvars)
                reports.append(make_report("solution.flow_q", {"i": i, "n": n, "j": j}, lhs - dp[i - 1][n - 1], start))
                start = time.perf_counter()
                lhs = _s_derivative(p[i - 1][n - 1], j, L, nvars)
                reports.append(make_report("solution.flow_p", {"i": i, "n": n, "j": j}, lhs + dq[i - 1][n - 1], start))
    return reports


def flow_residual(sol: CanonicalSolution) -> List[IdentityReport]:
    return flow_residual_for(sol.params, sol.q, sol.p, sol.L, sol.nvars)


def _t_derivative(value: Any, j: int) -> Any:
    if isinstance(value, (LaurentPoly, RationalFunction)):
        return value.derivative(j)
    return 0


def chain_flow_residual(params: ParameterSet, pt: PhasePoint, label: str = "solution.transport") -> List[IdentityReport]:
    """∂q/∂t_j = Σ_k (∂s_k/∂t_j)∂H_k/∂p and ∂p/∂t_j = −Σ_k (∂s_k/∂t_j)∂H_k/∂q

    s may be any rational function of t, so points whose times were
    transformed (s_i → 1/s_i, s_j → s_j/s_i) are certified without
    inverting the change of time.
    """
    N, L = pt.N, pt.L
    grads = [gradient(params, pt, k, check=False) for k in range(1, N + 1)]
    reports = []
    for j in range(1, N + 1):
        ds = [_t_derivative(pt.s[k], j) for k in range(N)]
        for i in range(1, N + 1):
            for n in range(1, L):
                start = time.perf_counter()
                rhs = sum((ds[k] * grads[k][1][i - 1][n - 1] for k in range(N) if not is_zero(ds[k])), 0)
                residual = _t_derivative(pt.q[i - 1][n - 1], j) - rhs
                reports.append(make_report(f"{label}_q", {"i": i, "n": n, "t": j}, residual, start))
                start = time.perf_counter()
                rhs = sum((ds[k] * grads[k][0][i - 1][n - 1] for k in range(N) if not is_zero(ds[k])), 0)
                residual = _t_derivative(pt.p[i - 1][n - 1], j) + rhs
                reports.append(make_report(f"{label}_p", {"i": i, "n": n, "t": j}, residual, start))
    return reports
