"""
The nonlinear system in f, g, U, V built on a σ-grid
All quantities are exact rational functions of t_0..t_N

- f^{(i)}_{m,n} = σ_{m,n−1}(θ_i+1)σ_{m−1,n−1} / (σ_{m−1,n}(θ_i+1)σ_{m,n−2})
- g^{(i)}_{m,n} = θ_iσ_{m−1,n−1}(θ_i−1)σ_{m,n}(θ_i+1) / (σ_{m,n−1}σ_{m−1,n})
- U, V by the geometric sums along the anti-diagonal (periodicity closes the sum)

How this file ties into the app:
- `commands/certify.py` runs `check_gvars`, `check_uv_relations` and `g_system_residual`
- `solutions.py` reads g^{(i)}_{n,−n} for the canonical variables
- `lax.py` builds the v-gauge matrices from f and g
"""

import time
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from characters import SigmaGrid, kappa_mn, shift_theta
from errors import DegenerateSolutionError
from identities import IdentityReport, make_report
from laurent import LaurentPoly, RationalFunction

Table = List[List[List[RationalFunction]]]


def sigma_ratio(grid: SigmaGrid, top: Sequence[LaurentPoly], bottom: Sequence[LaurentPoly], name: str) -> RationalFunction:
    value = RationalFunction.constant(1, grid.nvars)
    for factor in bottom:
        if factor.is_zero():
            raise DegenerateSolutionError(f"{name} has an identically vanishing σ in its denominator", quantity=name)
        value = value / factor
    for factor in top:
        value = value * factor
    return value


@dataclass
class GVariables:
    grid: SigmaGrid
    f: Table
    g: Table

    @property
    def L(self) -> int:
        return self.grid.L

    @property
    def N(self) -> int:
        return self.grid.N

    def F(self, i: int, m: int, n: int) -> RationalFunction:
        return self.f[i][m % self.L][n % self.L]

    def G(self, i: int, m: int, n: int) -> RationalFunction:
        return self.g[i][m % self.L][n % self.L]

    def values(self, point: Sequence[Any]) -> Dict[str, np.ndarray]:
        """Float (or complex) values of f and g at a t-point, shape (N+1, L, L)"""
        shape = (self.N + 1, self.L, self.L)
        f = np.empty(shape, dtype=complex)
        g = np.empty(shape, dtype=complex)
        for i in range(self.N + 1):
            for m in range(self.L):
                for n in range(self.L):
                    f[i, m, n] = complex(self.f[i][m][n].evaluate(point))
                    g[i, m, n] = complex(self.g[i][m][n].evaluate(point))
        return {"f": f, "g": g}


def f_entry(grid: SigmaGrid, i: int, m: int, n: int) -> RationalFunction:
    s = grid.cell
    return sigma_ratio(grid, [s(m, n - 1, {i: 1}), s(m - 1, n - 1)], [s(m - 1, n, {i: 1}), s(m, n - 2)],
                       f"f^({i})_{m},{n}")


def g_entry(grid: SigmaGrid, i: int, m: int, n: int) -> RationalFunction:
    s = grid.cell
    value = sigma_ratio(grid, [s(m - 1, n - 1, {i: -1}), s(m, n, {i: 1})], [s(m, n - 1), s(m - 1, n)],
                        f"g^({i})_{m},{n}")
    return value * grid.theta[i]


def g_entry_hirota(grid: SigmaGrid, i: int, m: int, n: int) -> RationalFunction:
    """g^{(i)}_{m,n} = t_iD_iσ_{m,n−1}·σ_{m−1,n} / (σ_{m,n−1}σ_{m−1,n}) + θ_i"""
    s = grid.cell
    a, b = s(m, n - 1), s(m - 1, n)
    t_i = LaurentPoly.variable(i, grid.nvars)
    top = t_i * (a.derivative(i) * b - a * b.derivative(i))
    return sigma_ratio(grid, [top], [a, b], f"g^({i})_{m},{n}") + grid.theta[i]


@lru_cache(maxsize=32)
def _cached_gvars(grid: SigmaGrid) -> GVariables:
    L, N = grid.L, grid.N
    f = [[[f_entry(grid, i, m, n) for n in range(L)] for m in range(L)] for i in range(N + 1)]
    g = [[[g_entry(grid, i, m, n) for n in range(L)] for m in range(L)] for i in range(N + 1)]
    return GVariables(grid, f, g)


def gvars_from_sigma(grid: SigmaGrid) -> GVariables:
    return _cached_gvars(grid)


def check_gvars(gv: GVariables) -> List[IdentityReport]:
    """Both forms of g agree, conservation along anti-diagonals, Σ_i g = κ_{m,n}"""
    grid, L, N = gv.grid, gv.L, gv.N
    reports: List[IdentityReport] = []
    for i in range(N + 1):
        for m in range(L):
            for n in range(L):
                start = time.perf_counter()
                reports.append(make_report("gvars.g_forms", {"i": i, "m": m, "n": n},
                                           gv.G(i, m, n) - g_entry_hirota(grid, i, m, n), start))
            start = time.perf_counter()
            product = RationalFunction.constant(1, grid.nvars)
            total = RationalFunction.constant(0, grid.nvars)
            for j in range(1, L + 1):
                product = product * gv.F(i, m + j, -j)
                total = total + gv.G(i, m + j, -j)
            reports.append(make_report("gvars.f_conservation", {"i": i, "diagonal": m}, product - 1, start))
            start = time.perf_counter()
            reports.append(make_report("gvars.g_conservation", {"i": i, "diagonal": m},
                                       total - L * grid.theta[i], start))
    for m in range(L):
        for n in range(L):
            start = time.perf_counter()
            total = RationalFunction.constant(0, grid.nvars)
            for i in range(N + 1):
                total = total + gv.G(i, m, n)
            reports.append(make_report("gvars.kappa", {"m": m, "n": n}, total - kappa_mn(grid, m, n), start))
    return reports


def theta_shift_relation(grid: SigmaGrid, i: int) -> List[IdentityReport]:
    """f^{(i)}_{m,n}(θ_i−1) = g^{(i)}_{m,n} / g^{(i)}_{m+1,n−1} · f^{(i)}_{m+1,n}"""
    gv = gvars_from_sigma(grid)
    lowered = gvars_from_sigma(shift_theta(grid, i, -1))
    reports = []
    for m in range(grid.L):
        for n in range(grid.L):
            start = time.perf_counter()
            residual = lowered.F(i, m, n) - gv.G(i, m, n) / gv.G(i, m + 1, n - 1) * gv.F(i, m + 1, n)
            reports.append(make_report("gvars.theta_shift", {"i": i, "m": m, "n": n}, residual, start))
    return reports


@dataclass
class UVTable:
    """U^{(i,j)}_{m,n}, V^{(i,j)}_{m,n} keyed by the ordered pair (i, j)"""

    L: int
    U: Dict[Tuple[int, int], List[List[RationalFunction]]]
    V: Dict[Tuple[int, int], List[List[RationalFunction]]]

    def u(self, i: int, j: int, m: int, n: int) -> RationalFunction:
        return self.U[(i, j)][m % self.L][n % self.L]

    def v(self, i: int, j: int, m: int, n: int) -> RationalFunction:
        return self.V[(i, j)][m % self.L][n % self.L]


def _uv_pair(gv: GVariables, i: int, j: int, m: int, n: int) -> Tuple[RationalFunction, RationalFunction]:
    L, nvars = gv.L, gv.grid.nvars
    t_i, t_j = LaurentPoly.variable(i, nvars), LaurentPoly.variable(j, nvars)
    prefactor = RationalFunction.from_poly(t_j ** L) / (t_i ** L - t_j ** L)

    def step(a: int, b: int) -> RationalFunction:
        return gv.F(i, a, b) * t_i / (gv.F(j, a, b) * t_j)

    u = RationalFunction.constant(0, nvars)
    chain = RationalFunction.constant(1, nvars)
    for b in range(1, L + 1):
        if b > 1:
            chain = chain * step(m - (b - 1) + 1, n + (b - 1))
        u = u + gv.G(i, m - b + 1, n + b - 1) * chain
    v = RationalFunction.constant(0, nvars)
    chain = RationalFunction.constant(1, nvars)
    for b in range(1, L + 1):
        chain = chain * step(m - (b - 1), n + (b - 1) + 1)
        v = v + gv.G(i, m - b, n + b) * chain
    return prefactor * u, prefactor * v


@lru_cache(maxsize=16)
def _cached_uv(grid: SigmaGrid) -> UVTable:
    gv = gvars_from_sigma(grid)
    L, N = grid.L, grid.N
    U: Dict[Tuple[int, int], List[List[RationalFunction]]] = {}
    V: Dict[Tuple[int, int], List[List[RationalFunction]]] = {}
    for i in range(N + 1):
        for j in range(N + 1):
            if i == j:
                continue
            pairs = [[_uv_pair(gv, i, j, m, n) for n in range(L)] for m in range(L)]
            U[(i, j)] = [[p[0] for p in row] for row in pairs]
            V[(i, j)] = [[p[1] for p in row] for row in pairs]
    return UVTable(L, U, V)


def uv_from_fg(gv: GVariables) -> UVTable:
    return _cached_uv(gv.grid)


def uv_sigma_form(grid: SigmaGrid, i: int, j: int, m: int, n: int) -> Tuple[RationalFunction, RationalFunction]:
    """U and V written directly as σ ratios"""
    s = grid.cell
    nvars = grid.nvars
    t_i, t_j = LaurentPoly.variable(i, nvars), LaurentPoly.variable(j, nvars)
    gap = RationalFunction.from_poly(t_i - t_j)
    u = sigma_ratio(grid, [s(m, n - 1, {i: -1, j: 1}), s(m, n, {i: 1})], [s(m, n - 1), s(m, n, {j: 1})], "U")
    v = sigma_ratio(grid, [s(m - 1, n, {i: -1, j: 1}), s(m, n, {i: 1})], [s(m - 1, n), s(m, n, {j: 1})], "V")
    th = grid.theta[i]
    return u * t_j * th / gap, v * t_i * th / gap


def check_uv_relations(grid: SigmaGrid) -> List[IdentityReport]:
    """Difference, ratio and shifted relations between U, V, f and g, plus the σ-ratio forms"""
    gv = gvars_from_sigma(grid)
    uv = uv_from_fg(gv)
    L, N, nvars = grid.L, grid.N, grid.nvars
    t = [LaurentPoly.variable(k, nvars) for k in range(nvars)]
    reports: List[IdentityReport] = []
    for (i, j) in sorted(uv.U):
        raised_j = gvars_from_sigma(shift_theta(grid, j, 1))
        lowered_i = gvars_from_sigma(shift_theta(grid, i, -1))
        for m in range(L):
            for n in range(L):
                idx = {"i": i, "j": j, "m": m, "n": n}
                start = time.perf_counter()
                reports.append(make_report("uv.difference", idx,
                                           uv.v(i, j, m, n) - uv.u(i, j, m, n) - gv.G(i, m, n), start))
                start = time.perf_counter()
                residual = uv.u(i, j, m - 1, n) * t[i] * gv.F(i, m, n) - uv.v(i, j, m, n - 1) * t[j] * gv.F(j, m, n)
                reports.append(make_report("uv.ratio", idx, residual, start))
                start = time.perf_counter()
                residual = uv.v(i, j, m, n - 1) - uv.u(i, j, m - 1, n) - raised_j.G(i, m, n)
                reports.append(make_report("uv.shifted_difference", idx, residual, start))
                start = time.perf_counter()
                residual = (uv.u(i, j, m, n) * t[i] * lowered_i.F(i, m, n)
                            - uv.v(i, j, m, n) * t[j] * lowered_i.F(j, m, n))
                reports.append(make_report("uv.shifted_ratio", idx, residual, start))
                start = time.perf_counter()
                u_sigma, v_sigma = uv_sigma_form(grid, i, j, m, n)
                reports.append(make_report("uv.sigma_form_u", idx, uv.u(i, j, m, n) - u_sigma, start))
                start = time.perf_counter()
                reports.append(make_report("uv.sigma_form_v", idx, uv.v(i, j, m, n) - v_sigma, start))
    return reports


def g_system_residual(grid: SigmaGrid) -> List[IdentityReport]:
    """Residuals of the four differential equations for f and g at every (i, j, m, n)"""
    gv = gvars_from_sigma(grid)
    uv = uv_from_fg(gv)
    L, N, nvars = grid.L, grid.N, grid.nvars
    t = [LaurentPoly.variable(k, nvars) for k in range(nvars)]
    reports: List[IdentityReport] = []
    for i in range(N + 1):
        others = [j for j in range(N + 1) if j != i]
        for m in range(L):
            for n in range(L):
                f, g = gv.F(i, m, n), gv.G(i, m, n)
                start = time.perf_counter()
                rate = gv.G(i, m, n - 1) * -1 + kappa_mn(grid, m, n)
                for j in others:
                    rate = rate + uv.u(j, i, m - 1, n) - uv.v(j, i, m, n - 1)
                residual = f.derivative(i) * t[i] - rate * f
                reports.append(make_report("gsystem.f_own", {"i": i, "m": m, "n": n}, residual, start))

                start = time.perf_counter()
                flow = RationalFunction.constant(0, nvars)
                for j in others:
                    flow = flow + uv.u(i, j, m, n) * gv.G(j, m, n) + uv.v(j, i, m, n) * g
                residual = g.derivative(i) * t[i] + flow
                reports.append(make_report("gsystem.g_own", {"i": i, "m": m, "n": n}, residual, start))

                for j in others:
                    idx = {"i": i, "j": j, "m": m, "n": n}
                    start = time.perf_counter()
                    rate = gv.G(j, m, n - 1) * -1 - uv.u(j, i, m - 1, n) + uv.v(j, i, m, n - 1)
                    residual = f.derivative(j) * t[j] - rate * f
                    reports.append(make_report("gsystem.f_cross", idx, residual, start))

                    start = time.perf_counter()
                    residual = g.derivative(j) * t[j] - uv.u(i, j, m, n) * gv.G(j, m, n) - uv.v(j, i, m, n) * g
                    reports.append(make_report("gsystem.g_cross", idx, residual, start))
    return reports
