"""
Exact certification of the σ-grid identities
Every residual is a Laurent polynomial and a check passes only if it is the zero polynomial.

Identity ids used in reports:
- `bilinear.cross`       (t_i−t_j)σ σ(θ_i+1,θ_j+1) against the two crossed products
- `bilinear.hirota_i`    (t_iD_i+θ_i)σ_{m+1,n}·σ_{m,n+1}
- `bilinear.hirota_ij`   ((t_j−t_i)D_i+θ_i)σ_{m,n}(θ_j−1)·σ_{m+1,n}
- `bilinear.homogeneity` Euler operator against the degree d_{m,n}
- `toda`                 the Toda equation in t_i, t_j
- `duc.family1|2|3`      difference equations of the shift operators T_i (θ_i → θ_i−1)

How this file ties into the app:
- `commands/certify.py` runs `check_bilinear`, `check_toda_all` and `duc_instances`
- `sign_search` tries per-cell signs when the plain grid fails
"""

import itertools
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from characters import SigmaGrid
from dependencies import logger
from errors import ConfigError
from laurent import LaurentPoly, RationalFunction, hirota
from middleware import record_check


@dataclass
class IdentityReport:
    """One certified identity; polynomial residuals must vanish, numeric ones stay under `tolerance`"""

    identity: str
    indices: Dict[str, Any]
    residual: Any
    timing_ms: float = 0.0
    detail: Optional[str] = None
    tolerance: float = 0.0

    @property
    def symbolic(self) -> bool:
        return isinstance(self.residual, LaurentPoly)

    @property
    def passed(self) -> bool:
        if self.symbolic:
            return self.residual.is_zero()
        return abs(self.residual) <= self.tolerance

    def to_json(self) -> Dict[str, Any]:
        out: Dict[str, Any] = {
            "id": self.identity,
            "indices": self.indices,
            "pass": self.passed,
        }
        if self.symbolic:
            out["residual_terms"] = 0 if self.passed else len(self.residual)
        else:
            out["residual_abs"] = float(abs(self.residual))
        out["timing_ms"] = round(self.timing_ms, 3)
        if not self.passed:
            out["residual"] = self.residual.to_text() if self.symbolic else str(self.residual)
        if self.detail:
            out["detail"] = self.detail
        return out


def make_report(identity: str, indices: Dict[str, Any], residual: Any, start: float,
                tolerance: float = 0.0, detail: Optional[str] = None) -> IdentityReport:
    if isinstance(residual, RationalFunction):
        residual = residual.numerator()
    duration = time.perf_counter() - start
    report = IdentityReport(identity, indices, residual, duration * 1000, detail, tolerance)
    record_check(identity, report.passed, duration, metadata=indices)
    if not report.passed:
        size = f"{len(residual)} residual terms" if report.symbolic else f"|residual| = {float(abs(residual)):.3e}"
        logger.warning(f"{identity} failed at {indices}: {size}")
    return report


def _t(grid: SigmaGrid, i: int) -> LaurentPoly:
    return LaurentPoly.variable(i, grid.nvars)


def _pairs(N: int) -> List[Tuple[int, int]]:
    return [(i, j) for i in range(N + 1) for j in range(N + 1) if i != j]


def cross_residual(grid: SigmaGrid, m: int, n: int, i: int, j: int) -> LaurentPoly:
    s = grid.cell
    ti, tj = _t(grid, i), _t(grid, j)
    lhs = (ti - tj) * s(m, n) * s(m + 1, n + 1, {i: 1, j: 1})
    rhs = ti * s(m + 1, n, {i: 1}) * s(m, n + 1, {j: 1}) - tj * s(m + 1, n, {j: 1}) * s(m, n + 1, {i: 1})
    return lhs - rhs


def hirota_i_residual(grid: SigmaGrid, m: int, n: int, i: int) -> LaurentPoly:
    s = grid.cell
    th = grid.theta[i]
    a, b = s(m + 1, n), s(m, n + 1)
    lhs = _t(grid, i) * hirota(i, a, b) + a * b * th
    rhs = s(m, n, {i: -1}) * s(m + 1, n + 1, {i: 1}) * th
    return lhs - rhs


def hirota_ij_residual(grid: SigmaGrid, m: int, n: int, i: int, j: int) -> LaurentPoly:
    s = grid.cell
    th = grid.theta[i]
    a, b = s(m, n, {j: -1}), s(m + 1, n)
    lhs = (_t(grid, j) - _t(grid, i)) * hirota(i, a, b) + a * b * th
    rhs = s(m, n, {i: -1}) * s(m + 1, n, {i: 1, j: -1}) * th
    return lhs - rhs


def homogeneity_residual(grid: SigmaGrid, m: int, n: int) -> LaurentPoly:
    sigma = grid.cell(m, n)
    return sigma.euler() - sigma * grid.degree(m, n)


def check_bilinear(grid: SigmaGrid) -> List[IdentityReport]:
    """All bilinear identities on every cell, for every ordered pair i ≠ j"""
    reports: List[IdentityReport] = []
    L, N = grid.L, grid.N
    for m in range(L):
        for n in range(L):
            for i, j in _pairs(N):
                start = time.perf_counter()
                reports.append(make_report("bilinear.cross", {"m": m, "n": n, "i": i, "j": j},
                                       cross_residual(grid, m, n, i, j), start))
                start = time.perf_counter()
                reports.append(make_report("bilinear.hirota_ij", {"m": m, "n": n, "i": i, "j": j},
                                       hirota_ij_residual(grid, m, n, i, j), start))
            for i in range(N + 1):
                start = time.perf_counter()
                reports.append(make_report("bilinear.hirota_i", {"m": m, "n": n, "i": i},
                                       hirota_i_residual(grid, m, n, i), start))
            start = time.perf_counter()
            reports.append(make_report("bilinear.homogeneity", {"m": m, "n": n},
                                   homogeneity_residual(grid, m, n), start))
    return reports


def check_antisymmetry(grid: SigmaGrid, m: int, n: int, i: int, j: int) -> IdentityReport:
    """The crossed identity changes sign under i ↔ j"""
    start = time.perf_counter()
    residual = cross_residual(grid, m, n, i, j) + cross_residual(grid, m, n, j, i)
    return make_report("bilinear.antisymmetry", {"m": m, "n": n, "i": i, "j": j}, residual, start)


def toda_residual(grid: SigmaGrid, m: int, n: int, i: int, j: int) -> LaurentPoly:
    if i == j:
        raise ConfigError("the Toda equation needs two distinct variables")
    s = grid.cell
    sigma = s(m, n)
    th = grid.theta[i] * grid.theta[j]
    dd = (sigma * sigma.derivative(i).derivative(j) - sigma.derivative(i) * sigma.derivative(j)) * 2
    gap = _t(grid, i) - _t(grid, j)
    return gap * gap * dd + sigma * sigma * (2 * th) - s(m, n, {i: 1, j: -1}) * s(m, n, {i: -1, j: 1}) * (2 * th)


def check_toda(grid: SigmaGrid, m: int, n: int, i: int, j: int) -> IdentityReport:
    start = time.perf_counter()
    return make_report("toda", {"m": m, "n": n, "i": i, "j": j}, toda_residual(grid, m, n, i, j), start)


def check_toda_all(grid: SigmaGrid) -> List[IdentityReport]:
    return [
        check_toda(grid, m, n, i, j)
        for m in range(grid.L)
        for n in range(grid.L)
        for i, j in _pairs(grid.N)
        if i < j
    ]


def _lowered(indices: Iterable[int]) -> Dict[int, int]:
    """The shift T_I realized as θ_k → θ_k − 1 for k in I"""
    return {k: -1 for k in indices}


def check_duc(
    grid: SigmaGrid,
    family: int,
    I: Sequence[int],
    J: Sequence[int],
    m: int,
    n: int,
    base: Tuple[int, int] = (0, 0),
) -> IdentityReport:
    I, J = tuple(I), tuple(J)
    if set(I) & set(J):
        raise ConfigError(f"index sets {I} and {J} must be disjoint")
    if any(not 0 <= k <= grid.N for k in I + J):
        raise ConfigError(f"indices must lie in 0..{grid.N}")
    if m < 0 or n < 0:
        raise ConfigError("m and n must be non-negative")
    bm, bn = base

    def tau(a: int, b: int, lowered: Iterable[int]) -> LaurentPoly:
        return grid.cell(bm + a, bn + b, _lowered(lowered))

    t = [_t(grid, k) for k in range(grid.nvars)]
    one = RationalFunction.constant(1, grid.nvars)
    start = time.perf_counter()

    if family == 1:
        if len(I) - len(J) != m + n + 2:
            raise ConfigError(f"family 1 needs |I|-|J| = m+n+2 = {m + n + 2}")
        total = RationalFunction.constant(0, grid.nvars)
        for i in I:
            coef = one * t[i] ** n
            for j in J:
                coef = coef * (t[i] - t[j])
            for k in I:
                if k != i:
                    coef = coef / (t[i] - t[k])
            rest = [k for k in I if k != i]
            total = total + coef * tau(0, 0, rest) * tau(m, n, J + (i,))
        residual = total
    elif family == 2:
        if len(I) - len(J) != n + 1:
            raise ConfigError(f"family 2 needs |I|-|J| = n+1 = {n + 1}")
        total = one * tau(0, 0, I) * tau(1, n, J)
        for i in I:
            inv = t[i] ** -1
            coef = one
            for j in J:
                coef = coef * (1 - t[j] * inv)
            for k in I:
                if k != i:
                    coef = coef / (1 - t[k] * inv)
            rest = [k for k in I if k != i]
            total = total - coef * tau(1, 0, rest) * tau(0, n, J + (i,))
        residual = total
    elif family == 3:
        if len(I) - len(J) != m + 1:
            raise ConfigError(f"family 3 needs |I|-|J| = m+1 = {m + 1}")
        total = one * tau(0, 0, I) * tau(m, 1, J)
        for i in I:
            coef = one
            for j in J:
                coef = coef * (1 - t[i] * t[j] ** -1)
            for k in I:
                if k != i:
                    coef = coef / (1 - t[i] * t[k] ** -1)
            rest = [k for k in I if k != i]
            total = total - coef * tau(0, 1, rest) * tau(m, 0, J + (i,))
        residual = total
    else:
        raise ConfigError(f"unknown family {family}; expected 1, 2 or 3")

    indices = {"family": family, "I": list(I), "J": list(J), "m": m, "n": n, "base": list(base)}
    return make_report(f"duc.family{family}", indices, residual, start)


def duc_instances(N: int, max_i: int = 3, max_j: int = 1) -> List[Dict[str, Any]]:
    """Every testable instance with |I| <= max_i and |J| <= max_j over indices 0..N"""
    indices = range(N + 1)
    instances: List[Dict[str, Any]] = []
    for size_i in range(1, min(max_i, N + 1) + 1):
        for I in itertools.combinations(indices, size_i):
            rest = [k for k in indices if k not in I]
            for size_j in range(0, min(max_j, len(rest)) + 1):
                for J in itertools.combinations(rest, size_j):
                    gap = size_i - size_j
                    for m in range(gap - 1):
                        instances.append({"family": 1, "I": I, "J": J, "m": m, "n": gap - 2 - m})
                    if gap >= 1:
                        instances.append({"family": 2, "I": I, "J": J, "m": 0, "n": gap - 1})
                        instances.append({"family": 3, "I": I, "J": J, "m": gap - 1, "n": 0})
    return instances


def check_duc_all(grid: SigmaGrid, bases: Optional[Sequence[Tuple[int, int]]] = None) -> List[IdentityReport]:
    bases = bases or [(a, b) for a in range(grid.L) for b in range(grid.L)]
    return [
        check_duc(grid, inst["family"], inst["I"], inst["J"], inst["m"], inst["n"], base)
        for base in bases
        for inst in duc_instances(grid.N)
    ]


def sign_search(grid: SigmaGrid, max_L: int = 4) -> Optional[Tuple[Tuple[int, ...], ...]]:
    """First per-cell sign assignment (all-plus first) under which every bilinear identity holds

    The global sign is fixed by σ_{0,0} > 0, leaving 2^(L²−1) candidates.
    """
    L = grid.L
    if L > max_L:
        raise ConfigError(f"sign search is limited to L <= {max_L}")
    for bits in range(2 ** (L * L - 1)):
        flat = [1] + [-1 if bits >> k & 1 else 1 for k in range(L * L - 1)]
        signs = tuple(tuple(flat[m * L:(m + 1) * L]) for m in range(L))
        candidate = grid.with_signs(signs)
        if all(r.passed for r in check_bilinear(candidate)):
            logger.info(f"sign assignment found after {bits + 1} candidates: {signs}")
            return signs
    return None


def all_passed(reports: Iterable[IdentityReport]) -> bool:
    return all(r.passed for r in reports)


def failures(reports: Iterable[IdentityReport]) -> List[IdentityReport]:
    return [r for r in reports if not r.passed]
