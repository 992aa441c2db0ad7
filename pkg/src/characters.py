"""
Universal characters and the periodic σ-grid
Everything here is exact: θ_i are Fractions, σ entries are LaurentPoly in t_0..t_N

- `complete_homogeneous`: h_n (and h̃_n) under x_n = Σθ_i t_i^n / n, y_n = Σθ_i t_i^{-n} / n
- `universal_character`: the twisted Jacobi–Trudi determinant S_[λ,μ]
- `build_sigma_grid`: σ_{m,n} = S_[λ(ν(m)), λ(ν′(n))] with degrees d_{m,n}
- `shift_theta`: the same grid rebuilt at θ_i + δ
- `derive_parameters`: e_n, κ_n and the root variables 𝔞_n, 𝔟_n

How this file ties into the app:
- `identities.py` reads cells (with θ shifts) through `SigmaGrid.cell`
- `gvars.py`, `solutions.py` and `lax.py` turn cells into rational functions
- `commands/certify.py` builds one grid per configured (ν, ν′, θ)
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from dependencies import logger
from errors import ComputationError, ConfigError, DegenerateSolutionError
from laurent import LaurentPoly, determinant
from partitions import CoreIndex, Partition, core_partition


@dataclass(frozen=True)
class SubstitutionContext:
    L: int
    N: int
    theta: Tuple[Fraction, ...]

    def __post_init__(self):
        if self.L < 2:
            raise ConfigError(f"L must be at least 2, got {self.L}")
        if self.N < 1:
            raise ConfigError(f"N must be at least 1, got {self.N}")
        theta = tuple(Fraction(v) for v in self.theta)
        if len(theta) != self.N + 1:
            raise ConfigError(f"theta needs N+1 = {self.N + 1} entries, got {len(theta)}")
        object.__setattr__(self, "theta", theta)

    @property
    def nvars(self) -> int:
        return self.N + 1

    @property
    def theta_sum(self) -> Fraction:
        return sum(self.theta, Fraction(0))

    def shifted(self, shift: Mapping[int, int]) -> "SubstitutionContext":
        theta = list(self.theta)
        for i, delta in shift.items():
            if not 0 <= i <= self.N:
                raise ConfigError(f"theta index {i} outside 0..{self.N}")
            theta[i] += delta
        return replace(self, theta=tuple(theta))


@lru_cache(maxsize=None)
def _power_sum(k: int, theta: Tuple[Fraction, ...], inverse: bool) -> LaurentPoly:
    nvars = len(theta)
    sign = -1 if inverse else 1
    total = LaurentPoly.zero(nvars)
    for i, th in enumerate(theta):
        total = total + LaurentPoly.variable(i, nvars, sign * k) * th
    return total


@lru_cache(maxsize=None)
def _complete(n: int, theta: Tuple[Fraction, ...], inverse: bool) -> LaurentPoly:
    nvars = len(theta)
    if n < 0:
        return LaurentPoly.zero(nvars)
    if n == 0:
        return LaurentPoly.constant(1, nvars)
    total = LaurentPoly.zero(nvars)
    for k in range(1, n + 1):
        total = total + _power_sum(k, theta, inverse) * _complete(n - k, theta, inverse)
    return total / n


def complete_homogeneous(n: int, ctx: SubstitutionContext, inverse: bool = False) -> LaurentPoly:
    """h_n via the Newton recurrence n·h_n = Σ_{k=1}^{n} p_k h_{n−k}"""
    return _complete(n, ctx.theta, inverse)


def universal_character(lam: Partition, mu: Partition, ctx: SubstitutionContext) -> LaurentPoly:
    l, lp = len(lam), len(mu)
    size = l + lp
    rows: List[List[LaurentPoly]] = []
    for i in range(1, size + 1):
        if i <= lp:
            rows.append([complete_homogeneous(mu[lp - i + 1] + i - j, ctx, inverse=True) for j in range(1, size + 1)])
        else:
            rows.append([complete_homogeneous(lam[i - lp] - i + j, ctx) for j in range(1, size + 1)])
    return determinant(rows, one=LaurentPoly.constant(1, ctx.nvars))


@lru_cache(maxsize=256)
def _grid_cells(
    nu: Tuple[int, ...], nu_prime: Tuple[int, ...], L: int, N: int, theta: Tuple[Fraction, ...]
) -> Tuple[Tuple[Tuple[LaurentPoly, ...], ...], Tuple[Tuple[int, ...], ...]]:
    ctx = SubstitutionContext(L, N, theta)
    rows = [core_partition(CoreIndex(nu).shifted(m)) for m in range(L)]
    cols = [core_partition(CoreIndex(nu_prime).shifted(n)) for n in range(L)]
    sigma = tuple(tuple(universal_character(rows[m], cols[n], ctx) for n in range(L)) for m in range(L))
    degrees = tuple(tuple(rows[m].weight - cols[n].weight for n in range(L)) for m in range(L))
    return sigma, degrees


Shift = Tuple[Tuple[int, int], ...]


def _shift_key(shift: Optional[Mapping[int, int]]) -> Shift:
    return tuple(sorted((i, d) for i, d in (shift or {}).items() if d))


@dataclass(frozen=True)
class SigmaGrid:
    """σ_{m,n}(θ, t) on (Z/LZ)², with optional per-cell signs and additive corrections

    Signs and corrections are carried to every θ-shifted copy, so a sign
    assignment or a deliberately corrupted cell behaves consistently in
    identities that mix shifted and unshifted cells.
    """

    context: SubstitutionContext
    nu: CoreIndex
    nu_prime: CoreIndex
    sigma: Tuple[Tuple[LaurentPoly, ...], ...]
    degrees: Tuple[Tuple[int, ...], ...]
    signs: Optional[Tuple[Tuple[int, ...], ...]] = None
    corrections: Tuple[Tuple[int, int, LaurentPoly], ...] = field(default=())

    @property
    def L(self) -> int:
        return self.context.L

    @property
    def N(self) -> int:
        return self.context.N

    @property
    def nvars(self) -> int:
        return self.context.nvars

    @property
    def theta(self) -> Tuple[Fraction, ...]:
        return self.context.theta

    def degree(self, m: int, n: int) -> int:
        return self.degrees[m % self.L][n % self.L]

    def cell(self, m: int, n: int, shift: Optional[Mapping[int, int]] = None) -> LaurentPoly:
        """σ_{m,n} with θ shifted by `shift` (index -> delta)"""
        key = _shift_key(shift)
        grid = self if not key else shift_theta_many(self, dict(key))
        return grid.sigma[m % self.L][n % self.L]

    def with_signs(self, signs: Sequence[Sequence[int]]) -> "SigmaGrid":
        signs = tuple(tuple(int(s) for s in row) for row in signs)
        return _assemble(self.context, self.nu, self.nu_prime, signs, self.corrections)

    def corrupted(self, m: int, n: int, addend: LaurentPoly) -> "SigmaGrid":
        corrections = self.corrections + ((m % self.L, n % self.L, addend),)
        return _assemble(self.context, self.nu, self.nu_prime, self.signs, corrections)

    def to_json(self) -> Dict[str, Any]:
        return {
            "L": self.L,
            "N": self.N,
            "theta": [str(v) for v in self.theta],
            "nu": self.nu.to_json(),
            "nu_prime": self.nu_prime.to_json(),
            "degrees": [list(row) for row in self.degrees],
            "sigma": [[s.to_text() for s in row] for row in self.sigma],
        }


def _assemble(
    ctx: SubstitutionContext,
    nu: CoreIndex,
    nu_prime: CoreIndex,
    signs: Optional[Tuple[Tuple[int, ...], ...]],
    corrections: Tuple[Tuple[int, int, LaurentPoly], ...],
) -> SigmaGrid:
    sigma, degrees = _grid_cells(nu.nu, nu_prime.nu, ctx.L, ctx.N, ctx.theta)
    if signs is not None or corrections:
        cells = [list(row) for row in sigma]
        if signs is not None:
            cells = [[cells[m][n] * signs[m][n] for n in range(ctx.L)] for m in range(ctx.L)]
        for m, n, addend in corrections:
            cells[m][n] = cells[m][n] + addend
        sigma = tuple(tuple(row) for row in cells)
    return SigmaGrid(ctx, nu, nu_prime, sigma, degrees, signs, corrections)


def build_sigma_grid(nu: CoreIndex, nu_prime: CoreIndex, ctx: SubstitutionContext) -> SigmaGrid:
    if nu.L != ctx.L or nu_prime.L != ctx.L:
        raise ConfigError(f"core indices {list(nu.nu)}, {list(nu_prime.nu)} must both have length L={ctx.L}")
    grid = _assemble(ctx, nu, nu_prime, None, ())
    for m in range(ctx.L):
        for n in range(ctx.L):
            if grid.sigma[m][n].is_zero():
                raise DegenerateSolutionError(f"σ_{m},{n} vanishes identically", quantity=f"sigma[{m}][{n}]")
    logger.debug(f"built σ-grid L={ctx.L} N={ctx.N} nu={list(nu.nu)} nu'={list(nu_prime.nu)}")
    return grid


def shift_theta(grid: SigmaGrid, i: int, delta: int) -> SigmaGrid:
    return shift_theta_many(grid, {i: delta})


def shift_theta_many(grid: SigmaGrid, shift: Mapping[int, int]) -> SigmaGrid:
    key = _shift_key(shift)
    return _shifted_grid(grid, key) if key else grid


@lru_cache(maxsize=512)
def _shifted_grid(grid: SigmaGrid, key: Shift) -> SigmaGrid:
    ctx = grid.context.shifted(dict(key))
    return _assemble(ctx, grid.nu, grid.nu_prime, grid.signs, grid.corrections)


@dataclass(frozen=True)
class ParameterSet:
    """Constants θ_i (i = 0..N), e_n and κ_n (n = 0..L−1); 𝔞_n, 𝔟_n follow from them"""

    theta: Tuple[Any, ...]
    e: Tuple[Any, ...]
    kappa: Tuple[Any, ...]

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(self.theta))
        object.__setattr__(self, "e", tuple(self.e))
        object.__setattr__(self, "kappa", tuple(self.kappa))
        if len(self.e) != len(self.kappa) or len(self.e) < 2:
            raise ConfigError(f"e and kappa need the same length L >= 2, got {len(self.e)} and {len(self.kappa)}")
        if len(self.theta) < 2:
            raise ConfigError("theta needs entries for t_0 and at least one t_i")
        if not _close(sum(self.kappa), sum(self.theta)):
            raise ConfigError(f"sum(kappa) = {sum(self.kappa)} differs from sum(theta) = {sum(self.theta)}")
        if not (_close(sum(self.a_frak), 1) and _close(sum(self.b_frak), 1)):
            raise ComputationError("root variables do not sum to 1")

    @property
    def L(self) -> int:
        return len(self.e)

    @property
    def N(self) -> int:
        return len(self.theta) - 1

    def e_ext(self, n: int) -> Any:
        """e_{n+L} = e_n + 1"""
        q, r = divmod(n, self.L)
        return self.e[r] + q

    def kappa_ext(self, n: int) -> Any:
        return self.kappa[n % self.L]

    @property
    def a_frak(self) -> Tuple[Any, ...]:
        return tuple(self.e_ext(n + 1) - self.e_ext(n) for n in range(self.L))

    @property
    def b_frak(self) -> Tuple[Any, ...]:
        L = self.L
        return tuple(
            self.e_ext(L - n) - self.e_ext(L - n - 1) - self.kappa_ext(L - n) + self.kappa_ext(L - n - 1)
            for n in range(L)
        )

    def e_sum_ok(self) -> bool:
        return _close(sum(self.e), Fraction(self.L - 1, 2))

    def to_json(self) -> Dict[str, Any]:
        return {
            "theta": [str(v) for v in self.theta],
            "e": [str(v) for v in self.e],
            "kappa": [str(v) for v in self.kappa],
            "a_frak": [str(v) for v in self.a_frak],
            "b_frak": [str(v) for v in self.b_frak],
        }


def _close(a: Any, b: Any) -> bool:
    if isinstance(a, float) or isinstance(b, float):
        return abs(a - b) <= 1e-9 * max(1.0, abs(float(b)))
    return a == b


def derive_parameters(grid: SigmaGrid) -> ParameterSet:
    L = grid.L
    d = grid.degree
    theta_sum = grid.context.theta_sum
    e = tuple(Fraction(d(n, -n - 1) - d(n - 1, -n - 1) + n, L) for n in range(L))
    kappa = tuple((d(n, -n - 1) - d(n - 1, -n) + theta_sum) / L for n in range(L))
    try:
        params = ParameterSet(grid.theta, e, kappa)
    except ConfigError as exc:
        raise ComputationError(f"derived parameters are inconsistent: {exc.message}") from exc
    if not params.e_sum_ok():
        raise ComputationError(f"sum(e) = {sum(e)} differs from (L-1)/2")
    return params


def kappa_mn(grid: SigmaGrid, m: int, n: int) -> Fraction:
    """κ_{m,n} = d_{m,n−1} − d_{m−1,n} + Σθ_i"""
    return grid.degree(m, n - 1) - grid.degree(m - 1, n) + grid.context.theta_sum
