"""
Fuchsian system ∂Φ/∂z = Σ_i A_i/(z−u_i) Φ and its deformation in u_i

Two gauges:
- v-gauge: the matrices read off a σ-grid through v^{(i)}_{n,n+b} = (g^{(i)}_{n,−n}/L)Π_a t_if^{(i)}_{n+a,−n−a+1},
  exact rational functions of (t_1..t_N, z) with t_0 = 1
- qp-gauge: (A_i)_{m,n} = −p_m^{(i)}q_n^{(i)} built from a phase point

Only conjugation-invariant checks (traces, characteristic polynomials, rank)
run in the qp-gauge; zero-curvature and Schlesinger residuals run in the v-gauge.

How this file ties into the app:
- `commands/lax.py` and `commands/certify.py` run the reports below
- `commands/integrate.py` calls `max_trace_mismatch` on every trajectory
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import sympy

from characters import ParameterSet, SigmaGrid, derive_parameters
from dependencies import logger
from errors import ComputationError, ConfigError
from gvars import gvars_from_sigma
from hamiltonian import ExtendedPhaseView, PhasePoint, hamiltonian, pairing
from identities import IdentityReport, make_report
from laurent import LaurentPoly, RationalFunction
from partitions import Partition
from scalars import is_exact, is_zero

Matrix = List[List[Any]]

V_GAUGE = "v"
QP_GAUGE = "qp"
LAMBDA = sympy.Symbol("lambda")


# ---------------------------------------------------------------------------
# small matrix algebra over any ring
# ---------------------------------------------------------------------------

def zeros(L: int) -> Matrix:
    return [[0] * L for _ in range(L)]


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a: Matrix, c: Any) -> Matrix:
    return [[x * c for x in row] for row in a]


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = zeros(n)
    for r in range(n):
        for c in range(n):
            total: Any = 0
            for k in range(n):
                if is_zero(a[r][k]) or is_zero(b[k][c]):
                    continue
                total = total + a[r][k] * b[k][c]
            out[r][c] = total
    return out


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def trace(a: Matrix) -> Any:
    return sum((a[k][k] for k in range(len(a))), 0)


def trace_product(a: Matrix, b: Matrix) -> Any:
    n = len(a)
    return sum((a[r][c] * b[c][r] for r in range(n) for c in range(n)), 0)


def _evaluate(entry: Any, point: Sequence[Any]) -> Any:
    return entry.evaluate(point) if isinstance(entry, (LaurentPoly, RationalFunction)) else entry


def _matrix_residual(m: Matrix) -> Any:
    """First non-vanishing entry as a polynomial, or the largest entry size for scalars"""
    ring = [x for row in m for x in row if isinstance(x, (LaurentPoly, RationalFunction))]
    if ring:
        for x in (x for row in m for x in row):
            if not is_zero(x):
                return x.numerator() if isinstance(x, RationalFunction) else LaurentPoly.constant(1, ring[0].nvars) * x
        return LaurentPoly.zero(ring[0].nvars)
    return max((abs(x) for row in m for x in row), default=0)


# ---------------------------------------------------------------------------
# Lax data
# ---------------------------------------------------------------------------

@dataclass
class LaxData:
    """A_0..A_{N+2} with poles u_0..u_N, u_{N+1} = 0; C_i is the z-free part of B_i"""

    gauge: str
    L: int
    N: int
    params: ParameterSet
    A: List[Matrix]
    u: List[Any]
    C: Optional[List[Matrix]] = None
    nvars: Optional[int] = None
    b: Optional[List[List[Any]]] = None
    c: Optional[List[List[Any]]] = None

    @property
    def z(self) -> LaurentPoly:
        if self.nvars is None:
            raise ConfigError("only v-gauge data carries the spectral variable z")
        return LaurentPoly.variable(self.N + 1, self.nvars)

    def d_u(self, x: Any, i: int) -> Any:
        """∂/∂u_i = −(t_i^{L+1}/L)∂/∂t_i on v-gauge entries"""
        if not isinstance(x, (LaurentPoly, RationalFunction)):
            return 0
        return x.derivative(i) * LaurentPoly.variable(i, self.nvars, self.L + 1) * Fraction(-1, self.L)

    def to_json(self) -> Dict[str, Any]:
        return {
            "gauge": self.gauge,
            "L": self.L,
            "N": self.N,
            "A": [[[str(x) for x in row] for row in m] for m in self.A],
            "u": [str(x) for x in self.u],
        }


def _v_tables(grid: SigmaGrid) -> List[List[List[RationalFunction]]]:
    """v[i][n][col] for i = 0..N, ring of N+2 variables with t_0 = 1"""
    L, N = grid.L, grid.N
    gv = gvars_from_sigma(grid)
    nvars = N + 2
    tables = []
    for i in range(N + 1):
        t_i = LaurentPoly.variable(i, grid.nvars)
        table = [[None] * L for _ in range(L)]
        for n in range(L):
            value = gv.G(i, n, -n) / L
            for b in range(1, L + 1):
                value = value * t_i * gv.F(i, n + b, -n - b + 1)
                table[n][(n + b) % L] = value.substitute(0, 1).extended(nvars)
        tables.append(table)
    return tables


def build_lax_from_sigma(grid: SigmaGrid) -> LaxData:
    L, N = grid.L, grid.N
    params = derive_parameters(grid)
    nvars = N + 2
    v = _v_tables(grid)
    u: List[Any] = [LaurentPoly.constant(1, nvars)] + [LaurentPoly.variable(i, nvars, -L) for i in range(1, N + 1)]
    A, C = [], []
    for i in range(N + 1):
        A.append([[-v[i][m][n] if m < n else -(u[i] * v[i][m][n]) for n in range(L)] for m in range(L)])
        scalar = grid.theta[i] / (L * u[i])
        C.append([[v[i][m][n] if m > n else (scalar if m == n else 0) for n in range(L)] for m in range(L)])
    w = [[sum((v[i][m][n] for i in range(N + 1)), 0) for n in range(L)] for m in range(L)]
    A.append([[params.e[m] if m == n else (w[m][n] if m < n else 0) for n in range(L)] for m in range(L)])
    total = zeros(L)
    for m in A:
        total = mat_add(total, m)
    A.append(mat_scale(total, -1))
    u.append(0)

    gv = gvars_from_sigma(grid)
    bs, cs = [], []
    for i in range(N + 1):
        t_i = LaurentPoly.variable(i, grid.nvars)
        c_row, b_row = [], []
        chain: Any = RationalFunction.constant(1, grid.nvars)
        for n in range(L):
            if n:
                chain = chain * t_i * gv.F(i, n, -n + 1)
            c_row.append(chain.substitute(0, 1).extended(nvars))
            b_row.append((-gv.G(i, n, -n) / (L * chain)).substitute(0, 1).extended(nvars))
        bs.append(b_row)
        cs.append(c_row)
    logger.debug(f"v-gauge Lax matrices built for L = {L}, N = {N}")
    return LaxData(V_GAUGE, L, N, params, A, u, C, nvars, bs, cs)


def build_lax_from_point(params: ParameterSet, pt: PhasePoint) -> LaxData:
    """qp-gauge: c_n^{(i)} = q_n^{(i)}, b_n^{(i)} = −p_n^{(i)}, c_n^{(0)} = 1"""
    view = ExtendedPhaseView(params, pt)
    L, N = view.L, view.N
    bs = [[-view.p(i, n) for n in range(L)] for i in range(N + 1)]
    cs = [[view.q(i, n) for n in range(L)] for i in range(N + 1)]
    A = [[[bs[i][m] * cs[i][n] for n in range(L)] for m in range(L)] for i in range(N + 1)]
    w = [[sum((view.p(j, m) * view.q(j, n) for j in range(N + 1)), 0) for n in range(L)] for m in range(L)]
    A.append([[params.e[m] if m == n else (w[m][n] if m < n else 0) for n in range(L)] for m in range(L)])
    total = zeros(L)
    for m in A:
        total = mat_add(total, m)
    A.append(mat_scale(total, -1))
    u = [1] + [1 / s for s in pt.s] + [0]
    return LaxData(QP_GAUGE, L, N, params, A, u, b=bs, c=cs)


def evaluate_lax(lax: LaxData, t: Sequence[Any]) -> LaxData:
    """v-gauge matrices at t = (t_1..t_N)"""
    if lax.gauge != V_GAUGE:
        raise ConfigError("only v-gauge data is evaluated at a t-point")
    point = [1] + list(t) + [0]
    A = [[[_evaluate(x, point) for x in row] for row in m] for m in lax.A]
    u = [_evaluate(x, point) for x in lax.u]
    return LaxData(V_GAUGE, lax.L, lax.N, lax.params, A, u)


# ---------------------------------------------------------------------------
# algebraic checks
# ---------------------------------------------------------------------------

def check_factorization(lax: LaxData) -> List[IdentityReport]:
    """A_i = b^{(i)}c^{(i)} and c^{(i)}·b^{(i)} = −θ_i"""
    reports = []
    for i in range(lax.N + 1):
        start = time.perf_counter()
        outer = [[lax.b[i][m] * lax.c[i][n] for n in range(lax.L)] for m in range(lax.L)]
        reports.append(make_report("lax.factorization", {"i": i}, _matrix_residual(mat_sub(lax.A[i], outer)), start))
        start = time.perf_counter()
        inner = sum((lax.c[i][n] * lax.b[i][n] for n in range(lax.L)), 0)
        reports.append(make_report("lax.cb_trace", {"i": i}, inner + lax.params.theta[i], start))
    return reports


def check_rank_one(lax: LaxData) -> List[IdentityReport]:
    """All 2×2 minors of A_0..A_N vanish"""
    reports = []
    L = lax.L
    for i in range(lax.N + 1):
        start = time.perf_counter()
        a = lax.A[i]
        minors = [[a[r1][c1] * a[r2][c2] - a[r1][c2] * a[r2][c1]
                   for r1 in range(L) for r2 in range(r1 + 1, L)
                   for c1 in range(L) for c2 in range(c1 + 1, L)]]
        reports.append(make_report("lax.rank_one", {"i": i}, _matrix_residual(minors), start))
    return reports


def _to_sympy(x: Any) -> Any:
    if not is_exact(x) or isinstance(x, (LaurentPoly, RationalFunction)):
        raise ConfigError("characteristic polynomials need exact numeric matrices; evaluate v-gauge data first")
    x = Fraction(x)
    return sympy.Rational(x.numerator, x.denominator)


def characteristic_polynomial(m: Matrix) -> sympy.Poly:
    return sympy.Matrix([[_to_sympy(x) for x in row] for row in m]).charpoly(LAMBDA)


def _poly_gap(actual: sympy.Poly, expected: Any) -> Fraction:
    diff = sympy.Poly(actual.as_expr() - expected, LAMBDA)
    coeffs = [Fraction(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in diff.all_coeffs()]
    return max((abs(c) for c in coeffs), default=Fraction(0))


def _exponents(poly: sympy.Poly) -> List[str]:
    roots = sympy.roots(poly, LAMBDA)
    out = []
    for root, mult in sorted(roots.items(), key=lambda kv: str(kv[0])):
        out.extend([str(root)] * mult)
    return out


def _multiplicities(poly: sympy.Poly) -> Partition:
    _, factors = sympy.factor_list(poly.as_expr(), LAMBDA)
    parts: List[int] = []
    for factor, mult in factors:
        parts.extend([mult] * sympy.degree(factor, LAMBDA))
    return Partition(tuple(sorted(parts, reverse=True)))


@dataclass
class RiemannScheme:
    rows: List[Dict[str, Any]] = field(default_factory=list)
    reports: List[IdentityReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_json(self) -> Dict[str, Any]:
        return {"table": self.rows, "pass": self.passed, "reports": [r.to_json() for r in self.reports]}


def riemann_scheme(lax: LaxData) -> RiemannScheme:
    """Exponents at u_i, 0 and ∞ against (−θ_i, 0..0), (e_n) and (κ_n − e_n)"""
    params, L, N = lax.params, lax.L, lax.N
    scheme = RiemannScheme()
    expected = [LAMBDA ** (L - 1) * (LAMBDA + _to_sympy(params.theta[i])) for i in range(N + 1)]
    expected.append(sympy.prod([LAMBDA - _to_sympy(e) for e in params.e]))
    expected.append(sympy.prod([LAMBDA - _to_sympy(k - e) for k, e in zip(params.kappa, params.e)]))
    labels = [f"u{i}" for i in range(N + 1)] + ["0", "inf"]
    exponent_total = Fraction(0)
    for k, (label, target) in enumerate(zip(labels, expected)):
        start = time.perf_counter()
        poly = characteristic_polynomial(lax.A[k])
        gap = _poly_gap(poly, target)
        scheme.reports.append(make_report("lax.exponents", {"singularity": label}, gap, start))
        scheme.rows.append({"singularity": label, "exponents": _exponents(poly)})
        exponent_total += Fraction(str(-poly.all_coeffs()[1]))
    start = time.perf_counter()
    scheme.reports.append(make_report("lax.e_sum", {}, sum(params.e) - Fraction(L - 1, 2), start))
    start = time.perf_counter()
    scheme.reports.append(make_report("lax.kappa_sum", {}, sum(params.kappa) - sum(params.theta), start))
    start = time.perf_counter()
    scheme.reports.append(make_report("lax.fuchs", {}, exponent_total, start))
    start = time.perf_counter()
    diagonal = max(abs(lax.A[N + 2][n][n] - (params.kappa[n] - params.e[n])) for n in range(L))
    scheme.reports.append(make_report("lax.infinity_diagonal", {}, diagonal, start))
    return scheme


def spectral_type(lax: LaxData) -> Tuple[Partition, ...]:
    """Eigenvalue multiplicities of A_0..A_{N+2}, as partitions of L"""
    return tuple(_multiplicities(characteristic_polynomial(m)) for m in lax.A)


def accessory_count(spectral: Sequence[Any], n_sing: Optional[int] = None) -> int:
    """(n_sing − 2)L² − ΣΣμ² + 2"""
    parts = [Partition(tuple(p.parts)) if isinstance(p, Partition) else Partition(tuple(p)) for p in spectral]
    if not parts:
        raise ConfigError("empty spectral type")
    L = parts[0].weight
    if L < 1 or any(p.weight != L for p in parts):
        raise ConfigError(f"every partition in the spectral type must have the same size, got {[p.weight for p in parts]}")
    n_sing = len(parts) if n_sing is None else n_sing
    if n_sing != len(parts):
        raise ConfigError(f"spectral type lists {len(parts)} singularities, expected {n_sing}")
    return (n_sing - 2) * L * L - sum(m * m for p in parts for m in p.parts) + 2


# ---------------------------------------------------------------------------
# Hamiltonians from traces
# ---------------------------------------------------------------------------

def trace_hamiltonian(lax: LaxData, i: int) -> Any:
    """−K_i/s_i² with K_i = Σ_{j≠i} tr(A_iA_j)/(u_i−u_j)"""
    if not 1 <= i <= lax.N:
        raise ConfigError(f"flow index {i} outside 1..{lax.N}")
    K: Any = 0
    for j in range(lax.N + 2):
        if j == i:
            continue
        K = K + trace_product(lax.A[i], lax.A[j]) / (lax.u[i] - lax.u[j])
    return -K * lax.u[i] * lax.u[i]


def check_trace_hamiltonian(params: ParameterSet, pt: PhasePoint, tolerance: float = 0.0) -> List[IdentityReport]:
    """Trace formulas for tr(A_iA_j), tr(A_iA_{N+1}) and H_i = −K_i/s_i²"""
    pt.check_regular()
    lax = build_lax_from_point(params, pt)
    view = ExtendedPhaseView(params, pt)
    L, N = lax.L, lax.N
    reports = []
    for i in range(N + 1):
        for j in range(i, N + 1):
            start = time.perf_counter()
            residual = trace_product(lax.A[i], lax.A[j]) - pairing(view, i, j)
            reports.append(make_report("lax.trace_pairing", {"i": i, "j": j}, residual, start, tolerance=tolerance))
        start = time.perf_counter()
        formula: Any = sum((params.e[n] * view.q(i, n) * view.p(i, n) for n in range(L)), 0)
        for j in range(N + 1):
            for m in range(L):
                for n in range(m + 1, L):
                    formula = formula + view.q(i, m) * view.p(j, m) * view.q(j, n) * view.p(i, n)
        residual = trace_product(lax.A[i], lax.A[N + 1]) + formula
        reports.append(make_report("lax.trace_infinity", {"i": i}, residual, start, tolerance=tolerance))
    for i in range(1, N + 1):
        start = time.perf_counter()
        residual = trace_hamiltonian(lax, i) - hamiltonian(params, pt, i)
        reports.append(make_report("lax.trace_hamiltonian", {"i": i}, residual, start, tolerance=tolerance))
    return reports


def max_trace_mismatch(params: ParameterSet, points: Sequence[PhasePoint]) -> float:
    worst = 0.0
    for pt in points:
        lax = build_lax_from_point(params, pt)
        for i in range(1, pt.N + 1):
            gap = abs(complex(trace_hamiltonian(lax, i) - hamiltonian(params, pt, i, check=False)))
            worst = max(worst, gap)
    return worst


def gauge_invariant_traces(grid: SigmaGrid) -> List[IdentityReport]:
    """tr(A_iA_j) from σ equals tr(A_iA_j) from the canonical variables of the same grid"""
    from solutions import canonical_from_sigma

    v_lax = build_lax_from_sigma(grid)
    sol = canonical_from_sigma(grid)
    qp_lax = build_lax_from_point(sol.params, sol.point())
    reports = []
    for i in range(grid.N + 2):
        for j in range(i, grid.N + 2):
            start = time.perf_counter()
            qp_trace = trace_product(qp_lax.A[i], qp_lax.A[j])
            if isinstance(qp_trace, (LaurentPoly, RationalFunction)):
                qp_trace = qp_trace.extended(v_lax.nvars)
            residual = trace_product(v_lax.A[i], v_lax.A[j]) - qp_trace
            reports.append(make_report("lax.gauge_traces", {"i": i, "j": j}, residual, start))
    return reports


# ---------------------------------------------------------------------------
# deformation equations (v-gauge)
# ---------------------------------------------------------------------------

def _require_v(lax: LaxData) -> None:
    if lax.gauge != V_GAUGE or lax.nvars is None:
        raise ConfigError("deformation residuals need exact v-gauge data")


def zero_curvature_matrix(lax: LaxData, i: int) -> Matrix:
    """∂A/∂u_i − ∂B_i/∂z − [B_i, A] with B_i = C_i − A_i/(z − u_i)"""
    _require_v(lax)
    if not 1 <= i <= lax.N:
        raise ConfigError(f"flow index {i} outside 1..{lax.N}")
    z = lax.z
    index = lax.N + 1
    A = zeros(lax.L)
    for k in range(lax.N + 2):
        A = mat_add(A, mat_scale(lax.A[k], 1 / (z - lax.u[k])))
    B = mat_sub(lax.C[i], mat_scale(lax.A[i], 1 / (z - lax.u[i])))
    dA = [[lax.d_u(x, i) for x in row] for row in A]
    dB = [[x.derivative(index) if isinstance(x, (LaurentPoly, RationalFunction)) else 0 for x in row] for row in B]
    return mat_sub(mat_sub(dA, dB), commutator(B, A))


def zero_curvature_residual(lax: LaxData, i: int, z_samples: Optional[Sequence[Tuple[Sequence[float], float]]] = None,
                            tolerance: float = 1e-12) -> List[IdentityReport]:
    """Exact residual, plus float spot checks at (t, z) samples when given"""
    start = time.perf_counter()
    R = zero_curvature_matrix(lax, i)
    reports = [make_report("lax.zero_curvature", {"i": i}, _matrix_residual(R), start)]
    for t, zval in z_samples or []:
        start = time.perf_counter()
        point = [1.0] + [float(x) for x in t] + [float(zval)]
        values = [[complex(_evaluate(x, point)) for x in row] for row in R]
        worst = max(abs(x) for row in values for x in row)
        reports.append(make_report("lax.zero_curvature_float", {"i": i, "z": zval}, worst, start, tolerance=tolerance))
    return reports


def _schlesinger(lax: LaxData, with_gauge: bool) -> List[IdentityReport]:
    _require_v(lax)
    prefix = "lax.schlesinger" if with_gauge else "lax.schlesinger_bare"
    detail = None if with_gauge else "informational: omits the z-independent part of B_i"
    reports = []
    A, u, N = lax.A, lax.u, lax.N
    for i in range(1, N + 1):
        C = lax.C[i] if with_gauge else zeros(lax.L)
        start = time.perf_counter()
        own = [[lax.d_u(x, i) for x in row] for row in A[i]]
        for j in range(N + 2):
            if j != i:
                own = mat_add(own, mat_scale(commutator(A[i], A[j]), 1 / (u[i] - u[j])))
        own = mat_sub(own, commutator(C, A[i]))
        reports.append(make_report(f"{prefix}_own", {"i": i}, _matrix_residual(own), start, detail=detail))
        for j in range(N + 2):
            if j == i:
                continue
            start = time.perf_counter()
            cross = [[lax.d_u(x, i) for x in row] for row in A[j]]
            cross = mat_sub(cross, mat_scale(commutator(A[i], A[j]), 1 / (u[i] - u[j])))
            cross = mat_sub(cross, commutator(C, A[j]))
            reports.append(make_report(f"{prefix}_cross", {"i": i, "j": j}, _matrix_residual(cross), start, detail=detail))
    return reports


def schlesinger_residual(lax: LaxData) -> List[IdentityReport]:
    return _schlesinger(lax, with_gauge=True)


def schlesinger_bare(lax: LaxData) -> List[IdentityReport]:
    """The textbook form without the gauge term; reported, never gating"""
    return _schlesinger(lax, with_gauge=False)


def lax_summary(lax: LaxData, scheme: Optional[RiemannScheme] = None) -> Dict[str, Any]:
    """Riemann scheme, spectral type and accessory count of exact numeric data"""
    if lax.gauge == V_GAUGE and lax.nvars is not None:
        raise ComputationError("evaluate v-gauge data at a t-point before summarizing it")
    scheme = scheme or riemann_scheme(lax)
    spectral = spectral_type(lax)
    return {
        "riemann_scheme": scheme.to_json(),
        "spectral_type": [p.to_json() for p in spectral],
        "accessory_parameters": accessory_count(spectral),
        "expected_accessory_parameters": 2 * lax.N * (lax.L - 1),
    }
