"""
Polynomial Hamiltonians H_1..H_N of the reduced system and their specializations

s_iH_i = Σ_n e_n q_n^{(i)}p_n^{(i)}
       + Σ_{j=0}^{N} Σ_{0≤m<n≤L−1} q_m^{(i)}p_m^{(j)}q_n^{(j)}p_n^{(i)}
       + Σ_{j≠i} s_j/(s_i−s_j) Σ_{m,n} q_m^{(i)}p_m^{(j)}q_n^{(j)}p_n^{(i)}

with s_0 = 1 and the extended symbols q_n^{(0)} = q_0^{(i)} = 1,
p_n^{(0)} = κ_n − Σ_i q_n^{(i)}p_n^{(i)}, p_0^{(i)} = θ_i − Σ_n q_n^{(i)}p_n^{(i)}.

Everything here is written once for any value type that supports + − * /:
Fractions (exact points), floats/complex (integration), and LaurentPoly /
RationalFunction (symbolic points, used to certify identities as polynomials).

How this file ties into the app:
- `integrator.py` calls `vector_field` for every right-hand side evaluation
- `solutions.py` compares `gradient` against t-derivatives of rational solutions
- `lax.py` compares `hamiltonian` with the trace formula −K_i/s_i²
- `commands/compare.py` runs the P_VI and Garnier specializations
"""

import operator
import random
import time
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple

from characters import ParameterSet
from dependencies import logger
from errors import ConfigError, IndeterminacyError, SingularLocusError
from identities import IdentityReport, make_report
from laurent import LaurentPoly, RationalFunction, variables
from scalars import EXACT, is_exact, is_zero, mode_of, random_rational

Key = Tuple[str, int, int]
Term = Tuple[Any, Tuple[Key, ...]]
Grid = Tuple[Tuple[Any, ...], ...]

FLOAT_TOLERANCE = 1e-9


def _rows(values: Sequence[Sequence[Any]]) -> Grid:
    return tuple(tuple(row) for row in values)


def _near(value: Any, margin: float) -> bool:
    if is_exact(value):
        return is_zero(value)
    return abs(value) <= margin


@dataclass(frozen=True)
class PhasePoint:
    """s_1..s_N with q[i−1][n−1] = q_n^{(i)} and p[i−1][n−1] = p_n^{(i)}"""

    s: Tuple[Any, ...]
    q: Grid
    p: Grid

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(self.s))
        object.__setattr__(self, "q", _rows(self.q))
        object.__setattr__(self, "p", _rows(self.p))
        if not self.s:
            raise ConfigError("a phase point needs at least one time variable")
        if len(self.q) != len(self.s) or len(self.p) != len(self.s):
            raise ConfigError(f"q and p need N = {len(self.s)} rows")
        widths = {len(row) for row in self.q + self.p}
        if len(widths) != 1 or widths == {0}:
            raise ConfigError("q and p rows must all have L−1 >= 1 entries")
        mode_of(self.values())

    @property
    def N(self) -> int:
        return len(self.s)

    @property
    def L(self) -> int:
        return len(self.q[0]) + 1

    @property
    def mode(self) -> str:
        return mode_of(self.values())

    def values(self) -> List[Any]:
        return list(self.s) + [v for row in self.q + self.p for v in row]

    def flat(self) -> List[Any]:
        """q then p, row by row"""
        return [v for row in self.q for v in row] + [v for row in self.p for v in row]

    @classmethod
    def from_flat(cls, s: Sequence[Any], flat: Sequence[Any], L: int) -> "PhasePoint":
        N = len(s)
        width = L - 1
        half = N * width
        if len(flat) != 2 * half:
            raise ConfigError(f"expected {2 * half} phase coordinates, got {len(flat)}")
        q = [list(flat[k * width:(k + 1) * width]) for k in range(N)]
        p = [list(flat[half + k * width:half + (k + 1) * width]) for k in range(N)]
        return cls(tuple(s), q, p)

    def check_regular(self, margin: float = 0.0) -> None:
        """Raise when s touches {0, 1} or two times collide"""
        for i, si in enumerate(self.s, start=1):
            if _near(si, margin) or _near(si - 1, margin):
                raise SingularLocusError(f"s_{i} = {si} lies on the singular locus", last_state=self.to_json())
            for j in range(i + 1, self.N + 1):
                if _near(si - self.s[j - 1], margin):
                    raise SingularLocusError(f"s_{i} and s_{j} collide", last_state=self.to_json())

    def to_json(self) -> Dict[str, Any]:
        return {
            "s": [str(v) for v in self.s],
            "q": [[str(v) for v in row] for row in self.q],
            "p": [[str(v) for v in row] for row in self.p],
        }


def _scale(value: Any, s: Any, k: int) -> Any:
    """value * s^k without leaving the value's ring"""
    if k == 0:
        return value
    if k > 0:
        return value * s ** k
    return value / s ** (-k)


class ExtendedPhaseView:
    """q_n^{(i)}, p_n^{(i)} for i = 0..N and any integer n"""

    def __init__(self, params: ParameterSet, pt: PhasePoint):
        if params.L != pt.L or params.N != pt.N:
            raise ConfigError(
                f"parameters are for (L, N) = ({params.L}, {params.N}), point is for ({pt.L}, {pt.N})"
            )
        self.params = params
        self.pt = pt
        self.L = pt.L
        self.N = pt.N
        qp = [[pt.q[i][n] * pt.p[i][n] for n in range(self.L - 1)] for i in range(self.N)]
        self._p0 = [None] + [
            params.kappa[n] - sum((qp[i][n - 1] for i in range(self.N)), 0) for n in range(1, self.L)
        ]
        self._pi0 = [None] + [params.theta[i] - sum(qp[i - 1], 0) for i in range(1, self.N + 1)]
        self._p00 = params.kappa[0] - sum(params.theta[1:], 0) + sum((v for row in qp for v in row), 0)

    def s(self, i: int) -> Any:
        return 1 if i == 0 else self.pt.s[i - 1]

    def q(self, i: int, n: int) -> Any:
        k, r = divmod(n, self.L)
        base = 1 if i == 0 or r == 0 else self.pt.q[i - 1][r - 1]
        return base if i == 0 else _scale(base, self.s(i), k)

    def p(self, i: int, n: int) -> Any:
        k, r = divmod(n, self.L)
        if i == 0:
            return self._p00 if r == 0 else self._p0[r]
        base = self._pi0[i] if r == 0 else self.pt.p[i - 1][r - 1]
        return _scale(base, self.s(i), -k)

    def value(self, key: Key) -> Any:
        kind, j, n = key
        return self.q(j, n) if kind == "q" else self.p(j, n)


def pairing(view: ExtendedPhaseView, i: int, j: int) -> Any:
    """Σ_{m,n} q_m^{(i)}p_m^{(j)}q_n^{(j)}p_n^{(i)}, i.e. tr(A_iA_j)"""
    L = view.L
    left = sum((view.q(i, m) * view.p(j, m) for m in range(L)), 0)
    right = sum((view.q(j, n) * view.p(i, n) for n in range(L)), 0)
    return left * right


def hamiltonian_terms(view: ExtendedPhaseView, i: int) -> List[Term]:
    """H_i as a list of (coefficient, four or two extended symbols)"""
    if not 1 <= i <= view.N:
        raise ConfigError(f"Hamiltonian index {i} outside 1..{view.N}")
    L, N = view.L, view.N
    si = view.s(i)
    inv = 1 / si
    terms: List[Term] = []
    for n in range(L):
        terms.append((view.params.e[n] * inv, (("q", i, n), ("p", i, n))))
    for j in range(N + 1):
        for m in range(L):
            for n in range(m + 1, L):
                terms.append((inv, (("q", i, m), ("p", j, m), ("q", j, n), ("p", i, n))))
    for j in range(N + 1):
        if j == i:
            continue
        sj = view.s(j)
        coef = sj / (si - sj) * inv
        for m, n in product(range(L), repeat=2):
            terms.append((coef, (("q", i, m), ("p", j, m), ("q", j, n), ("p", i, n))))
    return terms


def _evaluate(terms: List[Term], values: Dict[Key, Any]) -> Any:
    total: Any = 0
    for coef, keys in terms:
        total = total + reduce(operator.mul, (values[k] for k in keys), coef)
    return total


def _values(view: ExtendedPhaseView, terms: List[Term]) -> Dict[Key, Any]:
    return {key: view.value(key) for _, keys in terms for key in keys}


def hamiltonian(params: ParameterSet, pt: PhasePoint, i: int, check: bool = True) -> Any:
    if check:
        pt.check_regular()
    view = ExtendedPhaseView(params, pt)
    terms = hamiltonian_terms(view, i)
    return _evaluate(terms, _values(view, terms))


def _is_constant_symbol(key: Key) -> bool:
    kind, j, n = key
    return kind == "q" and (j == 0 or n == 0)


def _symbol_partials(terms: List[Term], values: Dict[Key, Any]) -> Dict[Key, Any]:
    partials: Dict[Key, Any] = {}
    for coef, keys in terms:
        for pos, key in enumerate(keys):
            if _is_constant_symbol(key):
                continue
            rest = coef
            for other_pos, other in enumerate(keys):
                if other_pos != pos:
                    rest = rest * values[other]
            partials[key] = partials[key] + rest if key in partials else rest
    return partials


def gradient(params: ParameterSet, pt: PhasePoint, i: int, check: bool = True) -> Tuple[List[List[Any]], List[List[Any]]]:
    """(∂H_i/∂q_n^{(k)}, ∂H_i/∂p_n^{(k)}) as N × (L−1) tables

    p_n^{(0)}, p_0^{(k)} and p_0^{(0)} depend on (q, p); their contributions
    enter through the chain rule.
    """
    if check:
        pt.check_regular()
    view = ExtendedPhaseView(params, pt)
    terms = hamiltonian_terms(view, i)
    values = _values(view, terms)
    partial = _symbol_partials(terms, values)

    def d(key: Key) -> Any:
        return partial.get(key, 0)

    dq: List[List[Any]] = []
    dp: List[List[Any]] = []
    for k in range(1, view.N + 1):
        row_q, row_p = [], []
        for n in range(1, view.L):
            through = d(("p", 0, n)) + d(("p", k, 0)) - d(("p", 0, 0))
            row_q.append(d(("q", k, n)) - view.p(k, n) * through)
            row_p.append(d(("p", k, n)) - view.q(k, n) * through)
        dq.append(row_q)
        dp.append(row_p)
    return dq, dp


def vector_field(params: ParameterSet, pt: PhasePoint, j: int, check: bool = True) -> Tuple[List[List[Any]], List[List[Any]]]:
    """Velocities (∂q/∂s_j, ∂p/∂s_j) = (∂H_j/∂p, −∂H_j/∂q)"""
    dq, dp = gradient(params, pt, j, check=check)
    return dp, [[-v for v in row] for row in dq]


def poisson_bracket(params: ParameterSet, pt: PhasePoint, i: int, j: int) -> Any:
    dq_i, dp_i = gradient(params, pt, i, check=False)
    dq_j, dp_j = gradient(params, pt, j, check=False)
    total: Any = 0
    for k in range(pt.N):
        for n in range(pt.L - 1):
            total = total + dq_i[k][n] * dp_j[k][n] - dp_i[k][n] * dq_j[k][n]
    return total


def mixed_partial(params: ParameterSet, pt: PhasePoint, i: int, j: int) -> Any:
    """(∂/∂s_j)H_i with q, p held fixed; symmetric in i, j"""
    if i == j:
        raise ConfigError("mixed_partial needs two different flows")
    view = ExtendedPhaseView(params, pt)
    diff = view.s(i) - view.s(j)
    return pairing(view, i, j) / (diff * diff)


# ---------------------------------------------------------------------------
# random and symbolic points
# ---------------------------------------------------------------------------

def random_parameters(rng: random.Random, L: int, N: int) -> ParameterSet:
    """Random exact constants with Σe = (L−1)/2 and Σκ = Σθ"""
    theta = [random_rational(rng) for _ in range(N + 1)]
    e = [random_rational(rng) for _ in range(L - 1)]
    e.append(Fraction(L - 1, 2) - sum(e, Fraction(0)))
    kappa = [random_rational(rng) for _ in range(L - 1)]
    kappa.append(sum(theta, Fraction(0)) - sum(kappa, Fraction(0)))
    return ParameterSet(tuple(theta), tuple(e), tuple(kappa))


def random_times(rng: random.Random, N: int) -> Tuple[Fraction, ...]:
    times: List[Fraction] = []
    while len(times) < N:
        value = random_rational(rng, -4, 4, 5)
        if value not in (0, 1) and value not in times:
            times.append(value)
    return tuple(times)


def random_point(rng: random.Random, L: int, N: int, exact: bool = True) -> PhasePoint:
    s = random_times(rng, N)
    q = [[random_rational(rng) for _ in range(L - 1)] for _ in range(N)]
    p = [[random_rational(rng) for _ in range(L - 1)] for _ in range(N)]
    pt = PhasePoint(s, q, p)
    return pt if exact else to_float_point(pt)


def to_float_point(pt: PhasePoint) -> PhasePoint:
    return PhasePoint(
        tuple(float(v) for v in pt.s),
        [[float(v) for v in row] for row in pt.q],
        [[float(v) for v in row] for row in pt.p],
    )


def phase_index(L: int, N: int, kind: str, i: int, n: int) -> int:
    """Variable index of q_n^{(i)} or p_n^{(i)} in a symbolic point"""
    width = L - 1
    base = (i - 1) * width + (n - 1)
    return base if kind == "q" else N * width + base


def symbolic_point(L: int, N: int, s: Optional[Sequence[Any]] = None) -> PhasePoint:
    """q, p as ring variables; s as given, or as trailing variables when omitted"""
    width = L - 1
    nvars = 2 * N * width + (0 if s is not None else N)
    xs = variables(nvars)
    q = [[xs[phase_index(L, N, "q", i, n)] for n in range(1, L)] for i in range(1, N + 1)]
    p = [[xs[phase_index(L, N, "p", i, n)] for n in range(1, L)] for i in range(1, N + 1)]
    times = tuple(s) if s is not None else tuple(xs[2 * N * width:])
    return PhasePoint(times, q, p)


def _tolerance(pt: PhasePoint) -> float:
    return 0.0 if pt.mode == EXACT else FLOAT_TOLERANCE


def check_flow_compatibility(params: ParameterSet, s: Sequence[Any]) -> List[IdentityReport]:
    """{H_i, H_j} carries no (q, p) dependence, so the flows commute

    The explicit s-partials agree by `mixed_partial`, hence the
    zero-curvature condition of the flows reduces to this bracket.
    """
    pt = symbolic_point(params.L, params.N, s)
    pt.check_regular()
    reports = []
    for i in range(1, params.N + 1):
        for j in range(i + 1, params.N + 1):
            start = time.perf_counter()
            bracket = poisson_bracket(params, pt, i, j)
            if isinstance(bracket, RationalFunction):
                bracket = bracket.numerator()
            residual = bracket - bracket.constant_term() if isinstance(bracket, LaurentPoly) else 0
            reports.append(make_report("hamiltonian.flow_compatibility", {"i": i, "j": j}, residual, start))
    return reports


def check_mixed_partial(params: ParameterSet, pt: PhasePoint, i: int, j: int) -> IdentityReport:
    """Closed-form (∂/∂s_j)H_i against differentiating H_i in a symbolic s_j"""
    start = time.perf_counter()
    svars = variables(pt.N)
    lifted = replace(pt, s=tuple(svars))
    symbolic = hamiltonian(params, lifted, i, check=False)
    explicit = symbolic.derivative(j - 1).evaluate(list(pt.s))
    residual = explicit - mixed_partial(params, pt, i, j)
    return make_report("hamiltonian.mixed_partial", {"i": i, "j": j}, residual, start, tolerance=_tolerance(pt))


# ---------------------------------------------------------------------------
# P_VI and its coupled form (N = 1)
# ---------------------------------------------------------------------------

def pvi_parameters(params: ParameterSet, n: int = 1) -> Tuple[Any, Any, Any, Any, Any]:
    """(a_0, a_1, a_2, a_3, a_4) attached to the pair (q_n, p_n)"""
    e, kappa, theta = params.e, params.kappa, params.theta[1]
    return (
        e[0] - e[n] + kappa[n] + 1,
        -kappa[n] + theta,
        -theta,
        -e[0] + e[n] + kappa[0],
        -kappa[0] + theta,
    )


def h_vi(a: Sequence[Any], q: Any, p: Any, s: Any) -> Any:
    a0, a1, a2, a3, a4 = a
    top = (
        q * (q - 1) * (q - s) * p * p
        - ((a0 - 1) * q * (q - 1) + a3 * q * (q - s) + a4 * (q - 1) * (q - s)) * p
        + a2 * (a1 + a2) * q
    )
    return top / (s * (s - 1))


def coupled_pvi_hamiltonian(params: ParameterSet, pt: PhasePoint) -> Any:
    """Sum of P_VI Hamiltonians, the s-only term and the pairwise interaction"""
    if pt.N != 1:
        raise ConfigError(f"the P_VI form exists only for N = 1, got N = {pt.N}")
    L = pt.L
    s = pt.s[0]
    q = (None,) + pt.q[0]
    p = (None,) + pt.p[0]
    theta, e0, kappa = params.theta[1], params.e[0], params.kappa
    denom = s * (s - 1)
    total: Any = theta * (e0 * (s - 1) + kappa[0] - theta) / denom
    for n in range(1, L):
        total = total + h_vi(pvi_parameters(params, n), q[n], p[n], s)
    for m in range(1, L):
        for n in range(m + 1, L):
            left = (q[m] - 1) * p[m] * q[n] * ((q[n] - s) * p[n] - kappa[n])
            right = (q[n] - s) * p[n] * q[m] * ((q[m] - 1) * p[m] - kappa[m])
            total = total + (left + right) / denom
    return total


def pvi_specialize(params: ParameterSet, pt: PhasePoint) -> List[IdentityReport]:
    if pt.N != 1:
        raise ConfigError(f"pvi comparison needs N = 1, got N = {pt.N}")
    pt.check_regular()
    reports = []
    for n in range(1, pt.L):
        start = time.perf_counter()
        a = pvi_parameters(params, n)
        residual = a[0] + a[1] + 2 * a[2] + a[3] + a[4] - 1
        reports.append(make_report("pvi.parameter_sum", {"n": n}, residual, start, tolerance=FLOAT_TOLERANCE))
    start = time.perf_counter()
    residual = hamiltonian(params, pt, 1) - coupled_pvi_hamiltonian(params, pt)
    name = "pvi.hamiltonian" if pt.L == 2 else "pvi.coupled"
    reports.append(make_report(name, {"L": pt.L}, residual, start, tolerance=_tolerance(pt)))
    return reports


# ---------------------------------------------------------------------------
# Garnier coordinates (Q, P) and the L = 2 Garnier Hamiltonian
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GarnierPoint:
    s: Tuple[Any, ...]
    Q: Grid
    P: Grid
    h_tilde: Tuple[Any, ...]

    def to_json(self) -> Dict[str, Any]:
        return {
            "s": [str(v) for v in self.s],
            "Q": [[str(v) for v in row] for row in self.Q],
            "P": [[str(v) for v in row] for row in self.P],
            "H_tilde": [str(v) for v in self.h_tilde],
        }


def garnier_transform(params: ParameterSet, pt: PhasePoint, check: bool = True) -> GarnierPoint:
    """Q = −s_ip_n^{(i)}/p_n^{(0)}, QP = −qp, H̃_i = H_i − Σ_n q_n^{(i)}p_n^{(i)}/s_i"""
    view = ExtendedPhaseView(params, pt)
    p0 = [view.p(0, n) for n in range(pt.L)]
    for n in range(1, pt.L):
        if is_zero(p0[n]):
            raise IndeterminacyError(f"p_{n}^(0) vanishes at this point", denominator=f"p_{n}^(0)")
    Q, P, h_tilde = [], [], []
    for i in range(1, pt.N + 1):
        si = pt.s[i - 1]
        Q.append([-si * pt.p[i - 1][n - 1] / p0[n] for n in range(1, pt.L)])
        P.append([pt.q[i - 1][n - 1] * p0[n] / si for n in range(1, pt.L)])
        shift = sum((pt.q[i - 1][k] * pt.p[i - 1][k] for k in range(pt.L - 1)), 0)
        h_tilde.append(hamiltonian(params, pt, i, check=check) - shift / si)
    return GarnierPoint(pt.s, Q, P, tuple(h_tilde))


def garnier_inverse(params: ParameterSet, s: Sequence[Any], Q: Sequence[Sequence[Any]], P: Sequence[Sequence[Any]]) -> PhasePoint:
    """(Q, P) back to (q, p) through p_n^{(0)} = κ_n + Σ_i Q_n^{(i)}P_n^{(i)}"""
    N, width = len(s), len(Q[0])
    p0 = [params.kappa[n] + sum((Q[i][n - 1] * P[i][n - 1] for i in range(N)), 0) for n in range(1, width + 1)]
    for n, value in enumerate(p0, start=1):
        if is_zero(value):
            raise IndeterminacyError(f"p_{n}^(0) vanishes at this point", denominator=f"p_{n}^(0)")
    q = [[s[i] * P[i][n] / p0[n] for n in range(width)] for i in range(N)]
    p = [[-Q[i][n] * p0[n] / s[i] for n in range(width)] for i in range(N)]
    return PhasePoint(tuple(s), q, p)


def garnier_parameters(params: ParameterSet) -> Dict[str, Any]:
    """θ_{N+1}, θ_{N+2} and κ_1 of the Garnier system for L = 2"""
    if params.L != 2:
        raise ConfigError(f"the Garnier dictionary is defined for L = 2, got L = {params.L}")
    e0 = params.e[0]
    kappa0, kappa1 = params.kappa
    theta_a = kappa1 - kappa0 + 2 * e0 - Fraction(1, 2)
    theta_b = -2 * e0 - Fraction(1, 2)
    kappa_g = (sum(params.theta, 0) + theta_a + theta_b + 1) / 2
    return {"theta_N+1": theta_a, "theta_N+2": theta_b, "kappa_1": kappa_g}


def garnier_target(params: ParameterSet, s: Sequence[Any], Q: Sequence[Any], P: Sequence[Any], i: int) -> Any:
    """s_i(s_i−1)H̃_i of the standard Garnier Hamiltonian, up to a function of s"""
    dictionary = garnier_parameters(params)
    kappa1 = dictionary["kappa_1"]
    theta = params.theta
    N = len(s)
    k = i - 1
    si, qi, pi = s[k], Q[k], P[k]
    qp_sum = sum((Q[j] * P[j] for j in range(N)), 0)

    def R(a: int, b: int) -> Any:
        return s[a] * (s[b] - 1) / (s[b] - s[a])

    def S(a: int, b: int) -> Any:
        return s[a] * (s[a] - 1) / (s[a] - s[b])

    own = qi * pi + theta[i]
    total = qi * (kappa1 + qp_sum) * (kappa1 - theta[0] + qp_sum) + si * pi * own
    for j in range(N):
        if j == k:
            continue
        other = Q[j] * P[j] + theta[j + 1]
        total = total - R(j, k) * other * qi * P[j]
        total = total - S(k, j) * own * Q[j] * pi
        total = total - R(k, j) * Q[j] * P[j] * own
        total = total - R(k, j) * qi * pi * other
    total = total - (si + 1) * own * qi * pi
    total = total - (dictionary["theta_N+2"] * si + dictionary["theta_N+1"] + 1) * qi * pi
    return total


def garnier_compare(params: ParameterSet, s: Sequence[Any]) -> List[IdentityReport]:
    """Differences from the Garnier Hamiltonian are (Q, P)-free, for L = 2 at the given times

    Q, P are ring variables, so each partial is certified as a polynomial identity.
    """
    if params.L != 2:
        raise ConfigError(f"garnier comparison needs L = 2, got L = {params.L}")
    N = params.N
    if len(s) != N:
        raise ConfigError(f"expected {N} times, got {len(s)}")
    start = time.perf_counter()
    xs = variables(2 * N)
    Q = [[xs[i]] for i in range(N)]
    P = [[xs[N + i]] for i in range(N)]
    pt = garnier_inverse(params, s, Q, P)
    pt.check_regular()
    reports = []
    product_residual = sum(
        (Q[i][0] * P[i][0] + pt.q[i][0] * pt.p[i][0] for i in range(N)), RationalFunction.constant(0, 2 * N)
    )
    reports.append(make_report("garnier.product", {"N": N}, product_residual, start))
    flatQ = [row[0] for row in Q]
    flatP = [row[0] for row in P]
    for i in range(1, N + 1):
        start = time.perf_counter()
        si = s[i - 1]
        shift = pt.q[i - 1][0] * pt.p[i - 1][0]
        h_tilde = hamiltonian(params, pt, i, check=False) - shift / si
        difference = h_tilde * (si * (si - 1)) - garnier_target(params, s, flatQ, flatP, i)
        if not isinstance(difference, RationalFunction):
            difference = RationalFunction.from_poly(difference)
        for index in range(2 * N):
            sub = time.perf_counter() if index else start
            name = f"Q{index + 1}" if index < N else f"P{index - N + 1}"
            residual = difference.derivative(index)
            reports.append(make_report("garnier.hamiltonian", {"i": i, "variable": name}, residual, sub))
    logger.debug(f"garnier comparison for N = {N} at s = {[str(v) for v in s]} done")
    return reports
