"""
Birational canonical transformations of the Hamiltonian system

Generators (token form in brackets):
- r_n [rN], r′_n [rN'] for n = 0..L−1: the two commuting affine Weyl group actions
- π [pi], ρ [rho]: rotation and interchange of the two Dynkin diagrams
- η_i [etaI]: θ_i → θ_i − 1 combined with a shift of the root variables
- ζ_{ij} [zetaIJ]: permutation of the poles u_i = 1/s_i, u_j = 1/s_j
- ι [iota]: θ → −θ
- φ [phi]: the extra involution available when N = 1

A word "r1,pi" composes as automorphisms, (r_1π)(x) = r_1(π(x)): on points
the substitution of r_1 is applied first, then the one of π.

How this file ties into the app:
- `commands/symmetry.py` parses the configured words and runs every check here
- `solutions.py` certifies transported rational solutions via `chain_flow_residual`
"""

import random
import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from characters import ParameterSet
from dependencies import logger
from errors import ConfigError, IndeterminacyError
from hamiltonian import ExtendedPhaseView, PhasePoint, random_parameters, random_point
from identities import IdentityReport, make_report
from scalars import is_zero
from solutions import chain_flow_residual

KINDS = ("r", "r'", "pi", "rho", "eta", "zeta", "iota", "phi")
CANONICITY_TOLERANCE = 1e-8
COMPLEX_STEP = 1e-20

_TOKEN = re.compile(r"^(?:(r)(\d+)(')?|(pi|rho|iota|phi)|(eta)(\d+)|(zeta)(\d+)(?:_(\d+))?)$")


@dataclass(frozen=True)
class Generator:
    kind: str
    indices: Tuple[int, ...] = ()

    @property
    def token(self) -> str:
        if self.kind == "r'":
            return f"r{self.indices[0]}'"
        if self.kind == "zeta":
            i, j = self.indices
            return f"zeta{i}{j}" if max(i, j) < 10 else f"zeta{i}_{j}"
        return self.kind + "".join(str(k) for k in self.indices)

    def validate(self, L: int, N: int) -> "Generator":
        if self.kind in ("r", "r'") and not 0 <= self.indices[0] < L:
            raise ConfigError(f"{self.token}: index outside 0..{L - 1}")
        if self.kind == "eta" and not 0 <= self.indices[0] <= N:
            raise ConfigError(f"{self.token}: index outside 0..{N}")
        if self.kind == "zeta":
            i, j = self.indices
            if i == j or not (0 <= i <= N and 0 <= j <= N):
                raise ConfigError(f"{self.token}: needs two distinct indices in 0..{N}")
        if self.kind == "phi" and N != 1:
            raise ConfigError(f"phi is only a symmetry for N = 1, got N = {N}")
        return self

    def __str__(self) -> str:
        return self.token


def parse_generator(token: str, L: int, N: int) -> Generator:
    match = _TOKEN.match(token.strip())
    if not match:
        raise ConfigError(f"unknown symmetry generator {token!r}", token=token)
    r, r_index, prime, plain, eta, eta_index, zeta, zeta_a, zeta_b = match.groups()
    if r:
        gen = Generator("r'" if prime else "r", (int(r_index),))
    elif plain:
        gen = Generator(plain)
    elif eta:
        gen = Generator("eta", (int(eta_index),))
    else:
        if zeta_b is not None:
            pair = (int(zeta_a), int(zeta_b))
        elif len(zeta_a) == 2:
            pair = (int(zeta_a[0]), int(zeta_a[1]))
        else:
            raise ConfigError(f"{token!r}: write zeta with two digits or as zetaI_J", token=token)
        gen = Generator("zeta", pair)
    return gen.validate(L, N)


def parse_word(text: str, L: int, N: int) -> List[Generator]:
    """Comma-separated tokens; the empty string is the identity"""
    return [parse_generator(tok, L, N) for tok in text.split(",") if tok.strip()]


def word_text(word: Sequence[Generator]) -> str:
    return ",".join(g.token for g in word)


# ---------------------------------------------------------------------------
# action on the constants
# ---------------------------------------------------------------------------

def parameter_action(gen: Generator, params: ParameterSet) -> ParameterSet:
    L, N = params.L, params.N
    e, kappa, theta = list(params.e), list(params.kappa), list(params.theta)
    E, K = params.e_ext, params.kappa_ext
    a, b = params.a_frak, params.b_frak
    kind = gen.kind
    if kind == "r":
        n = gen.indices[0]
        e[n] += a[n]
        e[(n + 1) % L] -= a[n]
        kappa[n] += a[n]
        kappa[(n + 1) % L] -= a[n]
    elif kind == "r'":
        n = gen.indices[0]
        kappa[(L - n) % L] += b[n]
        kappa[(L - n - 1) % L] -= b[n]
    elif kind == "pi":
        e = [E(n + 1) - Fraction(1, L) for n in range(L)]
        kappa = [K(n + 1) for n in range(L)]
    elif kind == "rho":
        total = sum(theta, 0)
        e = [K(L - n) - E(L - n) - total / L + 1 for n in range(L)]
        kappa = [K(L - n) for n in range(L)]
    elif kind == "eta":
        i = gen.indices[0]
        e = [E(n - 1) + Fraction(1, L) for n in range(L)]
        kappa = [K(n) - E(n) + E(n - 1) for n in range(L)]
        theta[i] -= 1
    elif kind == "zeta":
        i, j = gen.indices
        theta[i], theta[j] = theta[j], theta[i]
    elif kind == "iota":
        e = [-E(L - n) + 1 for n in range(L)]
        kappa = [-K(L - n) for n in range(L)]
        theta = [-t for t in theta]
    elif kind == "phi":
        k0 = kappa[0]
        e = [k0 - E(0) - 1] + [-E(L - n) for n in range(1, L)]
        kappa = [k0] + [-K(L - n) for n in range(1, L)]
        theta = [k0 - t for t in theta]
    else:
        raise ConfigError(f"unknown generator kind {kind!r}")
    return ParameterSet(tuple(theta), tuple(e), tuple(kappa))


def _reflect(values: Sequence[Any], n: int) -> List[Any]:
    """Simple reflection of A^{(1)}_{L−1} root variables; for L = 2 the neighbour is hit twice"""
    L = len(values)
    out = list(values)
    out[n] = -values[n]
    for m in ((n - 1) % L, (n + 1) % L):
        out[m] += values[n]
    return out


def root_action(gen: Generator, params: ParameterSet) -> Optional[Tuple[Tuple[Any, ...], Tuple[Any, ...], Tuple[Any, ...]]]:
    """(𝔞, 𝔟, θ) after the generator, from the root-variable table; None for φ"""
    L = params.L
    a, b, theta = list(params.a_frak), list(params.b_frak), list(params.theta)
    kind = gen.kind
    if kind == "r":
        a = _reflect(a, gen.indices[0])
    elif kind == "r'":
        b = _reflect(b, gen.indices[0])
    elif kind == "pi":
        a, b = [a[(n + 1) % L] for n in range(L)], [b[(n - 1) % L] for n in range(L)]
    elif kind == "rho":
        a, b = b, a
    elif kind == "eta":
        a = [a[(n - 1) % L] for n in range(L)]
        theta[gen.indices[0]] -= 1
    elif kind == "zeta":
        i, j = gen.indices
        theta[i], theta[j] = theta[j], theta[i]
    elif kind == "iota":
        # reversal pairs n with L − 1 − n
        a, b = a[::-1], b[::-1]
        theta = [-t for t in theta]
    else:
        return None
    return tuple(a), tuple(b), tuple(theta)


def check_root_table(gen: Generator, params: ParameterSet) -> Optional[IdentityReport]:
    """The e/κ action and the root-variable table agree on (𝔞, 𝔟, θ)"""
    expected = root_action(gen, params)
    if expected is None:
        return None
    start = time.perf_counter()
    image = parameter_action(gen, params)
    got = (image.a_frak, image.b_frak, image.theta)
    gap = max(abs(x - y) for want, have in zip(expected, got) for x, y in zip(want, have))
    return make_report("symmetry.root_table", {"generator": gen.token}, gap, start)


def word_parameter_action(word: Sequence[Generator], params: ParameterSet) -> ParameterSet:
    for gen in word:
        params = parameter_action(gen, params)
    return params


# ---------------------------------------------------------------------------
# action on the canonical variables
# ---------------------------------------------------------------------------

def _divide(top: Any, bottom: Any, name: str) -> Any:
    if is_zero(bottom):
        raise IndeterminacyError(f"{name} vanishes", denominator=name)
    return top / bottom


class _Image:
    """Mutable copy of (s, q, p) indexed like the extended view"""

    def __init__(self, pt: PhasePoint):
        self.s = list(pt.s)
        self.q = [list(row) for row in pt.q]
        self.p = [list(row) for row in pt.p]
        self.L = pt.L

    def set_q(self, i: int, n: int, value: Any) -> None:
        if 1 <= n < self.L:
            self.q[i - 1][n - 1] = value

    def set_p(self, i: int, n: int, value: Any) -> None:
        if 1 <= n < self.L:
            self.p[i - 1][n - 1] = value

    def point(self) -> PhasePoint:
        return PhasePoint(tuple(self.s), self.q, self.p)


def _r(V: ExtendedPhaseView, out: _Image, n: int) -> None:
    a = V.params.a_frak[n]
    N, L = V.N, V.L
    if n == 0:
        D = sum((V.q(j, 1) * V.p(j, 0) for j in range(N + 1)), 0)
        name = "a_0 + sum_j q_1^(j) p_0^(j)"
        for i in range(1, N + 1):
            q1 = V.q(i, 1)
            fq = 1 - _divide(a * (q1 - 1), a * q1 + D, f"a_0 q_1^({i}) + sum_j q_1^(j) p_0^(j)")
            fp = 1 + _divide(a * (q1 - 1), a + D, name)
            for m in range(1, L):
                out.set_q(i, m, V.q(i, m) * fq)
                out.set_p(i, m, V.p(i, m) * fp)
            out.set_p(i, 1, (V.p(i, 1) - _divide(a * V.p(i, 0), D, "sum_j q_1^(j) p_0^(j)")) * fp)
        return
    D = sum((V.q(j, n + 1) * V.p(j, n) for j in range(N + 1)), 0)
    name = f"sum_j q_{n + 1}^(j) p_{n}^(j)"
    for i in range(1, N + 1):
        out.set_q(i, n, V.q(i, n) + _divide(a * (V.q(i, n + 1) - V.q(i, n)), a + D, f"a_{n} + {name}"))
        out.set_p(i, n, V.p(i, n) * (1 + _divide(a, D, name)))
        out.set_p(i, n + 1, V.p(i, n + 1) - _divide(a * V.p(i, n), D, name))


def _r_prime(V: ExtendedPhaseView, out: _Image, n: int) -> None:
    b = V.params.b_frak[n]
    N, L = V.N, V.L
    if n == 0:
        D = sum((V.q(j, -1) * V.p(j, 0) for j in range(N + 1)), 0)
        name = "b_0 + sum_j q_-1^(j) p_0^(j)"
        for i in range(1, N + 1):
            qm = V.q(i, -1)
            fq = 1 - _divide(b * (qm - 1), b * qm + D, f"b_0 q_-1^({i}) + sum_j q_-1^(j) p_0^(j)")
            fp = 1 + _divide(b * (qm - 1), b + D, name)
            for m in range(1, L):
                out.set_q(i, m, V.q(i, m) * fq)
                out.set_p(i, m, V.p(i, m) * fp)
            tail = V.p(i, -1) - _divide(b * V.p(i, 0), D, "sum_j q_-1^(j) p_0^(j)")
            out.set_p(i, L - 1, tail * fp / V.s(i))
        return
    m = L - n
    D = sum((V.q(j, m - 1) * V.p(j, m) for j in range(N + 1)), 0)
    name = f"sum_j q_{m - 1}^(j) p_{m}^(j)"
    for i in range(1, N + 1):
        out.set_q(i, m, V.q(i, m) + _divide(b * (V.q(i, m - 1) - V.q(i, m)), b + D, f"b_{n} + {name}"))
        out.set_p(i, m, V.p(i, m) * (1 + _divide(b, D, name)))
        out.set_p(i, m - 1, V.p(i, m - 1) - _divide(b * V.p(i, m), D, name))


def _pi(V: ExtendedPhaseView, out: _Image) -> None:
    for i in range(1, V.N + 1):
        q1 = V.q(i, 1)
        for n in range(1, V.L):
            out.set_q(i, n, _divide(V.q(i, n + 1), q1, f"q_1^({i})"))
            out.set_p(i, n, V.p(i, n + 1) * q1)


def _rho(V: ExtendedPhaseView, out: _Image) -> None:
    L = V.L
    for i in range(1, V.N + 1):
        s = V.s(i)
        out.s[i - 1] = _divide(1, s, f"s_{i}")
        for n in range(1, L):
            out.set_q(i, n, V.q(i, L - n) / s)
            out.set_p(i, n, s * V.p(i, L - n))


def _eta(V: ExtendedPhaseView, out: _Image, i: int, kappa_new: Sequence[Any]) -> None:
    N, L = V.N, V.L

    def P(n: int) -> Any:
        return V.p(i, n)

    top = sum((P(-m) for m in range(1, L + 1)), 0)

    def B(j: int, n: int) -> Any:
        return sum((P(n - m) * V.q(j, n - m) for m in range(1, L + 1)), 0)

    def new_q(j: int, n: int) -> Any:
        A = sum((P(n - m) for m in range(1, L + 1)), 0)
        return _divide(top * B(j, n), A * B(j, 0), f"sum_m p_(n-m)^({i}) sums at n = {n}, j = {j}")

    def new_qp(j: int, n: int) -> Any:
        """η_i(q_n^{(j)}p_n^{(j)}) for j ≠ i"""
        si, sj = V.s(i), V.s(j)
        diff = _divide(V.p(j, n), P(n), f"p_{n}^({i})") - _divide(V.p(j, n - 1), P(n - 1), f"p_{n - 1}^({i})")
        return _divide(sj, si - sj, f"s_{i} - s_{j}") * diff * B(j, n)

    for n in range(1, L):
        qp_others = {j: new_qp(j, n) for j in range(N + 1) if j != i}
        for j in range(1, N + 1):
            q = new_q(j, n)
            out.set_q(j, n, q)
            if j == i:
                rest = kappa_new[n] - sum(qp_others.values(), 0)
            else:
                rest = qp_others[j]
            out.set_p(j, n, _divide(rest, q, f"eta_{i}(q_{n}^({j}))"))


def _zeta(V: ExtendedPhaseView, out: _Image, i: int, j: int) -> None:
    N, L = V.N, V.L
    if i and j:
        out.s[i - 1], out.s[j - 1] = out.s[j - 1], out.s[i - 1]
        out.q[i - 1], out.q[j - 1] = out.q[j - 1], out.q[i - 1]
        out.p[i - 1], out.p[j - 1] = out.p[j - 1], out.p[i - 1]
        return
    i = i or j
    si = V.s(i)
    for k in range(1, N + 1):
        out.s[k - 1] = _divide(1, si, f"s_{i}") if k == i else _divide(V.s(k), si, f"s_{i}")
    for n in range(1, L):
        qi = V.q(i, n)
        for k in range(1, N + 1):
            if k == i:
                out.set_q(k, n, _divide(1, qi, f"q_{n}^({i})"))
                out.set_p(k, n, qi * V.p(0, n))
            else:
                out.set_q(k, n, _divide(V.q(k, n), qi, f"q_{n}^({i})"))
                out.set_p(k, n, qi * V.p(k, n))


def _iota(V: ExtendedPhaseView, out: _Image) -> None:
    L = V.L
    p00 = V.p(0, 0)
    for i in range(1, V.N + 1):
        s, pi0 = V.s(i), V.p(i, 0)
        for n in range(1, L):
            p0 = V.p(0, L - n)
            out.set_q(i, n, _divide(s * V.p(i, L - n) * p00, p0 * pi0, f"p_{L - n}^(0) p_0^({i})"))
            out.set_p(i, n, -_divide(V.q(i, L - n) * pi0 * p0, s * p00, "s p_0^(0)"))


def _phi(V: ExtendedPhaseView, out: _Image) -> None:
    L, s = V.L, V.s(1)
    for n in range(1, L):
        q, p = V.q(1, L - n), V.p(1, L - n)
        k = V.params.kappa_ext(L - n)
        out.set_q(1, n, _divide(s * p, q * p - k, f"q_{L - n} p_{L - n} - kappa_{L - n}"))
        out.set_p(1, n, q * (k - q * p) / s)


def apply(gen: Generator, params: ParameterSet, pt: PhasePoint) -> Tuple[ParameterSet, PhasePoint]:
    """Image of (constants, point); IndeterminacyError on a vanishing denominator"""
    gen.validate(params.L, params.N)
    V = ExtendedPhaseView(params, pt)
    out = _Image(pt)
    new_params = parameter_action(gen, params)
    kind = gen.kind
    if kind == "r":
        _r(V, out, gen.indices[0])
    elif kind == "r'":
        _r_prime(V, out, gen.indices[0])
    elif kind == "pi":
        _pi(V, out)
    elif kind == "rho":
        _rho(V, out)
    elif kind == "eta":
        _eta(V, out, gen.indices[0], new_params.kappa)
    elif kind == "zeta":
        _zeta(V, out, *gen.indices)
    elif kind == "iota":
        _iota(V, out)
    elif kind == "phi":
        _phi(V, out)
    return new_params, out.point()


def apply_word(word: Sequence[Generator], params: ParameterSet, pt: PhasePoint) -> Tuple[ParameterSet, PhasePoint]:
    for gen in word:
        params, pt = apply(gen, params, pt)
    return params, pt


# ---------------------------------------------------------------------------
# relations
# ---------------------------------------------------------------------------

def _gap(first: Tuple[ParameterSet, PhasePoint], second: Tuple[ParameterSet, PhasePoint]) -> Any:
    (pa, xa), (pb, xb) = first, second
    left = list(pa.theta) + list(pa.e) + list(pa.kappa) + xa.values()
    right = list(pb.theta) + list(pb.e) + list(pb.kappa) + xb.values()
    return max(abs(x - y) for x, y in zip(left, right))


def relation_words(L: int, N: int) -> List[Tuple[str, str, str]]:
    """(name, left word, right word) with both words meant to act identically"""
    rel: List[Tuple[str, str, str]] = []
    for n in range(L):
        m = (n + 1) % L
        rel.append(("r^2", f"r{n},r{n}", ""))
        rel.append(("r'^2", f"r{n}',r{n}'", ""))
        if L >= 3:
            rel.append(("(r r)^3", ",".join([f"r{n},r{m}"] * 3), ""))
            rel.append(("(r' r')^3", ",".join([f"r{n}',r{m}'"] * 3), ""))
        rel.append(("pi r", f"pi,r{n}", f"r{m},pi"))
        rel.append(("pi r'", f"pi,r{n}'", f"r{(n - 1) % L}',pi"))
        rel.append(("rho r", f"rho,r{n}", f"r{n}',rho"))
        for k in range(L):
            rel.append(("r r'", f"r{k},r{n}'", f"r{n}',r{k}"))
    rel.append(("pi^L", ",".join(["pi"] * L), ""))
    rel.append(("rho^2", "rho,rho", ""))
    rel.append(("iota^2", "iota,iota", ""))
    for i in range(N + 1):
        for j in range(i + 1, N + 1):
            rel.append(("zeta^2", f"zeta{i}_{j},zeta{i}_{j}", ""))
    if N == 1:
        rel.append(("phi^2", "phi,phi", ""))
    return rel


def _random_pair(rng: random.Random, L: int, N: int) -> Tuple[ParameterSet, PhasePoint]:
    return random_parameters(rng, L, N), random_point(rng, L, N, exact=True)


def check_relations(L: int, N: int, trials: int = 20, rng: Optional[random.Random] = None,
                    max_attempts: int = 10) -> List[IdentityReport]:
    """Each relation at `trials` random exact points; indeterminate draws are redrawn"""
    rng = rng or random.Random(0)
    reports = []
    for name, left, right in relation_words(L, N):
        lw, rw = parse_word(left, L, N), parse_word(right, L, N)
        start = time.perf_counter()
        worst: Any = Fraction(0)
        done = skipped = 0
        while done < trials and skipped < max_attempts * trials:
            params, pt = _random_pair(rng, L, N)
            try:
                gap = _gap(apply_word(lw, params, pt), apply_word(rw, params, pt))
            except (IndeterminacyError, ZeroDivisionError):
                skipped += 1
                continue
            worst = max(worst, gap)
            done += 1
        detail = f"{done} points, {skipped} indeterminate draws skipped"
        if done < trials:
            # a relation evaluated at fewer points than asked for is not certified
            worst = float("inf")
            detail = f"only {done} of {trials} points evaluated, {skipped} indeterminate draws skipped"
            logger.warning(f"relation {left} = {right or 'id'}: {detail}")
        reports.append(make_report("symmetry.relation", {"relation": name, "left": left, "right": right or "id"},
                                   worst, start, detail=detail))
    logger.info(f"checked {len(reports)} relations for L = {L}, N = {N}")
    return reports


# ---------------------------------------------------------------------------
# canonicity and solution transport
# ---------------------------------------------------------------------------

def _phase_map(gen: Generator, params: ParameterSet, s: Sequence[Any], L: int) -> Callable[[Sequence[Any]], List[Any]]:
    def mapped(flat: Sequence[Any]) -> List[Any]:
        pt = PhasePoint.from_flat(tuple(complex(v) for v in s), [complex(v) for v in flat], L)
        return apply(gen, params, pt)[1].flat()

    return mapped


def jacobian(gen: Generator, params: ParameterSet, pt: PhasePoint, step: float = COMPLEX_STEP) -> np.ndarray:
    """Complex-step Jacobian of (q, p) → (q′, p′) at a real float point"""
    mapped = _phase_map(gen, params, pt.s, pt.L)
    base = np.asarray([float(v) for v in pt.flat()])
    size = base.size
    J = np.zeros((size, size))
    for k in range(size):
        perturbed = base.astype(complex)
        perturbed[k] += 1j * step
        J[:, k] = np.imag(np.asarray(mapped(perturbed))) / step
    return J


def symplectic_defect(J: np.ndarray) -> float:
    half = J.shape[0] // 2
    omega = np.block([[np.zeros((half, half)), np.eye(half)], [-np.eye(half), np.zeros((half, half))]])
    return float(np.max(np.abs(J.T @ omega @ J - omega)))


def check_canonicity(gen: Generator, params: ParameterSet, pt: PhasePoint,
                     tolerance: float = CANONICITY_TOLERANCE) -> IdentityReport:
    start = time.perf_counter()
    defect = symplectic_defect(jacobian(gen, params, pt))
    return make_report("symmetry.canonicity", {"generator": gen.token}, defect, start, tolerance=tolerance)


@dataclass
class TransportResult:
    word: List[Generator]
    params: ParameterSet
    point: PhasePoint
    reports: List[IdentityReport] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def to_json(self) -> Dict[str, Any]:
        return {
            "word": word_text(self.word),
            "parameters": self.params.to_json(),
            "pass": self.passed,
            "failures": [r.to_json() for r in self.reports if not r.passed],
            "checks": len(self.reports),
        }


def transport_solution(word: Sequence[Generator], sol: Any) -> TransportResult:
    """Map a rational solution by a word and certify the image against the transformed constants"""
    new_params, new_point = apply_word(word, sol.params, sol.point())
    reports = chain_flow_residual(new_params, new_point, label="symmetry.transport")
    result = TransportResult(list(word), new_params, new_point, reports)
    logger.info(f"transported solution by {word_text(word) or 'id'}: {'pass' if result.passed else 'FAIL'}")
    return result
