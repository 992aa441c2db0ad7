"""
Exact Laurent polynomials and rational functions
Sparse multivariate algebra over Fraction coefficients

The character grid, the G-system variables, the canonical variables and the
Lax matrices all live in this ring:
- `LaurentPoly`: map from exponent vectors (negative entries allowed) to Fraction
- `RationalFunction`: a Laurent numerator over a factored denominator
- `derivative`, `hirota`, `euler_apply`, `determinant`

How this file ties into the app:
- `characters.py` builds σ-grid entries as `LaurentPoly`
- `gvars.py`, `solutions.py`, `lax.py` and `symmetry.py` divide them into `RationalFunction`
- `identities.py` reports every residual as a `LaurentPoly` that must be zero

Denominators are kept as products of "atoms": primitive polynomials with no
monomial factor and a positive leading coefficient. Sums take the least
common multiple of the atom multisets, so no multivariate gcd is needed.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

Exponent = Tuple[int, ...]
Scalar = Union[int, Fraction]

_SCALARS = (int, Fraction)


def _add_exp(a: Exponent, b: Exponent) -> Exponent:
    return tuple(x + y for x, y in zip(a, b))


class LaurentPoly:
    """Immutable sparse Laurent polynomial in `nvars` variables"""

    __slots__ = ("_terms", "nvars", "_hash")

    def __init__(self, terms: Optional[Mapping[Sequence[int], Scalar]] = None, nvars: int = 1):
        clean: Dict[Exponent, Fraction] = {}
        for exp, coef in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars:
                raise ValueError(f"exponent {exp} does not have {nvars} entries")
            value = clean.get(exp, Fraction(0)) + Fraction(coef)
            if value:
                clean[exp] = value
            else:
                clean.pop(exp, None)
        self._terms = clean
        self.nvars = nvars
        self._hash: Optional[int] = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Fraction], nvars: int) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.nvars = nvars
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls._raw({}, nvars)

    @classmethod
    def constant(cls, value: Scalar, nvars: int) -> "LaurentPoly":
        value = Fraction(value)
        return cls._raw({(0,) * nvars: value} if value else {}, nvars)

    @classmethod
    def variable(cls, index: int, nvars: int, power: int = 1) -> "LaurentPoly":
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} outside 0..{nvars - 1}")
        exp = [0] * nvars
        exp[index] = power
        return cls._raw({tuple(exp): Fraction(1)}, nvars)

    @classmethod
    def monomial(cls, exponent: Sequence[int], coef: Scalar = 1) -> "LaurentPoly":
        return cls({tuple(exponent): coef}, len(exponent))

    # -- inspection -----------------------------------------------------
    def terms(self) -> List[Tuple[Exponent, Fraction]]:
        """Terms in canonical (sorted by exponent vector) order"""
        return sorted(self._terms.items())

    def __iter__(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(self.terms())

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and (0,) * self.nvars in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def coefficient(self, exponent: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(exponent), Fraction(0))

    def min_exponents(self) -> Exponent:
        return tuple(min(e[k] for e in self._terms) for k in range(self.nvars))

    def degrees(self) -> set:
        """Set of total degrees occurring (a homogeneous polynomial has one)"""
        return {sum(e) for e in self._terms}

    def leading(self) -> Tuple[Exponent, Fraction]:
        exp = max(self._terms)
        return exp, self._terms[exp]

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other: Any) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            if other.nvars != self.nvars:
                raise ValueError(f"ring mismatch: {self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            return LaurentPoly.constant(other, self.nvars)
        return None

    def __add__(self, other: Any) -> "LaurentPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._terms)
        for exp, coef in other._terms.items():
            value = terms.get(exp, 0) + coef
            if value:
                terms[exp] = value
            else:
                terms.pop(exp, None)
        return LaurentPoly._raw(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self._terms.items()}, self.nvars)

    def __sub__(self, other: Any) -> "LaurentPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "LaurentPoly":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Any) -> "LaurentPoly":
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            if not other:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly._raw({e: c * other for e, c in self._terms.items()}, self.nvars)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                exp = _add_exp(e1, e2)
                value = terms.get(exp, 0) + c1 * c2
                if value:
                    terms[exp] = value
                else:
                    terms.pop(exp, None)
        return LaurentPoly._raw(terms, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.is_monomial():
                raise ValueError("negative powers exist only for monomials; use RationalFunction")
            (exp, coef), = self._terms.items()
            return LaurentPoly._raw({tuple(k * e for e in exp): Fraction(1) / coef ** (-k)}, self.nvars)
        result = LaurentPoly.constant(1, self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, other: Any) -> Union["LaurentPoly", "RationalFunction"]:
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("division of a Laurent polynomial by zero")
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, LaurentPoly):
            if other.is_monomial():
                return self * other ** -1
            return RationalFunction.from_poly(self) / other
        return NotImplemented

    def __rtruediv__(self, other: Any) -> "RationalFunction":
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            return RationalFunction.from_poly(LaurentPoly.constant(other, self.nvars)) / self
        return NotImplemented

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, LaurentPoly):
            return self.nvars == other.nvars and self._terms == other._terms
        if isinstance(other, _SCALARS):
            return self._terms == LaurentPoly.constant(other, self.nvars)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and evaluation -----------------------------------------
    def derivative(self, index: int) -> "LaurentPoly":
        terms: Dict[Exponent, Fraction] = {}
        for exp, coef in self._terms.items():
            k = exp[index]
            if k:
                new = list(exp)
                new[index] = k - 1
                terms[tuple(new)] = coef * k
        return LaurentPoly._raw(terms, self.nvars)

    def euler(self) -> "LaurentPoly":
        terms = {e: c * sum(e) for e, c in self._terms.items() if sum(e)}
        return LaurentPoly._raw(terms, self.nvars)

    def extended(self, nvars: int) -> "LaurentPoly":
        """The same polynomial in a ring with trailing extra variables"""
        if nvars < self.nvars:
            raise ValueError(f"cannot shrink a ring of {self.nvars} variables to {nvars}")
        pad = (0,) * (nvars - self.nvars)
        return LaurentPoly._raw({e + pad: c for e, c in self._terms.items()}, nvars)

    def substitute(self, index: int, value: Scalar) -> "LaurentPoly":
        """Set variable `index` to an exact constant; the ring keeps its size"""
        value = Fraction(value)
        terms: Dict[Exponent, Fraction] = {}
        for exp, coef in self._terms.items():
            k = exp[index]
            if k < 0 and not value:
                raise ZeroDivisionError(f"t{index} = 0 in a term with negative exponent")
            new = list(exp)
            new[index] = 0
            new = tuple(new)
            v = terms.get(new, 0) + coef * value ** k
            if v:
                terms[new] = v
            else:
                terms.pop(new, None)
        return LaurentPoly._raw(terms, self.nvars)

    def evaluate(self, point: Sequence[Any]) -> Any:
        """Evaluate at a point; entries may be Fraction, float, complex or ring elements"""
        if len(point) != self.nvars:
            raise ValueError(f"point needs {self.nvars} coordinates")
        total: Any = 0
        for exp, coef in self._terms.items():
            term: Any = coef
            for x, k in zip(point, exp):
                if k:
                    term = term * x ** k
            total = total + term
        return total

    # -- text form ------------------------------------------------------
    def to_text(self, names: Optional[Sequence[str]] = None) -> str:
        if not self._terms:
            return "0"
        names = names or [f"t{i}" for i in range(self.nvars)]
        parts = []
        for exp, coef in self.terms():
            factors = [str(coef)]
            for name, k in zip(names, exp):
                if k == 1:
                    factors.append(name)
                elif k:
                    factors.append(f"{name}^{k}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    @classmethod
    def from_text(cls, text: str, nvars: int, names: Optional[Sequence[str]] = None) -> "LaurentPoly":
        names = list(names or [f"t{i}" for i in range(nvars)])
        text = text.strip()
        if text == "0":
            return cls.zero(nvars)
        terms: Dict[Exponent, Fraction] = {}
        for part in text.split(" + "):
            factors = part.strip().split("*")
            coef = Fraction(factors[0])
            exp = [0] * nvars
            for factor in factors[1:]:
                match = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)(?:\^(-?\d+))?", factor)
                if not match or match.group(1) not in names:
                    raise ValueError(f"cannot parse factor {factor!r}")
                exp[names.index(match.group(1))] += int(match.group(2) or 1)
            terms[tuple(exp)] = terms.get(tuple(exp), 0) + coef
        return cls(terms, nvars)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r}, nvars={self.nvars})"


# ---------------------------------------------------------------------------
# polynomial helpers used by the rational-function layer
# ---------------------------------------------------------------------------

def split_atom(poly: LaurentPoly) -> Tuple[LaurentPoly, Optional[LaurentPoly]]:
    """Write `poly` as unit * atom with unit a monomial, atom None when poly is a monomial"""
    if poly.is_zero():
        raise ZeroDivisionError("the zero polynomial has no atom decomposition")
    if poly.is_monomial():
        return poly, None
    mins = poly.min_exponents()
    shifted = {tuple(a - m for a, m in zip(e, mins)): c for e, c in poly._terms.items()}
    den = lcm(*(c.denominator for c in shifted.values()))
    content = Fraction(gcd(*(int(c * den) for c in shifted.values())), den)
    if shifted[max(shifted)] < 0:
        content = -content
    atom = LaurentPoly._raw({e: c / content for e, c in shifted.items()}, poly.nvars)
    return LaurentPoly._raw({mins: content}, poly.nvars), atom


def divide_exact(poly: LaurentPoly, atom: LaurentPoly) -> Optional[LaurentPoly]:
    """Quotient poly/atom when the division is exact, otherwise None

    `atom` has no monomial factor, so divisibility in the Laurent ring equals
    divisibility of the polynomial parts. Division by a single polynomial
    fails exactly when a leading term stops being divisible.
    """
    if poly.is_zero():
        return poly
    lead_exp, lead_coef = atom.leading()
    low = poly.min_exponents()
    high = tuple(
        max(e[k] for e in poly._terms) - max(e[k] for e in atom._terms) for k in range(poly.nvars)
    )
    remainder = dict(poly._terms)
    quotient: Dict[Exponent, Fraction] = {}
    while remainder:
        exp = max(remainder)
        shift = tuple(a - b for a, b in zip(exp, lead_exp))
        coef = remainder[exp] / lead_coef
        # quotient exponents stay inside the box spanned by poly and atom degrees
        if any(s < a or s > b for s, a, b in zip(shift, low, high)):
            return None
        quotient[shift] = quotient.get(shift, 0) + coef
        for e, c in atom._terms.items():
            key = _add_exp(e, shift)
            value = remainder.get(key, 0) - coef * c
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)
    return LaurentPoly._raw({e: c for e, c in quotient.items() if c}, poly.nvars)


def _merge(a: Mapping[LaurentPoly, int], b: Mapping[LaurentPoly, int], sign: int = 1) -> Dict[LaurentPoly, int]:
    out = dict(a)
    for atom, k in b.items():
        out[atom] = out.get(atom, 0) + sign * k
    return {atom: k for atom, k in out.items() if k}


def _product(factors: Mapping[LaurentPoly, int], nvars: int, skip: Optional[Mapping[LaurentPoly, int]] = None) -> LaurentPoly:
    result = LaurentPoly.constant(1, nvars)
    for atom, k in factors.items():
        k -= (skip or {}).get(atom, 0)
        if k > 0:
            result = result * atom ** k
    return result


class RationalFunction:
    """coef * Π num[a]^k / Π den[a]^k with atoms a normalized by `split_atom`"""

    __slots__ = ("coef", "num", "den", "nvars")
    __hash__ = None  # type: ignore[assignment]

    def __init__(self, numerator: LaurentPoly, denominator: Optional[LaurentPoly] = None):
        value = RationalFunction.from_poly(numerator)
        if denominator is not None:
            value = value / denominator
        self.coef, self.num, self.den, self.nvars = value.coef, value.num, value.den, value.nvars

    @classmethod
    def _build(cls, coef: LaurentPoly, num: Dict[LaurentPoly, int], den: Dict[LaurentPoly, int]) -> "RationalFunction":
        """Normalize so that `coef` is a monomial and common atoms cancel

        A non-monomial `coef` is split into unit * atom; the atom is trial
        divided by the denominator atoms and whatever is left joins `num`.
        """
        obj = cls.__new__(cls)
        if coef.is_zero():
            num, den = {}, {}
        elif not coef.is_monomial():
            num, den = dict(num), dict(den)
            coef, atom = split_atom(coef)
            for d in list(den):
                while atom is not None and den[d]:
                    quotient = divide_exact(atom, d)
                    if quotient is None:
                        break
                    den[d] -= 1
                    unit, atom = split_atom(quotient)
                    coef = coef * unit
            if atom is not None:
                num[atom] = num.get(atom, 0) + 1
            den = {a: k for a, k in den.items() if k}
        common = [a for a in num if a in den]
        if common:
            num, den = dict(num), dict(den)
            for atom in common:
                k = min(num[atom], den[atom])
                num[atom] -= k
                den[atom] -= k
            num = {a: k for a, k in num.items() if k}
            den = {a: k for a, k in den.items() if k}
        obj.coef, obj.num, obj.den, obj.nvars = coef, num, den, coef.nvars
        return obj

    @classmethod
    def from_poly(cls, poly: LaurentPoly) -> "RationalFunction":
        return cls._build(poly, {}, {})

    @classmethod
    def constant(cls, value: Scalar, nvars: int) -> "RationalFunction":
        return cls.from_poly(LaurentPoly.constant(value, nvars))

    # -- inspection -----------------------------------------------------
    def is_zero(self) -> bool:
        return self.coef.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def numerator(self) -> LaurentPoly:
        """Expanded numerator; zero exactly when the function is zero"""
        return self.coef * _product(self.num, self.nvars)

    def denominator(self) -> LaurentPoly:
        return _product(self.den, self.nvars)

    def as_poly(self) -> LaurentPoly:
        if self.den:
            raise ValueError("rational function has a non-trivial denominator")
        return self.numerator()

    # -- arithmetic -----------------------------------------------------
    def _coerce(self, other: Any) -> Optional["RationalFunction"]:
        if isinstance(other, RationalFunction):
            if other.nvars != self.nvars:
                raise ValueError(f"ring mismatch: {self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, LaurentPoly):
            return RationalFunction.from_poly(other) if other.nvars == self.nvars else None
        if isinstance(other, _SCALARS) and not isinstance(other, bool):
            return RationalFunction.constant(other, self.nvars)
        return None

    def __add__(self, other: Any) -> "RationalFunction":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        common = {a: min(k, other.num[a]) for a, k in self.num.items() if a in other.num}
        den = dict(self.den)
        for atom, k in other.den.items():
            den[atom] = max(den.get(atom, 0), k)
        first = self.coef * _product(self.num, self.nvars, common) * _product(den, self.nvars, self.den)
        second = other.coef * _product(other.num, self.nvars, common) * _product(den, self.nvars, other.den)
        total = first + second
        return RationalFunction._build(total, common, den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction._build(-self.coef, self.num, self.den)

    def __sub__(self, other: Any) -> "RationalFunction":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Any) -> "RationalFunction":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other: Any) -> "RationalFunction":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return RationalFunction.constant(0, self.nvars)
        return RationalFunction._build(self.coef * other.coef, _merge(self.num, other.num), _merge(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        unit, atom = split_atom(self.coef)
        den = dict(self.num)
        if atom is not None:
            den[atom] = den.get(atom, 0) + 1
        return RationalFunction._build(unit ** -1, dict(self.den), den)

    def __truediv__(self, other: Any) -> "RationalFunction":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: Any) -> "RationalFunction":
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = RationalFunction.constant(1, self.nvars)
        for _ in range(k):
            result = result * self
        return result

    def __eq__(self, other: Any) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return (self - other).is_zero()

    # -- calculus and evaluation -----------------------------------------
    def derivative(self, index: int) -> "RationalFunction":
        """Quotient rule over the factored denominator"""
        top = self.numerator()
        atoms = list(self.den.items())
        base = _product({a: 1 for a, _ in atoms}, self.nvars)
        result = top.derivative(index) * base
        for pos, (atom, k) in enumerate(atoms):
            others = _product({a: 1 for a, _ in atoms[:pos] + atoms[pos + 1:]}, self.nvars)
            result = result - top * atom.derivative(index) * others * k
        den = {a: k + 1 for a, k in atoms}
        return RationalFunction._build(result, {}, den)

    def extended(self, nvars: int) -> "RationalFunction":
        obj = RationalFunction.__new__(RationalFunction)
        obj.coef = self.coef.extended(nvars)
        obj.num = {a.extended(nvars): k for a, k in self.num.items()}
        obj.den = {a.extended(nvars): k for a, k in self.den.items()}
        obj.nvars = nvars
        return obj

    def substitute(self, index: int, value: Scalar) -> "RationalFunction":
        result = RationalFunction.from_poly(self.coef.substitute(index, value))
        for atom, k in self.num.items():
            result = result * RationalFunction.from_poly(atom.substitute(index, value)) ** k
        for atom, k in self.den.items():
            sub = atom.substitute(index, value)
            if sub.is_zero():
                raise ZeroDivisionError(f"denominator factor {atom} vanishes at t{index} = {value}")
            result = result / sub ** k
        return result

    def evaluate(self, point: Sequence[Any]) -> Any:
        value = self.coef.evaluate(point)
        for atom, k in self.num.items():
            value = value * atom.evaluate(point) ** k
        denominator: Any = 1
        for atom, k in self.den.items():
            denominator = denominator * atom.evaluate(point) ** k
        if denominator == 0:
            raise ZeroDivisionError("rational function evaluated on a pole")
        return value / denominator

    def to_text(self, names: Optional[Sequence[str]] = None) -> str:
        top = self.numerator().to_text(names)
        if not self.den:
            return top
        return f"({top})/({self.denominator().to_text(names)})"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"RationalFunction({self.to_text()!r})"


Ring = Union[LaurentPoly, RationalFunction]


def derivative(f: Ring, index: int) -> Ring:
    return f.derivative(index)


def hirota(index: int, f: Ring, g: Ring) -> Ring:
    """Hirota derivative D_i f·g = ∂_i f · g − f · ∂_i g"""
    return f.derivative(index) * g - f * g.derivative(index)


def euler_apply(f: Ring) -> Ring:
    """Σ_i t_i ∂f/∂t_i"""
    if isinstance(f, LaurentPoly):
        return f.euler()
    total: Ring = RationalFunction.constant(0, f.nvars)
    for i in range(f.nvars):
        total = total + LaurentPoly.variable(i, f.nvars) * f.derivative(i)
    return total


def determinant(rows: Sequence[Sequence[Any]], one: Any = 1) -> Any:
    """Leibniz expansion row by row, memoized over the set of used columns"""
    n = len(rows)
    if n == 0:
        return one
    partial: Dict[int, Any] = {0: one}
    for r in range(n):
        following: Dict[int, Any] = {}
        for mask, value in partial.items():
            for c in range(n):
                if mask >> c & 1:
                    continue
                entry = rows[r][c]
                if isinstance(entry, (LaurentPoly, RationalFunction)):
                    if entry.is_zero():
                        continue
                elif entry == 0:
                    continue
                inversions = bin(mask >> (c + 1)).count("1")
                term = value * entry
                if inversions % 2:
                    term = -term
                key = mask | 1 << c
                following[key] = following[key] + term if key in following else term
        partial = following
    full = (1 << n) - 1
    if full in partial:
        return partial[full]
    return one * 0


def variables(nvars: int) -> List[LaurentPoly]:
    return [LaurentPoly.variable(i, nvars) for i in range(nvars)]
