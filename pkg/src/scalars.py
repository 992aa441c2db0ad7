"""
Scalar helpers shared by the exact and float code paths

How this file ties into the app:
- `models.py` parses every "p/q" config string through `parse_rational`
- `hamiltonian.py`, `symmetry.py` and `lax.py` accept Fractions, floats, complex
  numbers or ring elements and ask `is_zero` before dividing
- `mode_of` keeps exact and float values from being mixed silently
"""

import random
from fractions import Fraction
from typing import Any, Iterable, List, Sequence

from errors import ConfigError
from laurent import LaurentPoly, RationalFunction

EXACT = "exact"
FLOAT = "float"

# rationals with pairwise distinct denominators keep σ denominators generic
GENERIC_POOL = [
    Fraction(1, 2), Fraction(1, 3), Fraction(2, 5), Fraction(3, 7),
    Fraction(5, 11), Fraction(7, 13), Fraction(-4, 17), Fraction(-2, 19),
]


def parse_rational(value: Any) -> Fraction:
    """Parse "p/q", an integer or a decimal string into a Fraction"""
    if isinstance(value, bool):
        raise ConfigError(f"boolean {value!r} is not a rational number")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        # floats are taken at their shortest decimal form, not their binary value
        return Fraction(repr(value))
    try:
        return Fraction(str(value).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"cannot parse {value!r} as a rational number", value=str(value)) from e


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def is_exact(value: Any) -> bool:
    return isinstance(value, (int, Fraction, LaurentPoly, RationalFunction)) and not isinstance(value, bool)


def mode_of(values: Iterable[Any]) -> str:
    """EXACT when every value is exact, FLOAT when none is; mixing raises"""
    kinds = {EXACT if is_exact(v) else FLOAT for v in values}
    if len(kinds) > 1:
        raise ConfigError("exact and float values mixed in one phase point")
    return kinds.pop() if kinds else EXACT


def is_zero(value: Any) -> bool:
    if isinstance(value, (LaurentPoly, RationalFunction)):
        return value.is_zero()
    return value == 0


def to_float(value: Any) -> float:
    return float(value)


def random_rational(rng: random.Random, low: int = -3, high: int = 3, max_den: int = 7) -> Fraction:
    """Random rational with a small denominator, never zero"""
    while True:
        value = Fraction(rng.randint(low * max_den, high * max_den), rng.randint(1, max_den))
        if value:
            return value


def generic_theta(count: int, offset: int = 0) -> List[Fraction]:
    return [GENERIC_POOL[(offset + k) % len(GENERIC_POOL)] for k in range(count)]


def as_fractions(values: Sequence[Any]) -> List[Fraction]:
    return [parse_rational(v) for v in values]
