"""
Pydantic models for command configuration
One JSON file drives every subcommand; each command reads its own section.

These models power:
- validation before any computation starts (a bad file exits with code 2)
- `"p/q"` parsing of every rational through `scalars.parse_rational`
- the resolved config that every JSON report embeds

Example file (all sections optional except the one the command needs):

    {
      "seed": 7,
      "certify": {"grids": [{"L": 2, "N": 1, "nu": [0, 1], "nu_prime": [0, 0]}]},
      "symmetry": {"L": 3, "N": 1, "words": ["r1,r1", "pi,pi,pi"]}
    }
"""

import json
from fractions import Fraction
from typing import Annotated, Any, Dict, List, Literal, Optional

from pydantic import BaseModel, BeforeValidator, Field, PlainSerializer, model_validator

from characters import ParameterSet, SigmaGrid, SubstitutionContext, build_sigma_grid
from dependencies import settings
from errors import ConfigError
from hamiltonian import PhasePoint
from partitions import as_core_index
from scalars import EXACT, generic_theta, parse_rational

Rational = Annotated[Fraction, BeforeValidator(parse_rational), PlainSerializer(str, return_type=str)]
Mode = Literal["exact", "float"]


class _Model(BaseModel):
    model_config = {"arbitrary_types_allowed": True, "extra": "forbid"}


class GridConfig(_Model):
    """A σ-grid: core indices ν, ν′ and the constants θ_0..θ_N"""
    L: int = Field(..., ge=2, description="Size of the Maya-diagram period")
    N: int = Field(..., ge=1, description="Number of deformation times")
    nu: List[int] = Field(..., description="Core index ν (length L)")
    nu_prime: List[int] = Field(..., description="Core index ν′ (length L)")
    theta: Optional[List[Rational]] = Field(None, description="θ_0..θ_N as \"p/q\"; generic values when omitted")

    @model_validator(mode="after")
    def _lengths(self) -> "GridConfig":
        if len(self.nu) != self.L or len(self.nu_prime) != self.L:
            raise ValueError(f"nu and nu_prime need L = {self.L} entries")
        if self.theta is not None and len(self.theta) != self.N + 1:
            raise ValueError(f"theta needs N + 1 = {self.N + 1} entries")
        return self

    def resolved_theta(self) -> List[Fraction]:
        return list(self.theta) if self.theta is not None else generic_theta(self.N + 1)

    def build(self) -> SigmaGrid:
        ctx = SubstitutionContext(self.L, self.N, tuple(self.resolved_theta()))
        return build_sigma_grid(as_core_index(self.nu, self.L), as_core_index(self.nu_prime, self.L), ctx)


class ParametersConfig(_Model):
    theta: List[Rational]
    e: List[Rational]
    kappa: List[Rational]

    def build(self) -> ParameterSet:
        return ParameterSet(tuple(self.theta), tuple(self.e), tuple(self.kappa))


class PointConfig(_Model):
    """s_1..s_N and q[i][n], p[i][n] for i = 1..N, n = 1..L−1"""
    s: List[Rational]
    q: List[List[Rational]]
    p: List[List[Rational]]

    def build(self, mode: str = EXACT) -> PhasePoint:
        cast = (lambda v: v) if mode == EXACT else float
        return PhasePoint(
            tuple(cast(v) for v in self.s),
            [[cast(v) for v in row] for row in self.q],
            [[cast(v) for v in row] for row in self.p],
        )


class CertifyConfig(_Model):
    grids: List[GridConfig] = Field(..., min_length=1)
    duc: bool = Field(True, description="Run the difference equations of the shift operators")
    phase: bool = Field(True, description="Run the f/g/U/V system and the canonical-equation residual")
    lax: bool = Field(True, description="Run factorization, zero-curvature and Schlesinger residuals")
    zero_curvature_max_L: int = Field(2, ge=2, description="Skip the symbolic zero-curvature check above this L")


class IntegrateConfig(_Model):
    """Start from a rational solution (grid + t_start) or from explicit constants and point"""
    grid: Optional[GridConfig] = None
    t_start: Optional[List[Rational]] = Field(None, description="t_1..t_N of the starting point on the solution")
    parameters: Optional[ParametersConfig] = None
    point: Optional[PointConfig] = None
    path: List[List[float]] = Field(default_factory=list, description="Waypoints in s after the start")
    samples_per_segment: int = Field(10, ge=1)
    rtol: float = Field(default_factory=lambda: settings.rtol, gt=0)
    atol: float = Field(default_factory=lambda: settings.atol, gt=0)
    singular_margin: float = Field(default_factory=lambda: settings.singular_margin, gt=0)
    two_route_end: Optional[List[float]] = Field(None, description="Endpoint for the order-of-flows comparison (N >= 2)")

    @model_validator(mode="after")
    def _start(self) -> "IntegrateConfig":
        from_solution = self.grid is not None and self.t_start is not None
        explicit = self.parameters is not None and self.point is not None
        if from_solution == explicit:
            raise ValueError("give either grid + t_start or parameters + point")
        return self


class SymmetryConfig(_Model):
    L: int = Field(..., ge=2)
    N: int = Field(..., ge=1)
    relations: bool = True
    trials: int = Field(20, ge=1)
    words: List[str] = Field(default_factory=list, description="Comma-separated generator words; on points the leftmost generator acts first")
    grid: Optional[GridConfig] = Field(None, description="Rational solution to transport by each word")
    canonicity: bool = True

    @model_validator(mode="after")
    def _grid_shape(self) -> "SymmetryConfig":
        if self.grid is not None and (self.grid.L, self.grid.N) != (self.L, self.N):
            raise ValueError("the transport grid must have the same (L, N)")
        return self


class LaxConfig(_Model):
    grid: GridConfig
    t_point: Optional[List[Rational]] = Field(None, description="t_1..t_N where the Riemann scheme is evaluated")
    random_points: int = Field(20, ge=0, description="Random exact points for the trace-Hamiltonian check")
    zero_curvature: bool = True


class CompareConfig(_Model):
    L: int = Field(2, ge=2)
    N: int = Field(1, ge=1)
    parameters: Optional[ParametersConfig] = None
    s: Optional[List[Rational]] = Field(None, description="Times for the Garnier comparison; random when omitted")


class RunConfig(_Model):
    seed: int = Field(default_factory=lambda: settings.seed)
    out: str = Field(default_factory=lambda: settings.out_dir)
    mode: Mode = Field(default_factory=lambda: settings.mode)
    certify: Optional[CertifyConfig] = None
    integrate: Optional[IntegrateConfig] = None
    symmetry: Optional[SymmetryConfig] = None
    lax: Optional[LaxConfig] = None
    compare: Optional[CompareConfig] = None

    def section(self, name: str) -> Any:
        value = getattr(self, name)
        if value is None:
            raise ConfigError(f"config has no '{name}' section")
        return value

    def resolved(self) -> Dict[str, Any]:
        return self.model_dump(mode="json", exclude_none=True)


def load_config(path: Optional[str], overrides: Optional[Dict[str, Any]] = None) -> RunConfig:
    """Read a JSON config (or start empty) and apply CLI overrides"""
    data: Dict[str, Any] = {}
    if path:
        try:
            with open(path) as handle:
                data = json.load(handle)
        except FileNotFoundError:
            raise ConfigError(f"config file not found: {path}", path=path)
        except json.JSONDecodeError as e:
            raise ConfigError(f"config file is not valid JSON: {e}", path=path)
    for key, value in (overrides or {}).items():
        if value is not None:
            data[key] = value
    return RunConfig.model_validate(data)


__all__ = [
    "CertifyConfig", "CompareConfig", "GridConfig", "IntegrateConfig", "LaxConfig",
    "ParametersConfig", "PointConfig", "RunConfig", "SymmetryConfig", "load_config",
]
