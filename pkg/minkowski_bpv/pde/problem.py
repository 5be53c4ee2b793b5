"""Problem, solution and report types for the radial Hardy-Poincare PDE."""

import math
from dataclasses import dataclass, field
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from minkowski_bpv.specfun import first_zero
from minkowski_bpv.spectrum import RadialProfile, check_admissible, hardy_coefficient


class PdeProblem(BaseModel):
    """-Delta_F u - c u / F^2 + lambda u = |u|^(p-2) u on the unit Wulff ball.

    c = (n-2)^2/4 - alpha^2. The exponent p must be subcritical: p > 2, and
    p < 2n/(n-2) when n >= 3.
    """

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    alpha: float
    n: int = Field(ge=2)
    p: float
    lam: float = Field(alias="lambda")

    @model_validator(mode="after")
    def _check_parameters(self) -> "PdeProblem":
        check_admissible(self.alpha, self.n, strict=True)
        if not math.isfinite(self.lam):
            raise ValueError(f"lambda must be finite, got {self.lam}")
        if not self.p > 2:
            raise ValueError(f"p must exceed 2, got {self.p}")
        if self.n >= 3 and not self.p < self.critical_exponent:
            raise ValueError(
                f"p must be below the critical exponent {self.critical_exponent}, got {self.p}"
            )
        return self

    @property
    def critical_exponent(self) -> float:
        """2n/(n-2), infinite in the plane."""
        return math.inf if self.n == 2 else 2 * self.n / (self.n - 2)

    @property
    def hardy_coefficient(self) -> float:
        return hardy_coefficient(self.alpha, self.n)

    @property
    def threshold(self) -> float:
        """-j_alpha^2; nonzero solutions exist exactly above it."""
        return -first_zero(self.alpha) ** 2


@dataclass
class PdeSolution:
    """Best candidate returned by the multistart solver."""

    problem: PdeProblem
    profile: RadialProfile = field(repr=False)
    energy: float
    residual: float
    nonzero: bool
    inconclusive: bool = False
    label: str = ""
    attempts: int = 0
    iterations: int = 0
    discrete_eigenvalue: Optional[float] = None
    candidate_sup_norm: float = 0.0


class PdeReport(BaseModel):
    """Serializable summary of one solve."""

    model_config = ConfigDict(populate_by_name=True)

    alpha: float
    n: int
    p: float
    lam: float = Field(alias="lambda")
    threshold: float
    offset: float
    nonzero: bool
    inconclusive: bool
    label: str
    energy: float
    residual: float
    sup_norm: float
    candidate_sup_norm: float = 0.0
    attempts: int
    discrete_eigenvalue: Optional[float] = None
    necessity_lhs: Optional[float] = None
    necessity_rhs: Optional[float] = None
    necessity_gap: Optional[float] = None
