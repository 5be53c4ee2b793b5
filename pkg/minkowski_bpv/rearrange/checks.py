"""Discrete checks of the anisotropic rearrangement inequalities."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

from pydantic import BaseModel

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.norm import NormSpec
from minkowski_bpv.rearrange.energies import dirichlet_energy, hardy_integral, mass
from minkowski_bpv.rearrange.grid_function import GridFunction
from minkowski_bpv.rearrange.symmetrization import symmetrize

logger = logging.getLogger(__name__)

DEFAULT_SLACK_CONSTANT = 10.0
HARDY_LITTLEWOOD_RTOL = 1e-9


@dataclass(frozen=True)
class InequalityCheck:
    """One side-by-side comparison ``lhs <= rhs`` (or ``==`` for Cavalieri)."""

    name: str
    lhs: float
    rhs: float
    slack: float
    passed: bool


class RearrangeReport(BaseModel):
    """Mass, Hardy and Dirichlet integrals of u and u* with the check outcomes."""

    mass_in: float
    mass_out: float
    hardy_in: float
    hardy_out: float
    dirichlet_in: float
    dirichlet_out: float
    slack: float
    cavalieri_passed: bool
    hardy_littlewood_passed: bool
    polya_szego_passed: bool
    hardy_ratio: Optional[float] = None
    hardy_ratio_passed: Optional[bool] = None
    passed: bool


def _symmetric(u: GridFunction, spec: NormSpec, symmetric: Optional[GridFunction]) -> GridFunction:
    return symmetrize(u, spec) if symmetric is None else symmetric


def _require_boundary_vanishing(u: GridFunction) -> None:
    if not u.is_boundary_vanishing():
        raise PreconditionError("grid function must vanish on the lattice boundary")


def cavalieri_check(
    u: GridFunction, spec: NormSpec, symmetric: Optional[GridFunction] = None
) -> InequalityCheck:
    """Compare the masses of u and u*, which must agree exactly.

    Args:
        u (GridFunction): Input function.
        spec (NormSpec): The norm.
        symmetric (Optional[GridFunction], optional): A precomputed u*.
            Defaults to None.

    Returns:
        InequalityCheck: lhs = mass of u, rhs = mass of u*.
    """
    before = mass(u)
    after = mass(_symmetric(u, spec, symmetric))
    return InequalityCheck("cavalieri", before, after, 0.0, before == after)


def hardy_littlewood_check(
    u: GridFunction, spec: NormSpec, symmetric: Optional[GridFunction] = None
) -> InequalityCheck:
    """Check int u^2/F^2 <= int (u*)^2/F^2 up to a relative 1e-9."""
    before = hardy_integral(u, spec)
    after = hardy_integral(_symmetric(u, spec, symmetric), spec)
    slack = HARDY_LITTLEWOOD_RTOL * max(abs(before), abs(after))
    return InequalityCheck("hardy_littlewood", before, after, slack, before <= after + slack)


def polya_szego_check(
    u: GridFunction,
    spec: NormSpec,
    slack_constant: float = DEFAULT_SLACK_CONSTANT,
    symmetric: Optional[GridFunction] = None,
) -> InequalityCheck:
    """Check int F_*(Du*)^2 <= (1 + C h) int F_*(Du)^2.

    Args:
        u (GridFunction): Input function vanishing on the lattice boundary.
        spec (NormSpec): The norm.
        slack_constant (float, optional): The constant C. Defaults to 10.
        symmetric (Optional[GridFunction], optional): A precomputed u*.
            Defaults to None.

    Returns:
        InequalityCheck: lhs = energy of u*, rhs = energy of u, slack = C h.

    Raises:
        PreconditionError: If u does not vanish on the lattice boundary.
    """
    _require_boundary_vanishing(u)
    before = dirichlet_energy(u, spec)
    after = dirichlet_energy(_symmetric(u, spec, symmetric), spec)
    slack = slack_constant * u.h
    return InequalityCheck("polya_szego", after, before, slack, after <= before * (1 + slack))


def hardy_inequality_check(u: GridFunction, spec: NormSpec) -> float:
    """Ratio int F_*(Du)^2 / int u^2/F^2, bounded below by (n-2)^2/4 for n >= 3.

    Raises:
        PreconditionError: For n = 2, a function not vanishing on the boundary
            or u = 0.
    """
    if u.n < 3:
        raise PreconditionError("the Hardy inequality needs n >= 3")
    _require_boundary_vanishing(u)
    denominator = hardy_integral(u, spec)
    if denominator == 0.0:
        raise PreconditionError("the Hardy integral of u vanishes")
    return dirichlet_energy(u, spec) / denominator


def rearrangement_report(
    u: GridFunction, spec: NormSpec, slack_constant: float = DEFAULT_SLACK_CONSTANT
) -> Tuple[RearrangeReport, GridFunction]:
    """Run every rearrangement check against one symmetrization of ``u``.

    Args:
        u (GridFunction): Input function vanishing on the lattice boundary.
        spec (NormSpec): The norm.
        slack_constant (float, optional): The constant C of the Polya-Szego
            slack. Defaults to 10.

    Returns:
        Tuple[RearrangeReport, GridFunction]: The report and u*.
    """
    symmetric = symmetrize(u, spec)
    cavalieri = cavalieri_check(u, spec, symmetric)
    hardy = hardy_littlewood_check(u, spec, symmetric)
    polya = polya_szego_check(u, spec, slack_constant, symmetric)

    ratio = None
    ratio_passed = None
    if u.n >= 3 and u.support_count() > 0:
        ratio = hardy_inequality_check(u, spec)
        ratio_passed = ratio >= (u.n - 2) ** 2 / 4 - slack_constant * u.h

    passed = cavalieri.passed and hardy.passed and polya.passed and ratio_passed is not False
    report = RearrangeReport(
        mass_in=cavalieri.lhs,
        mass_out=cavalieri.rhs,
        hardy_in=hardy.lhs,
        hardy_out=hardy.rhs,
        dirichlet_in=polya.rhs,
        dirichlet_out=polya.lhs,
        slack=polya.slack,
        cavalieri_passed=cavalieri.passed,
        hardy_littlewood_passed=hardy.passed,
        polya_szego_passed=polya.passed,
        hardy_ratio=ratio,
        hardy_ratio_passed=ratio_passed,
        passed=passed,
    )
    logger.info(f"Rearrangement checks on {u.shape} lattice: passed={passed}")
    return report, symmetric
