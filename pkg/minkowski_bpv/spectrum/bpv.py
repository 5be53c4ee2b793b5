"""Discrete verification of the BPV inequality on grid functions."""

import logging
from typing import Optional

from pydantic import BaseModel

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.norm import NormSpec, is_normalized, uniformity_constant
from minkowski_bpv.rearrange import GridFunction, dirichlet_energy, hardy_integral, mass
from minkowski_bpv.spectrum.extremal import alpha_range, check_admissible, sharp_constant
from minkowski_bpv.spectrum.radial_space import hardy_coefficient

logger = logging.getLogger(__name__)

DEFAULT_SLACK_CONSTANT = 10.0


class BpvReport(BaseModel):
    """One evaluation of int F_*(Du)^2 >= c int u^2/F^2 + S_alpha int u^2."""

    n: int
    alpha: float
    domain_volume: float
    lhs: float
    hardy_term: float
    poincare_term: float
    margin: float
    sharp_constant: float
    slack: float
    passed: bool
    alpha_min: float
    alpha_max: float
    uniformity_constant: Optional[float] = None
    warning: Optional[str] = None


def verify_bpv_grid(
    u: GridFunction,
    spec: NormSpec,
    alpha: float,
    domain_volume: float,
    slack_constant: float = DEFAULT_SLACK_CONSTANT,
    lF: Optional[float] = None,
) -> BpvReport:
    """Evaluate both sides of the BPV inequality for a grid function.

    The discretizations are those of :mod:`minkowski_bpv.rearrange`. The check
    passes iff margin >= -C h lhs.

    Args:
        u (GridFunction): Function vanishing on the lattice boundary, the
            singular point being the origin.
        spec (NormSpec): Normalized norm (unit ball volume omega_n).
        alpha (float): The order.
        domain_volume (float): Volume of the domain containing the support.
        slack_constant (float, optional): The constant C. Defaults to 10.
        lF (Optional[float], optional): Uniformity constant; estimated when
            omitted and n >= 3. Defaults to None.

    Returns:
        BpvReport: The three integrals, the margin and the admissible range.

    Raises:
        PreconditionError: If the norm is not normalized, u does not vanish on
            the boundary or (alpha, n) is out of range.
    """
    n = u.n
    if spec.n != n:
        raise PreconditionError(f"norm dimension {spec.n} != lattice dimension {n}")
    check_admissible(alpha, n)
    if not is_normalized(spec):
        raise PreconditionError("the norm must be normalized to unit ball volume omega_n")
    if not u.is_boundary_vanishing():
        raise PreconditionError("grid function must vanish on the lattice boundary")

    if n >= 3 and lF is None:
        lF = uniformity_constant(spec)
    alpha_min, alpha_max = alpha_range(n, lF) if n >= 3 else (0.0, 0.0)
    warning = None
    if alpha < alpha_min - 1e-12:
        warning = (
            f"alpha = {alpha} is below {alpha_min:.6g}; the inequality is not "
            "guaranteed for this norm"
        )
        logger.warning(warning)

    lhs = dirichlet_energy(u, spec)
    c = hardy_coefficient(alpha, n)
    hardy_term = c * hardy_integral(u, spec) if c != 0.0 else 0.0
    constant = sharp_constant(alpha, n, domain_volume)
    poincare_term = constant * mass(u)
    margin = lhs - hardy_term - poincare_term
    slack = slack_constant * u.h
    passed = margin >= -slack * lhs

    logger.info(f"BPV check n={n} alpha={alpha}: margin {margin:.6g}, passed={passed}")
    return BpvReport(
        n=n,
        alpha=alpha,
        domain_volume=domain_volume,
        lhs=lhs,
        hardy_term=hardy_term,
        poincare_term=poincare_term,
        margin=margin,
        sharp_constant=constant,
        slack=slack,
        passed=passed,
        alpha_min=alpha_min,
        alpha_max=alpha_max,
        uniformity_constant=lF,
        warning=warning,
    )
