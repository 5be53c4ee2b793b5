"""The radial Rayleigh quotient and its discrete minimization."""

import logging
from typing import Tuple

import numpy as np
from scipy.sparse import linalg as sparse_linalg

from minkowski_bpv.exceptions import ConvergenceError, PreconditionError
from minkowski_bpv.spectrum.extremal import check_admissible
from minkowski_bpv.spectrum.radial_profile import DEFAULT_GRADING, RadialProfile, graded_mesh
from minkowski_bpv.spectrum.radial_space import RadialSpace

logger = logging.getLogger(__name__)

EIGEN_TOLERANCE = 1e-12


def radial_rayleigh_quotient(profile: RadialProfile, alpha: float, n: int) -> float:
    """Q_alpha(h) = [int h'^2 rho^(n-1) - c int h^2 rho^(n-3)] / int h^2 rho^(n-1).

    The trial function is rho^s times the piecewise-linear interpolant of
    rho^(-s) h, integrated exactly element by element.

    Args:
        profile (RadialProfile): Boundary-vanishing profile.
        alpha (float): Order in [0, (n-2)/2], or 0 in the plane.
        n (int): Dimension.

    Returns:
        float: The quotient.

    Raises:
        PreconditionError: If h(R) != 0 or the denominator vanishes.
    """
    check_admissible(alpha, n)
    if not profile.is_boundary_vanishing():
        raise PreconditionError("profile must vanish at the outer radius")
    space = RadialSpace.build(profile.nodes, alpha, n)
    denominator = space.mass_form(profile.values)
    if denominator <= 0:
        raise PreconditionError("Rayleigh quotient of the zero profile is undefined")
    return space.energy_form(profile.values) / denominator


def radial_eigen_min(
    alpha: float,
    n: int,
    R: float = 1.0,
    M: int = 4000,
    grading: float = DEFAULT_GRADING,
) -> Tuple[float, RadialProfile]:
    """Minimize the radial Rayleigh quotient over the discrete space.

    The generalized eigenproblem K g = mu B g uses the same element forms as
    :func:`radial_rayleigh_quotient`, so mu is the quotient of the returned
    minimizer and an upper bound for j_alpha^2 / R^2.

    Args:
        alpha (float): Order with alpha > 0, or alpha = 0 in the plane.
        n (int): Dimension.
        R (float, optional): Radius. Defaults to 1.
        M (int, optional): Mesh size. Defaults to 4000.
        grading (float, optional): Mesh grading exponent. Defaults to 2.

    Returns:
        Tuple[float, RadialProfile]: mu and the nonnegative minimizer with
            sup norm 1.

    Raises:
        ConvergenceError: If the eigensolver does not converge.
    """
    check_admissible(alpha, n, strict=True)
    space = RadialSpace.build(graded_mesh(R, M, grading), alpha, n)
    stiffness = space.interior(space.stiffness).tocsc()
    mass = space.interior(space.mass).tocsc()
    try:
        values, vectors = sparse_linalg.eigsh(
            stiffness,
            k=1,
            M=mass,
            sigma=0.0,
            which="LM",
            v0=np.ones(stiffness.shape[0]),
            tol=EIGEN_TOLERANCE,
        )
    except sparse_linalg.ArpackNoConvergence as exc:
        raise ConvergenceError(f"radial eigen solve did not converge: {exc}")

    g = np.append(vectors[:, 0], 0.0)
    if g.sum() < 0:
        g = -g
    h = np.maximum(space.restore(g), 0.0)
    h /= np.max(h)
    mu = float(values[0])
    logger.info(f"Radial eigenvalue ({alpha}, {n}, R={R}, M={M}): {mu:.12g}")
    return mu, RadialProfile(R=R, nodes=space.nodes, values=h, grading=grading)
