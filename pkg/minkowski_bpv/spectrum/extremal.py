"""Sharp BPV constants, extremal profiles and their Euler-Lagrange residual."""

import logging
import math
from typing import Tuple

import numpy as np
from scipy import interpolate, special

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.specfun import bessel_j, first_zero, unit_ball_volume_euclidean
from minkowski_bpv.spectrum.radial_profile import DEFAULT_GRADING, RadialProfile, graded_mesh
from minkowski_bpv.spectrum.radial_space import reduction_exponent

logger = logging.getLogger(__name__)

DEFAULT_MESH_SIZE = 2000
SKIPPED_ORIGIN_NODES = 2


def check_admissible(alpha: float, n: int, strict: bool = False) -> None:
    """Validate (alpha, n) for the BPV inequality.

    Args:
        alpha (float): The order.
        n (int): Dimension, at least 2.
        strict (bool, optional): Also exclude alpha = 0 for n >= 3, where no
            extremal exists. Defaults to False.

    Raises:
        PreconditionError: If the pair is out of range.
    """
    if n < 2:
        raise PreconditionError(f"dimension must be >= 2, got {n}")
    if not math.isfinite(alpha):
        raise PreconditionError(f"alpha must be finite, got {alpha}")
    if n == 2:
        if alpha != 0:
            raise PreconditionError(f"in the plane alpha must be 0, got {alpha}")
        return
    upper = (n - 2) / 2
    if alpha < 0 or alpha > upper:
        raise PreconditionError(f"alpha must lie in [0, {upper}] for n = {n}, got {alpha}")
    if strict and alpha == 0:
        raise PreconditionError(
            "n >= 3 with alpha = 0 has no extremal in the energy space"
        )


def alpha_range(n: int, lF: float) -> Tuple[float, float]:
    """Admissible orders [(n-2)/2 sqrt(1 - lF^2), (n-2)/2] for a norm with uniformity lF."""
    if not 0 < lF <= 1:
        raise PreconditionError(f"uniformity constant must lie in (0, 1], got {lF}")
    upper = (n - 2) / 2
    return upper * math.sqrt(max(0.0, 1.0 - lF**2)), upper


def sharp_constant(alpha: float, n: int, volume: float) -> float:
    """S_alpha = j_alpha^2 (omega_n / volume)^(2/n).

    Args:
        alpha (float): The order, 0 <= alpha <= (n-2)/2 (alpha = 0 when n = 2).
        n (int): Dimension.
        volume (float): Volume of the domain.

    Returns:
        float: The sharp constant.
    """
    check_admissible(alpha, n)
    if not volume > 0:
        raise PreconditionError(f"domain volume must be positive, got {volume}")
    return first_zero(alpha) ** 2 * (unit_ball_volume_euclidean(n) / volume) ** (2 / n)


def extremal_limit_at_zero(alpha: float, n: int, R: float) -> float:
    """lim h(rho) rho^((n-2)/2 - alpha) as rho -> 0, i.e. (sqrt(S)/2)^alpha / Gamma(alpha+1)."""
    check_admissible(alpha, n, strict=True)
    root = first_zero(alpha) / R
    return (root / 2) ** alpha / special.gamma(alpha + 1)


def extremal_profile(
    alpha: float,
    n: int,
    R: float = 1.0,
    M: int = DEFAULT_MESH_SIZE,
    grading: float = DEFAULT_GRADING,
) -> RadialProfile:
    """The extremal h(rho) = rho^((2-n)/2) J_alpha(sqrt(S) rho), S = j_alpha^2 / R^2.

    Args:
        alpha (float): Order with alpha > 0, or alpha = 0 in the plane.
        n (int): Dimension.
        R (float, optional): Radius of the Wulff ball. Defaults to 1.
        M (int, optional): Mesh size. Defaults to 2000.
        grading (float, optional): Mesh grading exponent. Defaults to 2.

    Returns:
        RadialProfile: The sampled extremal.

    Raises:
        PreconditionError: For n >= 3 with alpha = 0, or out-of-range input.
    """
    check_admissible(alpha, n, strict=True)
    root = first_zero(alpha) / R

    def profile(rho: np.ndarray) -> np.ndarray:
        return rho ** ((2 - n) / 2) * bessel_j(alpha, root * rho)

    nodes = graded_mesh(R, M, grading)
    values = profile(nodes)
    logger.debug(f"Extremal ({alpha}, {n}, R={R}): |h(R)| = {abs(values[-1]):.2e}")
    values[-1] = 0.0
    return RadialProfile(R=R, nodes=nodes, values=values, grading=grading)


def euler_lagrange_residual(
    profile: RadialProfile, alpha: float, n: int, Q: float
) -> float:
    """Max of |(h' rho^(n-1))' + [c rho^(n-3) + Q rho^(n-1)] h| at interior nodes.

    Derivatives come from a quintic interpolating spline of the smooth factor
    g = rho^(-s) h (s = alpha - (n-2)/2), for which
    (h' rho^(n-1))' + c rho^(n-3) h = rho^(n-1+s) (g'' + (1 + 2 alpha) g' / rho).
    The first two nodes and the Dirichlet node are skipped.

    Args:
        profile (RadialProfile): Profile with at least 5 nodes.
        alpha (float): The order.
        n (int): Dimension.
        Q (float): Eigenvalue parameter.

    Returns:
        float: The maximal absolute residual.
    """
    check_admissible(alpha, n)
    x, g1, g2 = reduced_derivatives(profile, alpha, n)
    s = reduction_exponent(alpha, n)
    residual = x ** (n - 1 + s) * (g2 + (1 + 2 * alpha) * g1 / x)
    residual += Q * x ** (n - 1) * profile.values[interior_nodes(profile)]
    if residual.size == 0:
        return 0.0
    return float(np.max(np.abs(residual)))


def reduced_spline(profile: RadialProfile, alpha: float, n: int) -> interpolate.BSpline:
    """Quintic interpolating spline of g = rho^(-s) h through the profile nodes.

    Raises:
        PreconditionError: If the profile has fewer than 5 nodes.
    """
    if len(profile) < 5:
        raise PreconditionError("the residual needs at least 5 nodes")
    rho = profile.nodes
    g = profile.values * rho ** (-reduction_exponent(alpha, n))
    degree = 5 if len(rho) >= 6 else 3
    return interpolate.make_interp_spline(rho, g, k=degree)


def interior_nodes(profile: RadialProfile) -> slice:
    """Nodes where residuals are measured: all but the two nearest 0 and rho_M."""
    return slice(SKIPPED_ORIGIN_NODES, len(profile) - 1)


def reduced_derivatives(
    profile: RadialProfile, alpha: float, n: int
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Interior nodes x with g'(x) and g''(x) from :func:`reduced_spline`."""
    spline = reduced_spline(profile, alpha, n)
    x = profile.nodes[interior_nodes(profile)]
    return x, spline(x, 1), spline(x, 2)
