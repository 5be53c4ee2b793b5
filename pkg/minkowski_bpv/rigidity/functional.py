"""Layer-cake integration, the rigidity functional and the flatness verdict."""

import logging
from enum import Enum
from typing import Callable, Dict, Sequence, Union

import numpy as np
from numpy.polynomial import legendre
from pydantic import BaseModel, ConfigDict, Field

from minkowski_bpv.exceptions import PreconditionError, RigidityError
from minkowski_bpv.rigidity.h_alpha import h_alpha_zero, weighted_kernel_integral
from minkowski_bpv.rigidity.volume_profile import VolumeProfile
from minkowski_bpv.specfun import unit_ball_volume_euclidean

logger = logging.getLogger(__name__)

VERDICT_RTOL = 1e-6
PROFILE_SCAN_POINTS = 1000
MONOTONE_TOL = 1e-9
SMALL_BALL_RADIUS = 1e-8
SMALL_BALL_TOL = 1e-4
LAYER_CAKE_GAUSS_POINTS = 8


class Verdict(str, Enum):
    FLAT = "flat"
    BPV_VIOLATED = "bpv_violated"
    INCONCLUSIVE = "inconclusive"


class RigidityReport(BaseModel):
    """Outcome of the flatness test for one volume profile."""

    model_config = ConfigDict(populate_by_name=True)

    profile: str
    alpha: float
    n: int
    r: float
    functional: float = Field(alias="I")
    t0: float
    verdict: Verdict
    tolerance: float
    checks: Dict[str, Union[bool, float]]


def _check_dimension(vp: VolumeProfile, n: int) -> None:
    if vp.n != n:
        raise PreconditionError(f"profile dimension {vp.n} != {n}")


def _check_radius(r: float) -> None:
    if not r > 0:
        raise PreconditionError(f"radius must be positive, got {r}")


def layer_cake_integral(
    vp: VolumeProfile, rho: Sequence[float], values: Sequence[float], r: float
) -> float:
    """int_0^r f(rho) dVol(rho) for a non-increasing piecewise-linear f with f(r) = 0.

    After integration by parts the Stieltjes integral becomes
    -int_0^r Vol(rho) f'(rho) d rho, summed segment by segment with
    Gauss-Legendre nodes. Below ``rho[0]`` f is taken constant.

    Args:
        vp (VolumeProfile): Volume profile.
        rho (Sequence[float]): Increasing nodes in [0, r] ending at r.
        values (Sequence[float]): f at the nodes.
        r (float): Outer radius.

    Returns:
        float: The integral.

    Raises:
        PreconditionError: If f increases somewhere or does not vanish at r.
    """
    _check_radius(r)
    rho = np.asarray(rho, dtype=float)
    values = np.asarray(values, dtype=float)
    if rho.ndim != 1 or rho.shape != values.shape or len(rho) < 2:
        raise PreconditionError("f needs at least two (rho, value) nodes")
    if rho[0] < 0 or np.any(np.diff(rho) <= 0):
        raise PreconditionError("nodes must be non-negative and strictly increasing")
    if not np.isclose(rho[-1], r, rtol=1e-12, atol=0.0):
        raise PreconditionError(f"last node {rho[-1]} must equal r = {r}")
    scale = max(1.0, float(np.max(np.abs(values))))
    if abs(values[-1]) > 1e-12 * scale:
        raise PreconditionError(f"f must vanish at r, got f(r) = {values[-1]}")
    if np.any(np.diff(values) > 1e-12 * scale):
        raise PreconditionError("f must be non-increasing")

    kinks = [b for b in vp.breakpoints() if rho[0] < b < rho[-1]]
    if kinks:
        merged = np.union1d(rho, kinks)
        values = np.interp(merged, rho, values)
        rho = merged

    x, w = legendre.leggauss(LAYER_CAKE_GAUSS_POINTS)
    left, right = rho[:-1], rho[1:]
    half = (right - left) / 2
    slopes = np.diff(values) / (right - left)
    points = (left + right)[:, None] / 2 + half[:, None] * x[None, :]
    segment_volumes = half * (vp.volume(points) @ w)
    return float(-np.sum(slopes * segment_volumes))


def _kernel_points(vp: VolumeProfile, r: float) -> list:
    return [b / r for b in vp.breakpoints()]


def rigidity_functional(vp: VolumeProfile, alpha: float, n: int, r: float) -> float:
    """I = int_0^1 Vol(rt) t^(1-n) H_alpha(t) dt.

    Evaluated as omega_n r^n int_0^1 psi(rt) t H_alpha(t) dt, psi being the
    bounded ratio Vol(rho) / (omega_n rho^n).

    Args:
        vp (VolumeProfile): Volume profile in dimension n.
        alpha (float): The order.
        n (int): Dimension.
        r (float): Radius.

    Returns:
        float: The functional; 0 for the Euclidean profile.
    """
    _check_dimension(vp, n)
    _check_radius(r)
    integral = weighted_kernel_integral(
        lambda t: vp.ratio(r * t), alpha, n, points=_kernel_points(vp, r)
    )
    return unit_ball_volume_euclidean(n) * r**n * integral


def deficiency_integral(
    g: Callable[[np.ndarray], np.ndarray], alpha: float, n: int, r: float = 1.0
) -> float:
    """int_0^1 g(rt) t H_alpha(t) dt; non-negative for non-decreasing g >= 0."""
    _check_radius(r)
    points = [b / r for b in getattr(g, "breakpoints", ())]
    return weighted_kernel_integral(lambda t: g(r * t), alpha, n, points=points)


def check_bishop_gromov(vp: VolumeProfile, r: float, points: int = PROFILE_SCAN_POINTS) -> None:
    """Require Vol > 0, Vol non-decreasing and Vol / rho^n non-increasing on (0, r].

    Raises:
        PreconditionError: On the first violated condition.
    """
    rho = r * np.arange(1, points + 1) / points
    vol = vp.volume(rho)
    psi = vp.ratio(rho)
    if np.any(vol <= 0):
        raise PreconditionError(f"{vp.describe()}: volume must be positive")
    if np.any(np.diff(vol) < -MONOTONE_TOL * np.max(vol)):
        raise PreconditionError(f"{vp.describe()}: ball volume decreases with the radius")
    if np.any(np.diff(psi) > MONOTONE_TOL):
        raise PreconditionError(
            f"{vp.describe()}: Vol / rho^n increases, Bishop-Gromov comparison fails"
        )


def check_small_ball_limit(vp: VolumeProfile, r: float) -> None:
    """Require Vol(rho) / (omega_n rho^n) -> 1 as rho -> 0."""
    psi0 = float(vp.ratio(SMALL_BALL_RADIUS * r))
    if abs(psi0 - 1.0) > SMALL_BALL_TOL:
        raise PreconditionError(
            f"{vp.describe()}: small balls are not Euclidean (ratio {psi0:.6g} near 0)"
        )


def rigidity_report(
    vp: VolumeProfile, alpha: float, n: int, r: float = 1.0, rtol: float = VERDICT_RTOL
) -> RigidityReport:
    """Evaluate the rigidity functional and decide flatness.

    The tolerance is rtol omega_n r^n. A profile is flat when |I| stays within
    it and the ratio Vol / (omega_n rho^n) deviates from 1 by at most rtol on a
    scan; it violates BPV saturation when I < -tol. A non-flat profile whose I
    stays within the tolerance is reported inconclusive.

    Args:
        vp (VolumeProfile): Profile satisfying Bishop-Gromov and the small-ball limit.
        alpha (float): The order.
        n (int): Dimension.
        r (float, optional): Radius. Defaults to 1.
        rtol (float, optional): Relative verdict tolerance. Defaults to 1e-6.

    Returns:
        RigidityReport: Functional, sign change t_0, verdict and checks.

    Raises:
        PreconditionError: If the profile conditions fail.
        RigidityError: If I exceeds the tolerance.
    """
    _check_dimension(vp, n)
    _check_radius(r)
    check_small_ball_limit(vp, r)
    check_bishop_gromov(vp, r)

    value = rigidity_functional(vp, alpha, n, r)
    t0 = h_alpha_zero(alpha, n)
    tol = rtol * unit_ball_volume_euclidean(n) * r**n
    rho = r * np.arange(1, PROFILE_SCAN_POINTS + 1) / PROFILE_SCAN_POINTS
    deviation = float(np.max(np.abs(vp.ratio(rho) - 1.0)))
    checks = {
        "bishop_gromov": True,
        "small_ball_limit": True,
        "max_ratio_deviation": deviation,
    }

    if value < -tol:
        verdict = Verdict.BPV_VIOLATED
    elif value > tol:
        raise RigidityError(
            f"{vp.describe()}: I = {value:.6g} > 0 contradicts the sign of the Bessel kernel"
        )
    elif deviation <= rtol:
        verdict = Verdict.FLAT
    else:
        # the deficiency is too small for I to resolve at this tolerance
        logger.warning(
            f"{vp.describe()}: |I| = {abs(value):.3g} is within {tol:.3g} but the ratio "
            f"deviates from 1 by {deviation:.3g}"
        )
        verdict = Verdict.INCONCLUSIVE

    logger.info(f"Rigidity {vp.describe()} alpha={alpha} n={n}: I = {value:.6g}, {verdict.value}")
    return RigidityReport(
        profile=vp.describe(),
        alpha=alpha,
        n=n,
        r=r,
        functional=value,
        t0=t0,
        verdict=verdict,
        tolerance=tol,
        checks=checks,
    )


def rigidity_verdict(vp: VolumeProfile, alpha: float, n: int, r: float = 1.0) -> Verdict:
    """Flat, BPV-violated or inconclusive, see :func:`rigidity_report`."""
    return rigidity_report(vp, alpha, n, r).verdict
