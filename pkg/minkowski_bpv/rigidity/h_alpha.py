"""The Bessel kernel H_alpha and the monotone auxiliary functions h_1, h_2, h_3."""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike
from scipy import integrate, optimize

from minkowski_bpv.exceptions import ConvergenceError, PreconditionError, RigidityError
from minkowski_bpv.specfun import bessel_j, bessel_j_prime, first_zero
from minkowski_bpv.spectrum import check_admissible

logger = logging.getLogger(__name__)

SIGN_SCAN_POINTS = 1000
MONOTONE_GRID_POINTS = 10_000
SINGULAR_SPLIT = 0.05
QUAD_LIMIT = 400


def _middle_coefficient(alpha: float, n: int) -> float:
    return 2 * ((n - 2) / 2 - alpha)


def _check_kernel_pair(alpha: float, n: int) -> None:
    check_admissible(alpha, n, strict=True)


def h_alpha(alpha: float, n: int, t: ArrayLike) -> ArrayLike:
    """H_alpha(t) = J_{a+1}^2(x) - 2((n-2)/2 - a) J'_a(x) J_a(x) / x - J_a^2(x), x = j_a t.

    In the plane (alpha = 0) the middle coefficient vanishes and
    H_0 = J_1^2 - J_0^2.

    Args:
        alpha (float): Order with alpha > 0, or alpha = 0 when n = 2.
        n (int): Dimension.
        t (ArrayLike): Points in (0, 1].

    Returns:
        ArrayLike: H_alpha(t), a float for scalar input.
    """
    _check_kernel_pair(alpha, n)
    ts = np.asarray(t, dtype=float)
    if np.any(ts <= 0) or np.any(ts > 1):
        raise PreconditionError("H_alpha is evaluated on (0, 1]")
    x = first_zero(alpha) * ts
    j_a = np.asarray(bessel_j(alpha, x))
    j_next = np.asarray(bessel_j(alpha + 1, x))
    values = j_next**2 - j_a**2
    k = _middle_coefficient(alpha, n)
    if k != 0.0:
        values = values - k * np.asarray(bessel_j_prime(alpha, x)) * j_a / x
    return float(values) if np.ndim(t) == 0 else values


def _scan_signs(alpha: float, n: int, points: int) -> Tuple[np.ndarray, np.ndarray]:
    t = np.arange(1, points + 1) / points
    return t, np.sign(h_alpha(alpha, n, t))


def h_alpha_zero(alpha: float, n: int, scan_points: int = SIGN_SCAN_POINTS) -> float:
    """The unique zero t_0 of H_alpha in (0, 1).

    The sign pattern is certified on a uniform scan (negative, then positive)
    and the zero refined by Brent's method inside the single bracket.

    Raises:
        RigidityError: If the scan does not show exactly one sign change from
            negative to positive.
    """
    t, signs = _scan_signs(alpha, n, scan_points)
    changes = np.nonzero(signs[:-1] * signs[1:] < 0)[0]
    if len(changes) != 1 or signs[0] >= 0 or signs[-1] <= 0:
        raise RigidityError(
            f"H_{alpha} (n={n}) shows {len(changes)} sign changes on the scan, expected 1"
        )
    k = changes[0]
    t0 = optimize.brentq(
        lambda s: h_alpha(alpha, n, s),
        t[k],
        t[k + 1],
        xtol=1e-15,
        rtol=4 * np.finfo(float).eps,
    )
    logger.debug(f"H_{alpha} (n={n}) changes sign at t0 = {t0:.15f}")
    return float(t0)


def scaled_kernel(alpha: float, n: int, t: float) -> float:
    """t^(2 - 2 alpha) H_alpha(t) on [0, 1], continued to t = 0 by its limit.

    Only the middle term survives at the origin:
    -2((n-2)/2 - alpha) (alpha / 4) (j_alpha / 2)^(2 alpha - 2) / Gamma(alpha + 1)^2.
    """
    if t > 0:
        return t ** (2 - 2 * alpha) * h_alpha(alpha, n, t)
    _check_kernel_pair(alpha, n)
    half_zero = first_zero(alpha) / 2
    return (
        -_middle_coefficient(alpha, n)
        * alpha
        / 4
        * half_zero ** (2 * alpha - 2)
        / math.gamma(alpha + 1) ** 2
    )


def weighted_kernel_integral(
    weight: Callable[[np.ndarray], np.ndarray],
    alpha: float,
    n: int,
    points: Sequence[float] = (),
) -> float:
    """int_0^1 weight(t) t H_alpha(t) dt for a bounded weight.

    Near 0, t H_alpha(t) behaves like t^(2 alpha - 1) when the middle
    coefficient is nonzero; that factor is integrated with an algebraic
    weight on [0, SINGULAR_SPLIT].

    Args:
        weight (Callable[[np.ndarray], np.ndarray]): Bounded weight on (0, 1].
        alpha (float): The order.
        n (int): Dimension.
        points (Sequence[float], optional): Kinks of the weight in (0, 1).
            Defaults to ().

    Returns:
        float: The integral.
    """
    _check_kernel_pair(alpha, n)

    def integrand(t: float) -> float:
        return float(weight(np.array(t))) * t * h_alpha(alpha, n, t)

    breaks = sorted(p for p in points if 0 < p < 1)
    if _middle_coefficient(alpha, n) == 0.0:
        return _quad(integrand, 0.0, 1.0, breaks)

    split = SINGULAR_SPLIT
    tail = _quad(integrand, split, 1.0, [p for p in breaks if p > split])
    head_breaks = [p for p in breaks if p < split]
    if head_breaks:
        # the algebraic-weight rule takes no breakpoints
        return _quad(integrand, 0.0, split, head_breaks) + tail

    def regular_part(t: float) -> float:
        return float(weight(np.array(t))) * scaled_kernel(alpha, n, t)

    head, _ = integrate.quad(
        regular_part,
        0.0,
        split,
        weight="alg",
        wvar=(2 * alpha - 1, 0.0),
        epsabs=1e-14,
        epsrel=1e-12,
        limit=QUAD_LIMIT,
    )
    return head + tail


def _quad(func: Callable[[float], float], a: float, b: float, points: Sequence[float]) -> float:
    value, error = integrate.quad(
        func,
        a,
        b,
        points=list(points) or None,
        epsabs=1e-14,
        epsrel=1e-12,
        limit=QUAD_LIMIT,
    )
    if not np.isfinite(value):
        raise ConvergenceError("kernel quadrature produced a non-finite value")
    return value


def integral_identity(alpha: float, n: int) -> float:
    """Residual of int_0^1 t H_alpha(t) dt = 0."""
    return weighted_kernel_integral(lambda t: np.ones_like(t), alpha, n)


def constituent_identities(alpha: float, n: int) -> Tuple[float, float]:
    """Residuals of int_0^1 t J_{a+1}^2(j t) dt and int_0^1 t J_a^2(j t) dt against J_{a+1}(j)^2 / 2.

    Args:
        alpha (float): The order.
        n (int): Dimension, only used to validate the pair.

    Returns:
        Tuple[float, float]: Both residuals.
    """
    _check_kernel_pair(alpha, n)
    j = first_zero(alpha)
    target = bessel_j(alpha + 1, j) ** 2 / 2

    def quad(order: float) -> float:
        value, _ = integrate.quad(
            lambda t: t * bessel_j(order, j * t) ** 2, 0.0, 1.0, epsabs=1e-15, epsrel=1e-13
        )
        return value

    return quad(alpha + 1) - target, quad(alpha) - target


@dataclass(frozen=True)
class HAlphaAnalysis:
    """Sign change and integral identity of H_alpha for one (alpha, n)."""

    alpha: float
    n: int
    t0: float
    integral_identity_residual: float


def analyze_h_alpha(alpha: float, n: int) -> HAlphaAnalysis:
    """Locate t_0 and evaluate the integral identity."""
    return HAlphaAnalysis(
        alpha=alpha,
        n=n,
        t0=h_alpha_zero(alpha, n),
        integral_identity_residual=integral_identity(alpha, n),
    )


def monotone_function(
    which: int, alpha: float, n: int, t: np.ndarray, beta: Optional[float] = None
) -> np.ndarray:
    """Evaluate h_1 (with beta), h_2 or h_3 at points of (0, 1]."""
    x = first_zero(alpha) * t
    j_a = np.asarray(bessel_j(alpha, x))
    if which == 1:
        if beta is None or not 0 <= beta <= 2:
            raise PreconditionError(f"h_1 needs beta in [0, 2], got {beta}")
        return t ** (beta - n) * j_a**2
    j_next = np.asarray(bessel_j(alpha + 1, x))
    if which == 2:
        return t ** (1 - n) * j_a * j_next
    if which == 3:
        return t ** (2 - n) * j_next * (j_next - (n + 2 * alpha) / x * j_a)
    raise PreconditionError(f"monotone function index must be 1, 2 or 3, got {which}")


def monotone_check(
    which: int,
    alpha: float,
    n: int,
    beta: Optional[float] = None,
    points: int = MONOTONE_GRID_POINTS,
) -> float:
    """Largest monotonicity violation of h_1, h_2 (non-increasing) or h_3 (non-decreasing).

    The violation is the largest step against the expected direction on the
    grid t_k = k / points, relative to max(1, max |h|).

    Args:
        which (int): 1, 2 or 3.
        alpha (float): Order in [0, (n-2)/2].
        n (int): Dimension.
        beta (Optional[float], optional): Exponent of h_1, in [0, 2].
            Defaults to None.
        points (int, optional): Grid size. Defaults to 10^4.

    Returns:
        float: The worst violation, 0 when the function is monotone.
    """
    check_admissible(alpha, n)
    t = np.arange(1, points + 1) / points
    values = monotone_function(which, alpha, n, t, beta)
    steps = np.diff(values)
    if which in (1, 2):
        steps = -steps
    scale = max(1.0, float(np.max(np.abs(values))))
    return float(max(0.0, -float(np.min(steps)))) / scale
