"""Identity suite for Bessel functions: recurrences, Rayleigh and Mittag-Leffler sums."""

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.specfun.bessel import Real, bessel_j, bessel_j_prime
from minkowski_bpv.specfun.zeros import first_zero, zero_table

DEFAULT_SERIES_TERMS = 10_000


@dataclass(frozen=True)
class SeriesEstimate:
    """A truncated series together with its tail estimate."""

    value: float
    tail_bound: float
    terms: int


def recurrence_residual(order: float, t: ArrayLike) -> Real:
    """Residual of J_{a+1}(t) + J_{a-1}(t) - (2a/t) J_a(t), for order >= 1 and t > 0."""
    if order < 1:
        raise PreconditionError(f"recurrence check needs order >= 1, got {order}")
    ts = np.asarray(t, dtype=float)
    if np.any(ts <= 0):
        raise PreconditionError("recurrence check needs t > 0")
    value = (
        bessel_j(order + 1, ts)
        + bessel_j(order - 1, ts)
        - (2 * order / ts) * bessel_j(order, ts)
    )
    return float(value) if np.ndim(t) == 0 else value


def derivative_residuals(order: float, t: ArrayLike) -> Tuple[Real, Real]:
    """Residuals of the two derivative identities at t > 0.

    The first compares J'_a = -J_{a+1} + (a/t) J_a with scipy's independent
    derivative; the second checks J'_{a+1} = J_a - ((a+1)/t) J_{a+1}.

    Args:
        order (float): Nonnegative order.
        t (ArrayLike): Positive argument(s).

    Returns:
        Tuple[Real, Real]: Both residuals.
    """
    ts = np.asarray(t, dtype=float)
    if np.any(ts <= 0):
        raise PreconditionError("derivative identities are checked at t > 0")
    lowering = bessel_j_prime(order, ts) - special.jvp(order, ts)
    raising = bessel_j_prime(order + 1, ts) - (
        bessel_j(order, ts) - ((order + 1) / ts) * bessel_j(order + 1, ts)
    )
    if np.ndim(t) == 0:
        return float(lowering), float(raising)
    return lowering, raising


def rayleigh_partial_sum(order: float, count: int) -> float:
    """Partial Rayleigh sum over the first ``count`` zeros of J_order.

    Args:
        order (float): Order greater than -1.
        count (int): Number of zeros K.

    Returns:
        float: Sum of 1/j_{order,k}^2 for k <= K; bounded by 1/(4(order+1)).
    """
    zeros = zero_table(order, count).zeros
    return math.fsum(1.0 / zeros**2)


def rayleigh_limit_estimate(order: float, count: int = 2000) -> float:
    """Extrapolate the Rayleigh sum to K = infinity.

    The tail uses the asymptotic spacing j_k ~ (k + order/2 - 1/4) pi, whose
    sum beyond K is 1/(pi^2 (K + order/2 + 1/4)) up to O(K^-3).

    Args:
        order (float): Order greater than -1.
        count (int, optional): Number of explicit terms. Defaults to 2000.

    Returns:
        float: The extrapolated sum, close to 1/(4(order+1)).
    """
    tail = 1.0 / (math.pi**2 * (count + order / 2 + 0.25))
    return rayleigh_partial_sum(order, count) + tail


def mittag_leffler_ratio(
    order: float, t: float, count: int = DEFAULT_SERIES_TERMS
) -> SeriesEstimate:
    """Mittag-Leffler series for J_{order+1}(t)/J_order(t).

    Sums 2t/(j_k^2 - t^2) over the first ``count`` zeros and adds the integral
    of the same expression over the asymptotic zero density beyond them.

    Args:
        order (float): Nonnegative order.
        t (float): Argument with |t| < j_{order,1}.
        count (int, optional): Number of zeros summed explicitly.
            Defaults to 10000.

    Returns:
        SeriesEstimate: Value (tail included) and the magnitude of the tail.

    Raises:
        PreconditionError: If |t| >= j_{order,1}.
    """
    if order < 0:
        raise PreconditionError(f"alpha (Bessel order) must be nonnegative, got {order}")
    if abs(t) >= first_zero(order):
        raise PreconditionError(
            f"|t| = {abs(t)} must stay below the first zero {first_zero(order)}"
        )
    zeros = zero_table(order, count).zeros
    partial = math.fsum(2 * t / (zeros**2 - t**2))
    edge = math.pi * (count + order / 2 + 0.25)
    tail = math.log((edge + t) / (edge - t)) / math.pi
    return SeriesEstimate(value=partial + tail, tail_bound=abs(tail), terms=count)


def mittag_leffler_log_derivative(
    order: float, t: float, count: int = DEFAULT_SERIES_TERMS
) -> SeriesEstimate:
    """Series for t J'_order(t)/J_order(t) = order - sum 2t^2/(j_k^2 - t^2).

    Args:
        order (float): Nonnegative order.
        t (float): Argument with |t| < j_{order,1}.
        count (int, optional): Number of zeros summed explicitly.
            Defaults to 10000.

    Returns:
        SeriesEstimate: The series value with its tail magnitude.
    """
    ratio = mittag_leffler_ratio(order, t, count)
    return SeriesEstimate(
        value=order - t * ratio.value,
        tail_bound=abs(t) * ratio.tail_bound,
        terms=count,
    )
