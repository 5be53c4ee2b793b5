"""Bessel functions of the first kind of real nonnegative order."""

import math
from typing import Optional, Union

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from minkowski_bpv.exceptions import PreconditionError

Real = Union[float, np.ndarray]


def _check_order(order: float) -> None:
    if not math.isfinite(order) or order < 0:
        raise PreconditionError(f"alpha (Bessel order) must be nonnegative, got {order}")


def _as_argument(t: ArrayLike) -> np.ndarray:
    ts = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(ts)) or np.any(ts < 0):
        raise PreconditionError("Bessel argument must be finite and nonnegative")
    return ts


def _unwrap(values: np.ndarray, like: ArrayLike) -> Real:
    return float(values) if np.ndim(like) == 0 else values


def bessel_j(order: float, t: ArrayLike) -> Real:
    """Evaluate J_order(t).

    Args:
        order (float): Nonnegative order.
        t (ArrayLike): Nonnegative argument(s).

    Returns:
        Real: J_order(t), a float for scalar input and an array otherwise.

    Raises:
        PreconditionError: If the order or an argument is negative.
    """
    _check_order(order)
    ts = _as_argument(t)
    return _unwrap(special.jv(order, ts), t)


def bessel_j_prime(order: float, t: ArrayLike) -> Real:
    """Evaluate J'_order(t) = -J_{order+1}(t) + (order/t) J_order(t).

    At t = 0 the limit value is returned, which requires order >= 1.

    Args:
        order (float): Nonnegative order.
        t (ArrayLike): Nonnegative argument(s).

    Returns:
        Real: The derivative.

    Raises:
        PreconditionError: On negative input, or t = 0 with order < 1.
    """
    _check_order(order)
    ts = _as_argument(t)
    at_zero = ts == 0
    if order < 1 and np.any(at_zero):
        raise PreconditionError("J' at t = 0 is only evaluated for order >= 1")
    safe = np.where(at_zero, 1.0, ts)
    values = -special.jv(order + 1, safe) + (order / safe) * special.jv(order, safe)
    values = np.where(at_zero, special.jvp(order, 0.0), values)
    return _unwrap(values, t)


def bessel_j_series(order: float, t: ArrayLike, terms: Optional[int] = None) -> Real:
    """Evaluate J_order(t) by its ascending power series.

    The sum is accumulated with ``math.fsum``; it is used as an independent
    oracle for moderate arguments (t up to about 20).

    Args:
        order (float): Nonnegative order.
        t (ArrayLike): Nonnegative argument(s).
        terms (Optional[int], optional): Number of series terms. Defaults to
            ``2*t + 40``.

    Returns:
        Real: The series value.
    """
    _check_order(order)
    ts = _as_argument(t)
    flat = np.atleast_1d(ts).ravel()
    out = np.empty_like(flat)
    for i, x in enumerate(flat):
        if x == 0.0:
            out[i] = 1.0 if order == 0 else 0.0
            continue
        count = terms if terms is not None else int(2 * x) + 40
        k = np.arange(count, dtype=float)
        log_terms = (
            (2 * k + order) * math.log(x / 2)
            - special.gammaln(k + 1)
            - special.gammaln(k + order + 1)
        )
        signs = np.where(k % 2 == 0, 1.0, -1.0)
        out[i] = math.fsum(signs * np.exp(log_terms))
    return _unwrap(out.reshape(ts.shape), t)


def unit_ball_volume_euclidean(n: int) -> float:
    """omega_n = pi^(n/2) / Gamma(n/2 + 1), the volume of the Euclidean unit ball."""
    if n < 1:
        raise PreconditionError(f"dimension must be positive, got {n}")
    return math.exp((n / 2) * math.log(math.pi) - special.gammaln(n / 2 + 1))
