"""Positive zeros of Bessel functions of the first kind."""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Dict

import numpy as np
from scipy import special

from minkowski_bpv.exceptions import ConvergenceError, PreconditionError

logger = logging.getLogger(__name__)

ZERO_TOLERANCE = 1e-11
SCAN_STEP = 0.25  # consecutive zeros are more than 2.9 apart
BISECTION_STEPS = 40
NEWTON_STEPS = 3
MAX_SCAN_EXTENSIONS = 50


@dataclass(frozen=True, eq=False)
class ZeroTable:
    """Increasing positive zeros j_{alpha,1..K} of J_alpha."""

    alpha: float
    zeros: np.ndarray = field(repr=False)
    tolerance: float = ZERO_TOLERANCE

    def __post_init__(self) -> None:
        zeros = np.array(self.zeros, dtype=float)
        zeros.flags.writeable = False
        object.__setattr__(self, "zeros", zeros)

    def __len__(self) -> int:
        return len(self.zeros)

    def zero(self, k: int) -> float:
        """Return the k-th zero (1-based)."""
        if k < 1 or k > len(self.zeros):
            raise PreconditionError(f"zero index {k} outside 1..{len(self.zeros)}")
        return float(self.zeros[k - 1])

    def to_dict(self) -> Dict[str, Any]:
        """Convert the table to a dictionary.

        Returns:
            Dict[str, Any]: The order, zeros and tolerance.
        """
        return {
            "alpha": self.alpha,
            "zeros": [float(z) for z in self.zeros],
            "tolerance": self.tolerance,
        }


def mcmahon_estimate(order: float, k: int) -> float:
    """Two-term McMahon approximation of j_{order,k}."""
    beta = (k + order / 2 - 0.25) * math.pi
    return beta - (4 * order**2 - 1) / (8 * beta)


def _bucket(count: int) -> int:
    # share cached tables between nearby requests
    return max(16, 1 << (count - 1).bit_length())


@lru_cache(maxsize=64)
def _zero_table(order: float, count: int) -> ZeroTable:
    """Scan, bracket and refine the first ``count`` zeros; order > -1."""
    start = 0.5 * order if order >= 1 else 1e-3
    upper = max(mcmahon_estimate(order, count), order + count * math.pi) + 2 * math.pi

    for _ in range(MAX_SCAN_EXTENSIONS):
        grid = np.arange(start, upper + SCAN_STEP, SCAN_STEP)
        values = special.jv(order, grid)
        signs = np.sign(values)
        brackets = np.nonzero((signs[:-1] != 0) & (signs[:-1] * signs[1:] <= 0))[0]
        if brackets.size >= count:
            break
        upper += max(2 * math.pi, 0.5 * (upper - start))
    else:
        raise ConvergenceError(
            f"found only {brackets.size} of {count} sign changes of J_{order}"
        )

    brackets = brackets[:count]
    lo = grid[brackets].copy()
    hi = grid[brackets + 1].copy()
    f_lo = values[brackets].copy()

    for _ in range(BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        f_mid = special.jv(order, mid)
        keep_hi = np.sign(f_mid) == np.sign(f_lo)
        lo = np.where(keep_hi, mid, lo)
        f_lo = np.where(keep_hi, f_mid, f_lo)
        hi = np.where(keep_hi, hi, mid)

    # Newton polish with J' = -J_{a+1} + (a/t) J_a, kept inside the bracket
    roots = 0.5 * (lo + hi)
    for _ in range(NEWTON_STEPS):
        f = special.jv(order, roots)
        df = -special.jv(order + 1, roots) + (order / roots) * f
        candidate = roots - np.divide(f, df, out=np.zeros_like(f), where=df != 0)
        inside = (candidate >= lo) & (candidate <= hi)
        roots = np.where(inside, candidate, roots)

    residual = np.abs(special.jv(order, roots))
    if np.any(residual > ZERO_TOLERANCE) or np.any(np.diff(roots) <= 0):
        worst = int(np.argmax(residual))
        raise ConvergenceError(
            f"zero {worst + 1} of J_{order} not certified: residual {residual[worst]:.3e}"
        )

    logger.debug(
        f"Certified {count} zeros of J_{order}, max residual {residual.max():.2e}"
    )
    return ZeroTable(alpha=order, zeros=roots)


def zero_table(order: float, count: int) -> ZeroTable:
    """Zero table for any order > -1 (internal callers such as Rayleigh sums)."""
    if not math.isfinite(order) or order <= -1:
        raise PreconditionError(f"order must exceed -1, got {order}")
    if count < 1:
        raise PreconditionError(f"zero count must be positive, got {count}")
    table = _zero_table(float(order), _bucket(count))
    if len(table) == count:
        return table
    return ZeroTable(alpha=table.alpha, zeros=table.zeros[:count])


def bessel_zeros(order: float, count: int) -> ZeroTable:
    """Compute the first ``count`` positive zeros of J_order.

    Args:
        order (float): Nonnegative order.
        count (int): Number of zeros.

    Returns:
        ZeroTable: The certified zeros.

    Raises:
        PreconditionError: On a negative order or non-positive count.
        ConvergenceError: If a zero cannot be certified.
    """
    if order < 0:
        raise PreconditionError(f"alpha (Bessel order) must be nonnegative, got {order}")
    return zero_table(order, count)


def bessel_zero(order: float, k: int) -> float:
    """Return j_{order,k}, the k-th positive zero of J_order.

    Args:
        order (float): Nonnegative order.
        k (int): Zero index, starting at 1.

    Returns:
        float: The zero.
    """
    if k < 1:
        raise PreconditionError(f"zero index must be >= 1, got {k}")
    return bessel_zeros(order, k).zero(k)


def first_zero(order: float) -> float:
    """Shorthand for j_order = j_{order,1}."""
    return bessel_zero(order, 1)
