"""Discrete anisotropic decreasing symmetrization."""

import logging
import math
from typing import List, Sequence, Tuple

import numpy as np

from minkowski_bpv.exceptions import ConvergenceError
from minkowski_bpv.norm import NormSpec, polar_eval, unit_ball_volume
from minkowski_bpv.rearrange.grid_function import GridFunction

logger = logging.getLogger(__name__)

RADIUS_MARGIN = 1.1
MAX_GROWTH_STEPS = 20


def _lattice_offset(origin: float, h: float) -> float:
    """Offset of the lattice modulo h, snapped to 0 or 1/2 when close."""
    frac = origin / h - round(origin / h)
    if abs(frac) < 1e-9:
        return 0.0
    if abs(abs(frac) - 0.5) < 1e-9:
        return 0.5
    return frac


def _target_axis(size_in: int, needed_half: int, offset: float, h: float) -> Tuple[float, int]:
    """Origin and size of an output axis symmetric about 0 (up to the offset)."""
    if offset == 0.5:
        size = max(2 * needed_half, size_in + size_in % 2)
        return (-(size // 2) + 0.5) * h, size
    size = max(2 * needed_half + 1, size_in + (1 - size_in % 2))
    return (-((size - 1) // 2) + offset) * h, size


def _needed_half_widths(u: GridFunction, spec: NormSpec, count: int) -> List[int]:
    if count == 0:
        return [1] * u.n
    radius = (count * u.cell_volume / unit_ball_volume(spec)) ** (1.0 / u.n)
    # the Wulff ball of radius R spans R * F_*(e_i) along axis i
    reach = np.asarray(polar_eval(spec, np.eye(u.n))) * radius * RADIUS_MARGIN
    return [int(math.ceil(r / u.h)) + 2 for r in reach]


def symmetrize(u: GridFunction, spec: NormSpec) -> GridFunction:
    """Anisotropic decreasing symmetrization by sort-and-reassign.

    Cell values are sorted in decreasing order and assigned to the cells of
    an output lattice (same cell width, same offset modulo h, symmetric about
    0) in increasing order of F(center), ties broken by row-major index. The
    output lattice is large enough for the support to stay away from its
    boundary.

    Args:
        u (GridFunction): Nonnegative input function.
        spec (NormSpec): The norm whose Wulff balls become the level sets.

    Returns:
        GridFunction: The symmetrized function u*.
    """
    count = u.support_count()
    offsets = [_lattice_offset(o, u.h) for o in u.origin]
    half = _needed_half_widths(u, spec, count)
    descending = np.sort(u.values.ravel())[::-1]

    for _ in range(MAX_GROWTH_STEPS):
        axes = [_target_axis(s, m, off, u.h) for s, m, off in zip(u.shape, half, offsets)]
        origin = tuple(a[0] for a in axes)
        shape = tuple(a[1] for a in axes)
        target = GridFunction(np.zeros(shape), origin, u.h)

        distances = target.norm_at_centers(spec).ravel()
        order = np.lexsort((np.arange(distances.size), distances))
        flat = np.zeros(distances.size)
        filled = min(descending.size, flat.size)
        flat[order[:filled]] = descending[:filled]
        result = GridFunction(flat.reshape(shape), origin, u.h)
        if count == 0 or result.is_boundary_vanishing():
            return result
        half = [m + 2 for m in half]

    raise ConvergenceError("symmetrized support does not fit the output lattice")


def equimeasurability_counts(
    u: GridFunction, v: GridFunction, thresholds: Sequence[float]
) -> List[Tuple[float, int, int]]:
    """Cell counts of {u > c} and {v > c} for each threshold c."""
    return [
        (float(c), int(np.count_nonzero(u.values > c)), int(np.count_nonzero(v.values > c)))
        for c in thresholds
    ]
