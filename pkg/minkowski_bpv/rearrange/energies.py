"""Discrete integrals of grid functions: mass, Hardy term and Dirichlet energy."""

import math

import numpy as np

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.norm import NormSpec, polar_eval, polar_eval_fast
from minkowski_bpv.rearrange.grid_function import GridFunction


def mass(u: GridFunction) -> float:
    """Discrete integral of u^2 (cell sum times h^n)."""
    return math.fsum(u.values.ravel() ** 2) * u.cell_volume


def hardy_floor(spec: NormSpec, h: float) -> float:
    """Smallest F-value of a cell center whose cell does not contain 0.

    A center outside the origin box has sup-norm above h/2, so F exceeds
    (h/2) / max_i F_*(e_i) there.
    """
    unit = np.eye(spec.n)
    return 0.5 * h / float(np.max(polar_eval(spec, unit)))


def hardy_weights(u: GridFunction, spec: NormSpec) -> np.ndarray:
    """Weights 1/F(center)^2, capped on cells containing the origin.

    The cap is a fixed value of F, so the weight stays a non-increasing
    function of F on the whole lattice.
    """
    distance = np.maximum(u.norm_at_centers(spec), hardy_floor(spec, u.h))
    return 1.0 / distance**2


def hardy_integral(u: GridFunction, spec: NormSpec) -> float:
    """Discrete integral of u^2 / F^2."""
    weighted = u.values**2 * hardy_weights(u, spec)
    return math.fsum(weighted.ravel()) * u.cell_volume


def difference_covectors(u: GridFunction) -> np.ndarray:
    """Forward differences of u extended by zero outside the lattice.

    Returns:
        np.ndarray: Covectors of shape ``(N_1 + 1, ..., N_n + 1, n)``, one per
            cell of the lattice grown by one layer on the low side.
    """
    padded = np.pad(u.values, 1)
    base = tuple(slice(0, size + 1) for size in u.shape)
    covectors = np.empty(tuple(size + 1 for size in u.shape) + (u.n,))
    for axis in range(u.n):
        shifted = tuple(
            slice(1, size + 2) if k == axis else slice(0, size + 1)
            for k, size in enumerate(u.shape)
        )
        covectors[..., axis] = (padded[shifted] - padded[base]) / u.h
    return covectors


def dirichlet_energy(u: GridFunction, spec: NormSpec) -> float:
    """Discrete integral of F_*(Du)^2 with forward differences."""
    if spec.n != u.n:
        raise PreconditionError(f"norm dimension {spec.n} != lattice dimension {u.n}")
    dual = np.asarray(polar_eval_fast(spec, difference_covectors(u)))
    return math.fsum(dual.ravel() ** 2) * u.cell_volume


def hardy_functional(u: GridFunction, spec: NormSpec, mu: float) -> float:
    """K_mu(u) = int F_*(Du)^2 - mu int u^2/F^2."""
    return dirichlet_energy(u, spec) - mu * hardy_integral(u, spec)


def convexity_defect(
    u: GridFunction, v: GridFunction, t: float, spec: NormSpec, mu: float
) -> float:
    """K_mu(t u + (1-t) v) - t K_mu(u) - (1-t) K_mu(v); nonpositive when K_mu is convex.

    Args:
        u (GridFunction): First function.
        v (GridFunction): Second function on the same lattice.
        t (float): Interpolation parameter in [0, 1].
        spec (NormSpec): The norm.
        mu (float): Hardy coefficient.

    Returns:
        float: The convexity defect.
    """
    if u.shape != v.shape or u.origin != v.origin or u.h != v.h:
        raise PreconditionError("convexity is tested on a common lattice")
    if not 0.0 <= t <= 1.0:
        raise PreconditionError(f"t must lie in [0, 1], got {t}")
    blend = GridFunction(t * u.values + (1 - t) * v.values, u.origin, u.h)
    return (
        hardy_functional(blend, spec, mu)
        - t * hardy_functional(u, spec, mu)
        - (1 - t) * hardy_functional(v, spec, mu)
    )
