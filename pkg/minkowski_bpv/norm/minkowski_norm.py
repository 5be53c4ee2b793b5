"""Evaluation of Minkowski norms, their polar transforms and fundamental tensors."""

import logging
from functools import lru_cache
from typing import Union

import numpy as np
from numpy.typing import ArrayLike
from scipy import interpolate, optimize

from minkowski_bpv.exceptions import ConvergenceError, NormError, PreconditionError
from minkowski_bpv.norm.norm_spec import NormSpec

logger = logging.getLogger(__name__)

POLAR_TOLERANCE = 1e-8
POLAR_SCAN_SIZE = 720
POLAR_TABLE_SIZE = 1024
HESSIAN_STEP = 1e-4
SAMPLE_CHUNK = 1000

Real = Union[float, np.ndarray]


def _as_vectors(spec: NormSpec, x: ArrayLike) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0 or arr.shape[-1] != spec.n:
        raise PreconditionError(
            f"expected vectors of dimension {spec.n}, got shape {arr.shape}"
        )
    if not np.all(np.isfinite(arr)):
        raise PreconditionError("vectors must be finite")
    return arr


def _unwrap(values: np.ndarray, arr: np.ndarray) -> Real:
    return float(values) if arr.ndim == 1 else values


def _lp_norm(x: np.ndarray, p: float) -> np.ndarray:
    scale = np.max(np.abs(x), axis=-1)
    safe = np.where(scale > 0, scale, 1.0)
    ratio = np.abs(x) / safe[..., None]
    return scale * np.sum(ratio**p, axis=-1) ** (1.0 / p)


def _lp_gradient(x: np.ndarray, p: float) -> np.ndarray:
    norm = _lp_norm(x, p)
    safe = np.where(norm > 0, norm, 1.0)
    return np.sign(x) * (np.abs(x) / safe[..., None]) ** (p - 1)


def _quadratic_norm(x: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    form = np.einsum("...i,ij,...j->...", x, matrix, x)
    return np.sqrt(np.maximum(form, 0.0))


def _base_norm(spec: NormSpec, x: np.ndarray) -> np.ndarray:
    if spec.family == "lp":
        return _lp_norm(x, spec.p)
    if spec.family == "quadratic":
        return _quadratic_norm(x, spec.matrix_array())
    w0, w1 = spec.weights
    return w0 * _lp_norm(x, spec.p) + w1 * _quadratic_norm(x, spec.matrix_array())


def norm_eval(spec: NormSpec, x: ArrayLike) -> Real:
    """Evaluate F(x) for one vector or a stack of vectors along the last axis.

    Args:
        spec (NormSpec): The norm.
        x (ArrayLike): Vector(s) of dimension ``spec.n``.

    Returns:
        Real: F(x); a float for a single vector.
    """
    arr = _as_vectors(spec, x)
    return _unwrap(spec.kappa * _base_norm(spec, arr), arr)


def _mix_dual_gap(spec: NormSpec, xi: np.ndarray, v: np.ndarray) -> tuple:
    """Primal value and dual upper bound for the unscaled mix norm at direction v.

    Any split xi = xi1 + xi2 gives the upper bound
    max(|xi1|_q / w0, |xi2|_{A^-1} / w1); the split built from the gradient at v
    is exact when v is the maximizer.
    """
    w0, w1 = spec.weights
    matrix = spec.matrix_array()
    q = spec.p / (spec.p - 1)
    lower = float(xi @ v / _base_norm(spec, v))
    xi1 = lower * w0 * _lp_gradient(v, spec.p)
    xi2 = xi - xi1
    upper = max(
        float(_lp_norm(xi1, q)) / w0,
        float(_quadratic_norm(xi2, np.linalg.inv(matrix))) / w1,
    )
    return lower, upper


def _mix_objective(spec: NormSpec, xi: np.ndarray):
    w0, w1 = spec.weights
    matrix = spec.matrix_array()

    def value_and_grad(v: np.ndarray):
        lp_part = _lp_norm(v, spec.p)
        quad_part = _quadratic_norm(v, matrix)
        base = w0 * lp_part + w1 * quad_part
        grad_base = w0 * _lp_gradient(v, spec.p) + w1 * (matrix @ v) / quad_part
        pairing = xi @ v
        value = -pairing / base
        grad = -xi / base + pairing * grad_base / base**2
        return value, grad

    return value_and_grad


def _mix_support(spec: NormSpec, xi: np.ndarray) -> float:
    """Certified sup of xi.v / base(v) for the unscaled mix norm."""
    if not np.any(xi):
        return 0.0
    n = spec.n
    if n == 2:
        angles = np.linspace(0.0, 2 * np.pi, POLAR_SCAN_SIZE, endpoint=False)
        dirs = np.stack([np.cos(angles), np.sin(angles)], axis=-1)
        scan = dirs @ xi / _base_norm(spec, dirs)
        best = int(np.argmax(scan))
        width = 2 * np.pi / POLAR_SCAN_SIZE

        def negative(theta: float) -> float:
            v = np.array([np.cos(theta), np.sin(theta)])
            return -float(xi @ v / _base_norm(spec, v))

        result = optimize.minimize_scalar(
            negative,
            bounds=(angles[best] - width, angles[best] + width),
            method="bounded",
            options={"xatol": 1e-13},
        )
        v = np.array([np.cos(result.x), np.sin(result.x)])
    else:
        rng = np.random.default_rng(n)
        dirs = rng.standard_normal((4000, n))
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        scan = dirs @ xi / _base_norm(spec, dirs)
        v0 = dirs[int(np.argmax(scan))]
        result = optimize.minimize(
            _mix_objective(spec, xi),
            v0,
            jac=True,
            method="BFGS",
            options={"gtol": 1e-14, "maxiter": 500},
        )
        v = result.x / np.linalg.norm(result.x)

    lower, upper = _mix_dual_gap(spec, xi, v)
    if upper - lower > POLAR_TOLERANCE * abs(upper):
        raise ConvergenceError(
            f"polar supremum not certified: bounds {lower:.12g} and {upper:.12g}"
        )
    return lower


@lru_cache(maxsize=32)
def _mix_support_table(spec: NormSpec) -> interpolate.CubicSpline:
    angles = np.linspace(0.0, 2 * np.pi, POLAR_TABLE_SIZE + 1)
    values = np.array(
        [_mix_support(spec, np.array([np.cos(a), np.sin(a)])) for a in angles[:-1]]
    )
    values = np.append(values, values[0])
    return interpolate.CubicSpline(angles, values, bc_type="periodic")


def _unit_polar(spec: NormSpec, cov: np.ndarray, fast: bool) -> np.ndarray:
    if spec.family == "lp":
        return _lp_norm(cov, spec.p / (spec.p - 1))
    if spec.family == "quadratic":
        return _quadratic_norm(cov, np.linalg.inv(spec.matrix_array()))
    w0, w1 = spec.weights
    if w1 == 0.0:
        return _lp_norm(cov, spec.p / (spec.p - 1)) / w0
    if w0 == 0.0:
        return _quadratic_norm(cov, np.linalg.inv(spec.matrix_array())) / w1
    flat = cov.reshape(-1, spec.n)
    if fast and spec.n == 2:
        table = _mix_support_table(spec.unscaled())
        radius = np.hypot(flat[:, 0], flat[:, 1])
        angle = np.mod(np.arctan2(flat[:, 1], flat[:, 0]), 2 * np.pi)
        values = radius * table(angle)
    else:
        values = np.array([_mix_support(spec, row) for row in flat])
    return values.reshape(cov.shape[:-1])


def polar_eval(spec: NormSpec, xi: ArrayLike) -> Real:
    """Evaluate the polar transform F_*(xi) = sup_{F(v)=1} xi.v.

    Closed forms are used for the l^p family (dual exponent) and the quadratic
    family (inverse matrix); the mix family uses a numerical supremum
    certified to relative accuracy 1e-8 by a duality gap.

    Args:
        spec (NormSpec): The norm.
        xi (ArrayLike): Covector(s) of dimension ``spec.n``.

    Returns:
        Real: F_*(xi); a float for a single covector.

    Raises:
        ConvergenceError: If a numerical supremum cannot be certified.
    """
    cov = _as_vectors(spec, xi)
    return _unwrap(_unit_polar(spec, cov, fast=False) / spec.kappa, cov)


def polar_eval_fast(spec: NormSpec, xi: ArrayLike) -> Real:
    """Batched polar transform for energy sums.

    Identical to :func:`polar_eval` except for mix norms in the plane, which
    interpolate a periodic spline of certified support values.
    """
    cov = _as_vectors(spec, xi)
    return _unwrap(_unit_polar(spec, cov, fast=True) / spec.kappa, cov)


def fundamental_tensor(spec: NormSpec, v: ArrayLike, step: float = HESSIAN_STEP) -> np.ndarray:
    """Hessian g_v of F^2/2 at v by central differences.

    Args:
        spec (NormSpec): The norm.
        v (ArrayLike): Nonzero vector(s) of dimension ``spec.n``.
        step (float, optional): Relative difference step. Defaults to 1e-4.

    Returns:
        np.ndarray: Array of shape ``v.shape + (n,)``.
    """
    arr = _as_vectors(spec, v)
    length = np.linalg.norm(arr, axis=-1)
    if np.any(length == 0):
        raise PreconditionError("the fundamental tensor is defined away from 0")
    h = step * length[..., None]
    eye = np.eye(spec.n)

    def half_square(points: np.ndarray) -> np.ndarray:
        return 0.5 * (spec.kappa * _base_norm(spec, points)) ** 2

    center = half_square(arr)
    hessian = np.empty(arr.shape + (spec.n,))
    for i in range(spec.n):
        ei = h * eye[i]
        hessian[..., i, i] = (
            half_square(arr + ei) - 2 * center + half_square(arr - ei)
        ) / h[..., 0] ** 2
        for j in range(i + 1, spec.n):
            ej = h * eye[j]
            mixed = (
                half_square(arr + ei + ej)
                - half_square(arr + ei - ej)
                - half_square(arr - ei + ej)
                + half_square(arr - ei - ej)
            ) / (4 * h[..., 0] ** 2)
            hessian[..., i, j] = mixed
            hessian[..., j, i] = mixed
    return hessian


def _nested_directions(n: int, count: int, seed: int) -> np.ndarray:
    """Unit directions whose prefixes are shared across budgets."""
    chunks = []
    for index in range(-(-count // SAMPLE_CHUNK)):
        rng = np.random.default_rng([seed, index])
        chunks.append(rng.standard_normal((SAMPLE_CHUNK, n)))
    dirs = np.concatenate(chunks)[:count]
    return dirs / np.linalg.norm(dirs, axis=1, keepdims=True)


def uniformity_constant(spec: NormSpec, sample_budget: int = 2000, seed: int = 0) -> float:
    """Estimate l_F = inf g_v(y,y) / g_w(y,y) over directions y, v, w.

    The estimate is a minimum over sampled directions and therefore an upper
    bound of the infimum; larger budgets extend the same sample sequence, so
    the estimate never increases with the budget.

    Args:
        spec (NormSpec): The norm.
        sample_budget (int, optional): Number of sampled directions, at least
            1000. Defaults to 2000.
        seed (int, optional): Sampling seed. Defaults to 0.

    Returns:
        float: The estimate in [0, 1]; exactly 1 for quadratic norms.

    Raises:
        NormError: If a sampled Hessian is numerically indefinite.
    """
    if sample_budget < 1000:
        raise PreconditionError(f"sample budget must be >= 1000, got {sample_budget}")
    if spec.family == "quadratic":
        return 1.0

    dirs = _nested_directions(spec.n, sample_budget, seed)
    tensors = fundamental_tensor(spec, dirs)
    eigenvalues = np.linalg.eigvalsh(tensors)
    if np.any(eigenvalues[:, 0] < -1e-6 * eigenvalues[:, -1]):
        raise NormError("fundamental tensor is indefinite; not a Minkowski norm")

    estimate = 1.0
    for start in range(0, sample_budget, SAMPLE_CHUNK):
        y = dirs[start : start + SAMPLE_CHUNK]
        forms = np.zeros((len(y), sample_budget))
        for i in range(spec.n):
            for j in range(spec.n):
                forms += (y[:, i] * y[:, j])[:, None] * tensors[None, :, i, j]
        forms = np.maximum(forms, 0.0)
        ratios = forms.min(axis=1) / forms.max(axis=1)
        estimate = min(estimate, float(ratios.min()))

    logger.debug(f"Uniformity constant estimate {estimate:.6f} from {sample_budget} samples")
    return estimate


def eikonal_residual(spec: NormSpec, x: ArrayLike, step: float = 1e-6) -> Real:
    """Residual F_*(grad F(x)) - 1 of the eikonal identity for the gauge F.

    Args:
        spec (NormSpec): The norm.
        x (ArrayLike): Nonzero point(s).
        step (float, optional): Relative central-difference step.
            Defaults to 1e-6.

    Returns:
        Real: The residual.
    """
    arr = _as_vectors(spec, x)
    length = np.linalg.norm(arr, axis=-1)
    if np.any(length == 0):
        raise PreconditionError("the eikonal identity holds away from 0")
    h = step * length[..., None]
    grad = np.empty_like(arr)
    for i in range(spec.n):
        e = np.zeros(spec.n)
        e[i] = 1.0
        grad[..., i] = (
            spec.kappa * _base_norm(spec, arr + h * e)
            - spec.kappa * _base_norm(spec, arr - h * e)
        ) / (2 * h[..., 0])
    residual = _unit_polar(spec, grad, fast=False) / spec.kappa - 1.0
    return _unwrap(residual, arr)
