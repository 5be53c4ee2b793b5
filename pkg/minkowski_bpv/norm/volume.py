"""Unit-ball volumes and Busemann-Hausdorff normalization of Minkowski norms."""

import logging
import math
from dataclasses import dataclass
from functools import reduce
from typing import Tuple

import numpy as np
from scipy import integrate, special, stats
from scipy.stats import qmc

from minkowski_bpv.norm.minkowski_norm import _base_norm
from minkowski_bpv.norm.norm_spec import NormSpec
from minkowski_bpv.specfun import unit_ball_volume_euclidean

logger = logging.getLogger(__name__)

GAUSS_NODES = 48
HYPERSPHERICAL_NODES = 24
HYPERSPHERICAL_MAX_DIMENSION = 5
SOBOL_LOG2_POINTS = 20
SOBOL_REPLICATES = 8
VOLUME_SEED = 20240101


@dataclass(frozen=True)
class VolumeEstimate:
    """Volume of {F < 1} with an error estimate and the method used."""

    value: float
    error: float
    method: str


def omega(n: int) -> float:
    """Volume of the Euclidean unit ball in R^n."""
    return unit_ball_volume_euclidean(n)


def _planar_mix_volume(spec: NormSpec) -> float:
    def integrand(theta: float) -> float:
        v = np.array([math.cos(theta), math.sin(theta)])
        return 0.5 / float(_base_norm(spec, v)) ** 2

    # split at the axes where the l^p part loses smoothness
    total = 0.0
    for k in range(4):
        value, _ = integrate.quad(
            integrand, k * math.pi / 2, (k + 1) * math.pi / 2, epsabs=0.0, epsrel=1e-12
        )
        total += value
    return total


def _spatial_mix_volume(spec: NormSpec) -> float:
    nodes, weights = np.polynomial.legendre.leggauss(GAUSS_NODES)

    def panel(a: float, b: float):
        return 0.5 * (b - a) * nodes + 0.5 * (a + b), 0.5 * (b - a) * weights

    total = 0.0
    for i in range(2):
        theta, w_theta = panel(i * math.pi / 2, (i + 1) * math.pi / 2)
        for k in range(4):
            phi, w_phi = panel(k * math.pi / 2, (k + 1) * math.pi / 2)
            tt, pp = np.meshgrid(theta, phi, indexing="ij")
            dirs = np.stack(
                [np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1
            )
            values = np.sin(tt) / _base_norm(spec, dirs) ** 3 / 3
            total += float(w_theta @ values @ w_phi)
    return total


def _composite_rule(length: float, panels: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(HYPERSPHERICAL_NODES)
    width = length / panels
    starts = width * np.arange(panels)
    points = (starts[:, None] + 0.5 * width * (nodes[None, :] + 1)).ravel()
    return points, np.tile(0.5 * width * weights, panels)


def _sphere_directions(angles: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Unit vectors and surface Jacobian for hyperspherical angles along the last axis."""
    sines = np.cumprod(np.sin(angles), axis=-1)
    leading = np.concatenate([np.ones(angles.shape[:-1] + (1,)), sines[..., :-1]], axis=-1)
    dirs = np.concatenate([leading * np.cos(angles), sines[..., -1:]], axis=-1)
    polar = angles.shape[-1] - 1
    jacobian = np.ones(angles.shape[:-1])
    for i in range(polar):
        jacobian = jacobian * np.sin(angles[..., i]) ** (polar - i)
    return dirs, jacobian


def _hyperspherical_mix_volume(spec: NormSpec) -> float:
    # panels end where a coordinate vanishes, so the l^p part is smooth on each
    n = spec.n
    polar, w_polar = _composite_rule(math.pi, 2)
    azimuth, w_azimuth = _composite_rule(2 * math.pi, 4)
    rest = [polar] * (n - 3) + [azimuth]
    weight = reduce(np.multiply.outer, [w_polar] * (n - 3) + [w_azimuth])
    grid = np.stack(np.meshgrid(*rest, indexing="ij"), axis=-1)
    total = 0.0
    for first, w_first in zip(polar, w_polar):
        angles = np.concatenate([np.full(grid.shape[:-1] + (1,), first), grid], axis=-1)
        dirs, jacobian = _sphere_directions(angles)
        total += w_first * float(np.sum(weight * jacobian * _base_norm(spec, dirs) ** (-n)))
    return total / n


def _sampled_mix_volume(spec: NormSpec) -> VolumeEstimate:
    means = []
    for replicate in range(SOBOL_REPLICATES):
        sampler = qmc.Sobol(d=spec.n, scramble=True, seed=VOLUME_SEED + replicate)
        points = sampler.random_base2(SOBOL_LOG2_POINTS)
        gaussian = stats.norm.ppf(np.clip(points, 1e-12, 1 - 1e-12))
        dirs = gaussian / np.linalg.norm(gaussian, axis=1, keepdims=True)
        means.append(math.fsum(_base_norm(spec, dirs) ** (-spec.n)) / len(dirs))
    means = np.array(means)
    value = omega(spec.n) * float(means.mean())
    error = omega(spec.n) * float(means.std(ddof=1)) / math.sqrt(SOBOL_REPLICATES)
    return VolumeEstimate(value=value, error=error, method="quasi_monte_carlo")


def _unscaled_volume(spec: NormSpec) -> VolumeEstimate:
    n = spec.n
    if spec.family == "lp":
        p = spec.p
        value = (2 * special.gamma(1 + 1 / p)) ** n / special.gamma(1 + n / p)
        return VolumeEstimate(value=float(value), error=0.0, method="closed_form")
    if spec.family == "quadratic":
        value = omega(n) / math.sqrt(np.linalg.det(spec.matrix_array()))
        return VolumeEstimate(value=value, error=0.0, method="closed_form")
    if n == 2:
        return VolumeEstimate(_planar_mix_volume(spec), 0.0, "adaptive_quadrature")
    if n == 3:
        return VolumeEstimate(_spatial_mix_volume(spec), 0.0, "gauss_legendre")
    if n <= HYPERSPHERICAL_MAX_DIMENSION:
        return VolumeEstimate(_hyperspherical_mix_volume(spec), 0.0, "gauss_legendre")
    return _sampled_mix_volume(spec)


def volume_estimate(spec: NormSpec) -> VolumeEstimate:
    """Volume of the unit ball {F < 1} with its error estimate.

    Args:
        spec (NormSpec): The norm.

    Returns:
        VolumeEstimate: Closed forms for l^p and quadratic norms, deterministic
            quadrature for mix norms up to dimension 5, and scrambled Sobol
            sampling with a fixed seed in higher dimension.
    """
    base = _unscaled_volume(spec)
    scale = spec.kappa ** (-spec.n)
    return VolumeEstimate(base.value * scale, base.error * scale, base.method)


def unit_ball_volume(spec: NormSpec) -> float:
    """Volume of the unit ball {F < 1}."""
    return volume_estimate(spec).value


def normalize(spec: NormSpec) -> NormSpec:
    """Rescale the norm so that its unit ball has volume omega_n.

    Args:
        spec (NormSpec): The norm.

    Returns:
        NormSpec: The rescaled norm.
    """
    base = _unscaled_volume(spec).value
    kappa = (base / omega(spec.n)) ** (1.0 / spec.n)
    logger.debug(f"Normalized {spec.family} norm: kappa {spec.kappa:.12g} -> {kappa:.12g}")
    return spec.with_kappa(kappa)


def is_normalized(spec: NormSpec, rtol: float = 1e-6) -> bool:
    """Whether the unit ball volume equals omega_n within ``rtol``."""
    return abs(unit_ball_volume(spec) / omega(spec.n) - 1.0) <= rtol
