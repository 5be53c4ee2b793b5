"""Invariant suite run by the ``selftest`` command."""

import logging
import math
from typing import Callable, List, Tuple

import numpy as np
from pydantic import BaseModel

from minkowski_bpv.exceptions import BpvError
from minkowski_bpv.norm import NormSpec, normalize
from minkowski_bpv.pde import PdeProblem, necessity_identity, solve
from minkowski_bpv.rearrange import (
    cavalieri_check,
    polya_szego_check,
    random_bump_function,
    symmetrize,
)
from minkowski_bpv.rigidity import (
    Verdict,
    VolumeProfile,
    h_alpha_zero,
    integral_identity,
    monotone_check,
    rigidity_verdict,
)
from minkowski_bpv.specfun import (
    bessel_j,
    bessel_zero,
    bessel_zeros,
    first_zero,
    rayleigh_limit_estimate,
    recurrence_residual,
)
from minkowski_bpv.spectrum import (
    euler_lagrange_residual,
    extremal_profile,
    radial_eigen_min,
    verify_bpv_grid,
)

logger = logging.getLogger(__name__)

J0_REFERENCE = 2.404825557695773
KERNEL_PAIRS = ((0.0, 2), (1.0, 4))
EIGEN_PAIRS = ((0.0, 2), (1.0, 4))
GRID_HALF_WIDTH = 1.25
PDE_MESH = 3000


class CheckResult(BaseModel):
    """One named invariant with its measured value."""

    name: str
    value: float
    tolerance: float
    passed: bool
    detail: str = ""


class SelftestReport(BaseModel):
    """Every check of one selftest run; no timings, so reruns are identical."""

    seed: int
    checks: List[CheckResult]
    passed: bool


def _below(name: str, value: float, tolerance: float, detail: str = "") -> CheckResult:
    return CheckResult(
        name=name, value=value, tolerance=tolerance, passed=bool(value <= tolerance), detail=detail
    )


def _bessel_checks() -> List[CheckResult]:
    checks = [_below("j0_reference", abs(bessel_zero(0, 1) - J0_REFERENCE), 1e-10)]
    worst = 0.0
    for order in (0.0, 0.5, 1.0, 2.0):
        zeros = bessel_zeros(order, 20).zeros
        worst = max(worst, float(np.max(np.abs(bessel_j(order, zeros)))))
    checks.append(_below("zero_residuals", worst, 1e-11))
    t = np.linspace(0.1, 30.0, 300)
    recurrence = max(
        float(np.max(np.abs(recurrence_residual(order, t)))) for order in (1.0, 1.5, 2.0, 3.0)
    )
    checks.append(_below("recurrence", recurrence, 1e-10))
    for order in (0.0, 1.0):
        gap = abs(rayleigh_limit_estimate(order) - 1 / (4 * (order + 1)))
        checks.append(_below(f"rayleigh_sum[alpha={order}]", gap, 1e-6))
    return checks


def _spectrum_checks(eigen_mesh: int) -> List[CheckResult]:
    checks = []
    for alpha, n in EIGEN_PAIRS:
        mu, _ = radial_eigen_min(alpha, n, M=eigen_mesh)
        target = first_zero(alpha) ** 2
        checks.append(
            _below(f"radial_eigen[alpha={alpha},n={n}]", abs(mu - target) / target, 1e-3)
        )
        profile = extremal_profile(alpha, n, M=2000)
        residual = euler_lagrange_residual(profile, alpha, n, target)
        checks.append(
            _below(
                f"euler_lagrange[alpha={alpha},n={n}]",
                residual / profile.sup_norm(),
                1e-6,
            )
        )
    return checks


def _grid_checks(rng: np.random.Generator, grid_size: int, cases: int) -> List[CheckResult]:
    h = 2 * GRID_HALF_WIDTH / grid_size
    spec = normalize(NormSpec.euclidean(2))
    radius = 1.0
    checks = []
    worst_margin = math.inf
    worst_polya = -math.inf
    cavalieri = True
    for _ in range(cases):
        u = random_bump_function((grid_size, grid_size), h, rng, radius)
        report = verify_bpv_grid(u, spec, 0.0, math.pi * radius**2)
        worst_margin = min(worst_margin, report.margin / (report.slack * report.lhs))
        symmetric = symmetrize(u, spec)
        cavalieri = cavalieri and cavalieri_check(u, spec, symmetric).passed
        polya = polya_szego_check(u, spec, symmetric=symmetric)
        worst_polya = max(worst_polya, polya.lhs / polya.rhs - 1 - polya.slack)
    checks.append(
        CheckResult(
            name="bpv_random_margin",
            value=worst_margin,
            tolerance=-1.0,
            passed=bool(worst_margin >= -1.0),
            detail="smallest margin in units of the slack C h lhs",
        )
    )
    checks.append(CheckResult(name="cavalieri", value=0.0, tolerance=0.0, passed=cavalieri))
    checks.append(_below("polya_szego_excess", worst_polya, 0.0))
    return checks


def _rigidity_checks() -> List[CheckResult]:
    checks = []
    for alpha, n in KERNEL_PAIRS:
        checks.append(
            _below(f"integral_identity[alpha={alpha},n={n}]", abs(integral_identity(alpha, n)), 1e-8)
        )
        t0 = h_alpha_zero(alpha, n)
        checks.append(
            CheckResult(
                name=f"sign_change[alpha={alpha},n={n}]",
                value=t0,
                tolerance=0.0,
                passed=bool(0 < t0 < 1),
            )
        )
    worst = max(
        monotone_check(1, 1.0, 4, beta=2.0),
        monotone_check(2, 0.5, 3),
        monotone_check(3, 1.5, 5),
    )
    checks.append(_below("monotone_functions", worst, 1e-12))
    flat = rigidity_verdict(VolumeProfile.euclidean(3), 0.3, 3, 1.0)
    checks.append(
        CheckResult(name="verdict_euclidean", value=0.0, tolerance=0.0, passed=flat is Verdict.FLAT)
    )
    scaled = rigidity_verdict(VolumeProfile.scaled_flat(3, 0.8), 0.3, 3, 1.0)
    checks.append(
        CheckResult(
            name="verdict_scaled_flat",
            value=0.0,
            tolerance=0.0,
            passed=scaled is Verdict.BPV_VIOLATED,
        )
    )
    return checks


def _pde_checks(seed: int) -> List[CheckResult]:
    checks = []
    threshold = -first_zero(0.0) ** 2
    above = solve(PdeProblem(alpha=0.0, n=2, p=4.0, lam=0.0), M=PDE_MESH, attempts=2, seed=seed)
    checks.append(
        CheckResult(
            name="pde_existence_above_threshold",
            value=above.residual,
            tolerance=1e-5 * max(above.profile.sup_norm(), 1e-300),
            passed=above.nonzero,
        )
    )
    if above.nonzero:
        lhs, rhs = necessity_identity(above.problem, above.profile)
        checks.append(_below("pde_necessity_identity", abs(lhs - rhs) / abs(rhs), 1e-4))
    below = solve(
        PdeProblem(alpha=0.0, n=2, p=4.0, lam=threshold - 0.5), M=PDE_MESH, attempts=2, seed=seed
    )
    checks.append(
        CheckResult(
            name="pde_nonexistence_below_threshold",
            value=below.candidate_sup_norm,
            tolerance=1e-8,
            passed=not below.nonzero
            and not below.inconclusive
            and below.candidate_sup_norm < 1e-8,
        )
    )
    return checks


def run_selftest(
    seed: int = 0, eigen_mesh: int = 2000, grid_size: int = 48, random_cases: int = 5
) -> SelftestReport:
    """Run the invariant suite.

    A group that raises a library error is recorded as one failed check
    carrying the error message.

    Args:
        seed (int, optional): Seed of the random test functions. Defaults to 0.
        eigen_mesh (int, optional): Mesh size of the eigen solves. Defaults to 2000.
        grid_size (int, optional): Cells per axis of the planar grids. Defaults to 48.
        random_cases (int, optional): Random grid functions per run. Defaults to 5.

    Returns:
        SelftestReport: All checks and the overall outcome.
    """
    rng = np.random.default_rng(seed)
    groups: List[Tuple[str, Callable[[], List[CheckResult]]]] = [
        ("specfun", _bessel_checks),
        ("spectrum", lambda: _spectrum_checks(eigen_mesh)),
        ("rearrange", lambda: _grid_checks(rng, grid_size, random_cases)),
        ("rigidity", _rigidity_checks),
        ("pde", lambda: _pde_checks(seed)),
    ]
    checks: List[CheckResult] = []
    for name, group in groups:
        try:
            results = group()
        except BpvError as exc:
            logger.error(f"Selftest group {name} failed: {exc}")
            results = [
                CheckResult(name=name, value=math.nan, tolerance=0.0, passed=False, detail=str(exc))
            ]
        for result in results:
            logger.debug(f"{result.name}: {result.value:.3e} (passed={result.passed})")
        checks.extend(results)
    passed = all(check.passed for check in checks)
    logger.info(f"Selftest: {sum(c.passed for c in checks)}/{len(checks)} checks passed")
    return SelftestReport(seed=seed, checks=checks, passed=passed)
