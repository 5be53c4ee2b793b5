"""Multistart Nehari descent with Newton polishing for the radial problem."""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy import sparse
from scipy.sparse import linalg as sparse_linalg

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.pde.discretization import FiniteVolumeSystem
from minkowski_bpv.pde.functional import energy, necessity_identity, radial_residual
from minkowski_bpv.pde.problem import PdeProblem, PdeReport, PdeSolution
from minkowski_bpv.specfun import first_zero
from minkowski_bpv.spectrum import graded_mesh

logger = logging.getLogger(__name__)

DEFAULT_MESH_SIZE = 3000
DEFAULT_PDE_GRADING = 1.0
DEFAULT_ATTEMPTS = 4
DEFAULT_RESIDUAL_FACTOR = 1e-5
DEFAULT_OFFSETS = (-1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 5.0)

ZERO_THRESHOLD = 1e-8
DESCENT_MAX_ITERATIONS = 1000
DESCENT_RTOL = 1e-13
MIN_STEP = 1.0 / 64
NEWTON_MAX_ITERATIONS = 50
NEWTON_STEP_RTOL = 1e-10
NEWTON_ROUNDING_RTOL = 1e-6
NEWTON_MIN_DAMPING = 1.0 / 1024

NONZERO_LABEL = "nonzero solution found"
NONEXISTENCE_LABEL = (
    "no nonzero solution found (consistent with existence exactly for lambda > -j_alpha^2)"
)
INCONCLUSIVE_LABEL = "inconclusive: no attempt converged"


@dataclass
class _Attempt:
    index: int
    g: np.ndarray
    collapsed: bool
    converged: bool
    iterations: int
    energy: float = np.inf
    residual: float = np.inf
    sup_norm: float = 0.0


def _quotient_parts(system: FiniteVolumeSystem, g: np.ndarray) -> Tuple[float, float]:
    return system.quadratic_part(g), system.power_part(g)


def _quotient(system: FiniteVolumeSystem, g: np.ndarray) -> float:
    quadratic, power = _quotient_parts(system, g)
    if power <= 0:
        return np.inf
    return quadratic / power ** (2.0 / system.problem.p)


def nehari_descent(
    system: FiniteVolumeSystem,
    seed: np.ndarray,
    coercive: bool,
    max_iterations: int = DESCENT_MAX_ITERATIONS,
) -> Tuple[np.ndarray, bool, int]:
    """Minimize K^2(g) / N(g)^(2/p) over g >= 0 and project onto the Nehari set.

    Each step moves towards P^(-1)[(K^2/N) V g^(p-1) + (P - A) g], the
    gradient of the quotient in the inner product of the preconditioner P
    (the operator A itself when it is coercive, the stiffness otherwise),
    with step halving until the quotient decreases. Negative values are
    clamped after every step.

    Args:
        system (FiniteVolumeSystem): Assembled system.
        seed (np.ndarray): Starting values of g.
        coercive (bool): Whether the operator A = S + lambda W is positive.
        max_iterations (int, optional): Iteration budget. Defaults to 1000.

    Returns:
        Tuple[np.ndarray, bool, int]: Projected g (zero after a collapse),
            whether the iterates collapsed and the iteration count.
    """
    problem = system.problem
    shift = problem.lam if coercive else 0.0
    preconditioner = system.stiffness() + shift * sparse.diags(system.cell_mass)
    factor = sparse_linalg.splu(preconditioner.tocsc())
    correction = (shift - problem.lam) * system.cell_mass

    g = np.maximum(seed, 0.0)
    if np.max(g) <= 0:
        return np.zeros_like(g), True, 0
    g = g / np.max(g)
    phi = _quotient(system, g)
    iterations = 0
    for iterations in range(1, max_iterations + 1):
        quadratic, power = _quotient_parts(system, g)
        if quadratic <= 0:
            return np.zeros_like(g), True, iterations
        trial = factor.solve(quadratic / power * system.source(g) + correction * g)
        step = 1.0
        while True:
            candidate = np.maximum((1 - step) * g + step * trial, 0.0)
            peak = np.max(candidate)
            candidate_phi = _quotient(system, candidate / peak) if peak > 0 else np.inf
            if candidate_phi < phi or step <= MIN_STEP:
                break
            step /= 2
        if not candidate_phi < phi:
            break
        change = (phi - candidate_phi) / abs(phi)
        g, phi = candidate / peak, candidate_phi
        if change <= DESCENT_RTOL:
            break

    quadratic, power = _quotient_parts(system, g)
    if quadratic <= 0 or power <= 0:
        return np.zeros_like(g), True, iterations
    scale = (quadratic / power) ** (1.0 / (problem.p - 2))
    return scale * g, False, iterations


def newton_polish(
    system: FiniteVolumeSystem,
    g: np.ndarray,
    max_iterations: int = NEWTON_MAX_ITERATIONS,
) -> Tuple[np.ndarray, bool, int]:
    """Damped Newton iteration on the discrete system, clamped to g >= 0.

    Stops when the Newton correction drops below 1e-10 of the sup norm, or
    when full corrections below 1e-6 of it stop contracting: the residual is
    then at its rounding floor, which grows like M^2.

    Returns:
        Tuple[np.ndarray, bool, int]: The iterate, whether it converged and
            the number of iterations.
    """
    weights = 1.0 / np.sqrt(system.cell_mass)

    def merit(values: np.ndarray) -> float:
        return float(np.linalg.norm(system.residual(values) * weights))

    previous = np.inf
    for iteration in range(1, max_iterations + 1):
        delta = sparse_linalg.spsolve(system.jacobian(g), -system.residual(g))
        if not np.all(np.isfinite(delta)):
            logger.debug("Newton correction is not finite")
            return g, False, iteration
        current = merit(g)
        scale = max(np.max(np.abs(g)), ZERO_THRESHOLD)
        size = float(np.max(np.abs(delta)))
        damping = 1.0
        while True:
            candidate = np.maximum(g + damping * delta, 0.0)
            small = damping * size <= NEWTON_ROUNDING_RTOL * scale
            if merit(candidate) < current or small:
                break
            damping /= 2
            if damping < NEWTON_MIN_DAMPING:
                logger.debug(f"Newton line search failed at iteration {iteration}")
                return g, False, iteration
        g = candidate
        step = damping * size
        if step <= NEWTON_STEP_RTOL * scale:
            return g, True, iteration
        if damping == 1.0 and step <= NEWTON_ROUNDING_RTOL * scale and step > previous / 2:
            logger.debug(f"Newton stalls at relative step {step / scale:.2e}")
            return g, True, iteration
        previous = step
    return g, False, max_iterations


def _seeds(v: np.ndarray, attempts: int, seed: int) -> List[np.ndarray]:
    seeds = [v.copy()]
    for k in range(1, attempts):
        rng = np.random.default_rng([seed, k])
        seeds.append(v * rng.uniform(0.5, 1.5, size=v.shape))
    return seeds


def _run_attempt(
    system: FiniteVolumeSystem, coercive: bool, index: int, start: np.ndarray
) -> _Attempt:
    g, collapsed, iterations = nehari_descent(system, start, coercive)
    if collapsed:
        logger.debug(f"Attempt {index}: collapsed to 0 after {iterations} descent steps")
        return _Attempt(index=index, g=g, collapsed=True, converged=True, iterations=iterations)
    g, converged, newton_iterations = newton_polish(system, g)
    iterations += newton_iterations
    profile = system.to_profile(g)
    sup_norm = profile.sup_norm()
    attempt = _Attempt(
        index=index,
        g=g,
        collapsed=sup_norm < ZERO_THRESHOLD,
        converged=converged,
        iterations=iterations,
        sup_norm=sup_norm,
    )
    if attempt.collapsed:
        return attempt
    if converged:
        attempt.energy = energy(system.problem, profile)
        attempt.residual = radial_residual(system.problem, profile)
    logger.debug(
        f"Attempt {index}: converged={converged}, energy={attempt.energy:.10g}, "
        f"residual={attempt.residual:.3g}"
    )
    return attempt


def solve(
    problem: PdeProblem,
    M: int = DEFAULT_MESH_SIZE,
    attempts: int = DEFAULT_ATTEMPTS,
    grading: float = DEFAULT_PDE_GRADING,
    seed: int = 0,
    workers: int = 1,
    residual_factor: float = DEFAULT_RESIDUAL_FACTOR,
) -> PdeSolution:
    """Look for a nonzero nonnegative radial solution on the unit Wulff ball.

    Every attempt runs a Nehari descent from its own seed and polishes the
    projected candidate by Newton's method. The best nonzero candidate is
    the one with the lowest energy, ties broken by the residual. When every
    attempt collapses, its candidate having a sup norm below 1e-8, the result
    reports nonexistence; when attempts fail to converge it is flagged
    inconclusive. The largest candidate sup norm is kept in the solution.

    Args:
        problem (PdeProblem): The problem.
        M (int, optional): Mesh size. Defaults to 3000.
        attempts (int, optional): Number of multistart attempts. Defaults to 4.
        grading (float, optional): Mesh grading exponent. Defaults to 1, a
            uniform mesh; g is smooth, so no refinement at the origin is needed.
        seed (int, optional): Seed of the perturbed starts. Defaults to 0.
        workers (int, optional): Threads running attempts concurrently.
            Defaults to 1.
        residual_factor (float, optional): Accepted residual relative to the
            sup norm. Defaults to 1e-5.

    Returns:
        PdeSolution: The selected candidate.
    """
    if attempts < 1:
        raise PreconditionError(f"at least one attempt is needed, got {attempts}")
    system = FiniteVolumeSystem.build(problem, graded_mesh(1.0, M, grading), grading)
    mu, v = system.principal_eigenpair()
    coercive = problem.lam + mu > 0
    logger.info(
        f"Solving alpha={problem.alpha} n={problem.n} p={problem.p} lambda={problem.lam:.10g}"
        f" (discrete threshold {-mu:.10g}, M={M}, attempts={attempts})"
    )

    run = partial(_run_attempt, system, coercive)
    starts = _seeds(v, attempts, seed)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, range(attempts), starts))
    else:
        results = [run(index, start) for index, start in enumerate(starts)]

    iterations = sum(r.iterations for r in results)
    candidates = [r for r in results if r.converged and not r.collapsed]
    zero = system.to_profile(np.zeros(system.size))
    if candidates:
        best = min(candidates, key=lambda r: (r.energy, r.residual, r.index))
        profile = system.to_profile(best.g)
        accepted = best.residual <= residual_factor * profile.sup_norm()
        solution = PdeSolution(
            problem=problem,
            profile=profile,
            energy=best.energy,
            residual=best.residual,
            nonzero=accepted,
            inconclusive=not accepted,
            label=NONZERO_LABEL if accepted else "inconclusive: residual above tolerance",
            attempts=attempts,
            iterations=iterations,
            discrete_eigenvalue=mu,
            candidate_sup_norm=profile.sup_norm(),
        )
    elif all(r.collapsed and r.converged for r in results):
        solution = PdeSolution(
            problem=problem,
            profile=zero,
            energy=0.0,
            residual=0.0,
            nonzero=False,
            label=NONEXISTENCE_LABEL,
            attempts=attempts,
            iterations=iterations,
            discrete_eigenvalue=mu,
            candidate_sup_norm=max(r.sup_norm for r in results),
        )
    else:
        solution = PdeSolution(
            problem=problem,
            profile=zero,
            energy=0.0,
            residual=np.inf,
            nonzero=False,
            inconclusive=True,
            label=INCONCLUSIVE_LABEL,
            attempts=attempts,
            iterations=iterations,
            discrete_eigenvalue=mu,
            candidate_sup_norm=max(r.sup_norm for r in results),
        )
    logger.info(f"{solution.label}: energy {solution.energy:.10g}, residual {solution.residual:.3g}")
    return solution


def solution_report(solution: PdeSolution) -> PdeReport:
    """Summarize a solution, with the necessity identity for nonzero ones."""
    problem = solution.problem
    lhs = rhs = gap = None
    if solution.nonzero:
        lhs, rhs = necessity_identity(problem, solution.profile)
        gap = abs(lhs - rhs) / max(abs(rhs), np.finfo(float).tiny)
    return PdeReport(
        alpha=problem.alpha,
        n=problem.n,
        p=problem.p,
        lam=problem.lam,
        threshold=problem.threshold,
        offset=problem.lam - problem.threshold,
        nonzero=solution.nonzero,
        inconclusive=solution.inconclusive,
        label=solution.label,
        energy=solution.energy,
        residual=solution.residual,
        sup_norm=solution.profile.sup_norm(),
        candidate_sup_norm=solution.candidate_sup_norm,
        attempts=solution.attempts,
        discrete_eigenvalue=solution.discrete_eigenvalue,
        necessity_lhs=lhs,
        necessity_rhs=rhs,
        necessity_gap=gap,
    )


def threshold_sweep(
    alpha: float,
    n: int,
    p: float,
    offsets: Sequence[float] = DEFAULT_OFFSETS,
    M: int = DEFAULT_MESH_SIZE,
    attempts: int = DEFAULT_ATTEMPTS,
    seed: int = 0,
    workers: int = 1,
    grading: Optional[float] = None,
    residual_factor: float = DEFAULT_RESIDUAL_FACTOR,
) -> List[PdeReport]:
    """Solve at lambda = -j_alpha^2 + offset for each offset, sorted by lambda."""
    threshold = -first_zero(alpha) ** 2
    reports = []
    for offset in sorted(offsets):
        problem = PdeProblem(alpha=alpha, n=n, p=p, lam=threshold + offset)
        solution = solve(
            problem,
            M=M,
            attempts=attempts,
            grading=grading or DEFAULT_PDE_GRADING,
            seed=seed,
            workers=workers,
            residual_factor=residual_factor,
        )
        reports.append(solution_report(solution))
    return reports
