"""Residual, energy and coercivity of the radial problem."""

import logging
from typing import Tuple

import numpy as np

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.norm import omega
from minkowski_bpv.pde.problem import PdeProblem
from minkowski_bpv.rearrange import InequalityCheck
from minkowski_bpv.specfun import bessel_j, first_zero
from minkowski_bpv.spectrum import (
    RadialProfile,
    RadialSpace,
    interior_nodes,
    reduced_derivatives,
    reduced_spline,
    reduction_exponent,
)

logger = logging.getLogger(__name__)

COERCIVITY_RTOL = 1e-9
IDENTITY_GAUSS_POINTS = 6


def radial_residual(
    problem: PdeProblem, profile: RadialProfile, include_nonlinear: bool = True
) -> float:
    """Max |-(h'' + (n-1) h'/rho) - c h/rho^2 + lambda h - h_+^(p-1)| at interior nodes.

    The continuous equation is measured, independently of the solver's
    scheme: g = rho^(-s) h is interpolated by the quintic spline of
    :func:`~minkowski_bpv.spectrum.euler_lagrange_residual`, and
    h'' + (n-1) h'/rho + c h/rho^2 = rho^s (g'' + (1 + 2 alpha) g'/rho).
    The two nodes nearest the origin and the Dirichlet node are skipped.

    Args:
        problem (PdeProblem): The problem.
        profile (RadialProfile): Profile with h(R) = 0.
        include_nonlinear (bool, optional): Include the -h_+^(p-1) term.
            Defaults to True.

    Returns:
        float: The maximal absolute residual.
    """
    if len(profile) < 6:
        raise PreconditionError("the residual needs at least 6 nodes")
    if not profile.is_boundary_vanishing():
        raise PreconditionError("profile must vanish at the outer radius")

    x, g1, g2 = reduced_derivatives(profile, problem.alpha, problem.n)
    h = profile.values[interior_nodes(profile)]
    s = reduction_exponent(problem.alpha, problem.n)
    k = 1 + 2 * problem.alpha
    residual = -(x**s) * (g2 + k * g1 / x) + problem.lam * h
    if include_nonlinear:
        residual -= np.maximum(h, 0.0) ** (problem.p - 1)
    if residual.size == 0:
        return 0.0
    return float(np.max(np.abs(residual)))


def _energy_parts(problem: PdeProblem, profile: RadialProfile) -> Tuple[float, float]:
    space = RadialSpace.build(profile.nodes, problem.alpha, problem.n)
    quadratic = space.energy_form(profile.values) + problem.lam * space.mass_form(profile.values)
    return quadratic, space.power_form(profile.values, problem.p)


def energy(problem: PdeProblem, profile: RadialProfile) -> float:
    """E(u) = n omega_n [1/2 K^2(h) - 1/p int h_+^p rho^(n-1)].

    K^2(h) = int (h'^2 - c h^2/rho^2 + lambda h^2) rho^(n-1), evaluated with
    the element forms of :class:`RadialSpace`.
    """
    quadratic, power = _energy_parts(problem, profile)
    n = problem.n
    return n * omega(n) * (0.5 * quadratic - power / problem.p)


def nehari_scale(problem: PdeProblem, profile: RadialProfile) -> float:
    """The t > 0 with t h on the Nehari set, t^(p-2) = K^2(h) / int h_+^p.

    Returns 0 when K^2(h) <= 0 or h_+ vanishes, where no such t exists.
    """
    quadratic, power = _energy_parts(problem, profile)
    if quadratic <= 0 or power <= 0:
        return 0.0
    return (quadratic / power) ** (1.0 / (problem.p - 2))


def coercivity_constant(problem: PdeProblem, lF: float = 1.0) -> float:
    """c_{alpha,lambda} with K^2(u) >= c_{alpha,lambda} int F_*(Du)^2.

    min(1, 1 + lambda/j_0^2) in the plane, and
    4 alpha^2/(n-2)^2 min(1, 1 + lambda/j_alpha^2) for n >= 3.

    Args:
        problem (PdeProblem): The problem.
        lF (float, optional): Uniformity constant of the norm, in (0, 1].
            Defaults to 1.

    Returns:
        float: The positive constant.

    Raises:
        PreconditionError: If lambda <= -j_alpha^2.
    """
    if not 0 < lF <= 1:
        raise PreconditionError(f"uniformity constant must lie in (0, 1], got {lF}")
    j_squared = first_zero(problem.alpha) ** 2
    if problem.lam <= -j_squared:
        raise PreconditionError(
            f"lambda = {problem.lam} <= -j^2 = {-j_squared:.12g}; the form is not coercive"
        )
    factor = min(1.0, 1.0 + problem.lam / j_squared)
    if problem.n == 2:
        return factor
    return 4 * problem.alpha**2 / (problem.n - 2) ** 2 * factor


def coercivity_check(
    problem: PdeProblem, profile: RadialProfile, lF: float = 1.0
) -> InequalityCheck:
    """Compare K^2(h) with c_{alpha,lambda} int h'^2 rho^(n-1) for one profile."""
    space = RadialSpace.build(profile.nodes, problem.alpha, problem.n)
    lhs = space.energy_form(profile.values) + problem.lam * space.mass_form(profile.values)
    rhs = coercivity_constant(problem, lF) * space.gradient_form(profile.values)
    slack = COERCIVITY_RTOL * abs(rhs)
    return InequalityCheck(
        name="coercivity", lhs=lhs, rhs=rhs, slack=slack, passed=lhs >= rhs - slack
    )


def nonnegativity_projection(profile: RadialProfile) -> RadialProfile:
    """Clamp negative values to 0."""
    if np.all(profile.values >= 0):
        return profile
    return profile.with_values(np.maximum(profile.values, 0.0))


def necessity_identity(problem: PdeProblem, profile: RadialProfile) -> Tuple[float, float]:
    """Both sides of (lambda + j_alpha^2) int u* u = int u* u_+^(p-1).

    u* = rho^((2-n)/2) J_alpha(j_alpha rho / R) is the extremal. Testing the
    equation against it gives the identity, so a nonzero nonnegative solution
    forces lambda > -j_alpha^2. In the reduced variables both integrands are
    g* g rho^k and g* g_+^(p-1) rho^(k + s(p-2)) with g* = rho^(-alpha) J_alpha;
    g is the quintic spline of the solution, integrated by Gauss-Legendre
    rules on every mesh cell and on [0, rho_1].

    Args:
        problem (PdeProblem): The problem.
        profile (RadialProfile): A computed solution.

    Returns:
        Tuple[float, float]: Left and right side.
    """
    spline = reduced_spline(profile, problem.alpha, problem.n)
    root = first_zero(problem.alpha) / profile.R
    edges = np.concatenate(([0.0], profile.nodes))
    gl_x, gl_w = np.polynomial.legendre.leggauss(IDENTITY_GAUSS_POINTS)
    half = np.diff(edges)[:, None] / 2
    rho = ((edges[:-1] + edges[1:]) / 2)[:, None] + half * gl_x[None, :]
    weights = half * gl_w[None, :]

    k = 1 + 2 * problem.alpha
    s = reduction_exponent(problem.alpha, problem.n)
    g = spline(rho)
    extremal = rho ** (-problem.alpha) * np.asarray(bessel_j(problem.alpha, root * rho))
    overlap = float(np.sum(weights * rho**k * extremal * g))
    power = np.maximum(g, 0.0) ** (problem.p - 1)
    rhs = float(np.sum(weights * rho ** (k + s * (problem.p - 2)) * extremal * power))
    return (problem.lam + root**2) * overlap, rhs
