"""Radial solver for the Hardy-Poincare problem with a power nonlinearity."""

from minkowski_bpv.pde.discretization import FiniteVolumeSystem
from minkowski_bpv.pde.functional import (
    coercivity_check,
    coercivity_constant,
    energy,
    necessity_identity,
    nehari_scale,
    nonnegativity_projection,
    radial_residual,
)
from minkowski_bpv.pde.problem import PdeProblem, PdeReport, PdeSolution
from minkowski_bpv.pde.solver import (
    DEFAULT_OFFSETS,
    nehari_descent,
    newton_polish,
    solution_report,
    solve,
    threshold_sweep,
)

__all__ = [
    "DEFAULT_OFFSETS",
    "FiniteVolumeSystem",
    "PdeProblem",
    "PdeReport",
    "PdeSolution",
    "coercivity_check",
    "coercivity_constant",
    "energy",
    "necessity_identity",
    "nehari_descent",
    "nehari_scale",
    "newton_polish",
    "nonnegativity_projection",
    "radial_residual",
    "solution_report",
    "solve",
    "threshold_sweep",
]
