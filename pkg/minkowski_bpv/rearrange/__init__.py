"""Anisotropic symmetrization of grid functions for Minkowski BPV."""

from minkowski_bpv.rearrange.checks import (
    InequalityCheck,
    RearrangeReport,
    cavalieri_check,
    hardy_inequality_check,
    hardy_littlewood_check,
    polya_szego_check,
    rearrangement_report,
)
from minkowski_bpv.rearrange.energies import (
    convexity_defect,
    difference_covectors,
    dirichlet_energy,
    hardy_floor,
    hardy_functional,
    hardy_integral,
    hardy_weights,
    mass,
)
from minkowski_bpv.rearrange.grid_function import (
    GridFunction,
    random_bump_function,
    wulff_indicator,
)
from minkowski_bpv.rearrange.symmetrization import equimeasurability_counts, symmetrize

__all__ = [
    "GridFunction",
    "InequalityCheck",
    "RearrangeReport",
    "cavalieri_check",
    "convexity_defect",
    "difference_covectors",
    "dirichlet_energy",
    "equimeasurability_counts",
    "hardy_floor",
    "hardy_functional",
    "hardy_inequality_check",
    "hardy_integral",
    "hardy_littlewood_check",
    "hardy_weights",
    "mass",
    "polya_szego_check",
    "random_bump_function",
    "rearrangement_report",
    "symmetrize",
    "wulff_indicator",
]
