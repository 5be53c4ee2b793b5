"""Sharp constants, extremals and BPV verification for Minkowski BPV."""

from minkowski_bpv.spectrum.bpv import BpvReport, verify_bpv_grid
from minkowski_bpv.spectrum.extremal import (
    alpha_range,
    check_admissible,
    euler_lagrange_residual,
    extremal_limit_at_zero,
    extremal_profile,
    interior_nodes,
    reduced_derivatives,
    reduced_spline,
    sharp_constant,
)
from minkowski_bpv.spectrum.radial_profile import DEFAULT_GRADING, RadialProfile, graded_mesh
from minkowski_bpv.spectrum.radial_space import (
    RadialSpace,
    hardy_coefficient,
    reduction_exponent,
)
from minkowski_bpv.spectrum.rayleigh import radial_eigen_min, radial_rayleigh_quotient

__all__ = [
    "BpvReport",
    "DEFAULT_GRADING",
    "RadialProfile",
    "RadialSpace",
    "alpha_range",
    "check_admissible",
    "euler_lagrange_residual",
    "extremal_limit_at_zero",
    "extremal_profile",
    "graded_mesh",
    "hardy_coefficient",
    "interior_nodes",
    "radial_eigen_min",
    "radial_rayleigh_quotient",
    "reduced_derivatives",
    "reduced_spline",
    "reduction_exponent",
    "sharp_constant",
    "verify_bpv_grid",
]
