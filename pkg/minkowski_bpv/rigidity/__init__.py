"""Bessel-kernel sign analysis and the volume rigidity test."""

from minkowski_bpv.rigidity.functional import (
    RigidityReport,
    Verdict,
    check_bishop_gromov,
    check_small_ball_limit,
    deficiency_integral,
    layer_cake_integral,
    rigidity_functional,
    rigidity_report,
    rigidity_verdict,
)
from minkowski_bpv.rigidity.h_alpha import (
    HAlphaAnalysis,
    analyze_h_alpha,
    constituent_identities,
    h_alpha,
    h_alpha_zero,
    integral_identity,
    monotone_check,
    monotone_function,
    scaled_kernel,
    weighted_kernel_integral,
)
from minkowski_bpv.rigidity.volume_profile import (
    Deficiency,
    VolumeProfile,
    constant_deficiency,
    power_deficiency,
    step_deficiency,
)

__all__ = [
    "Deficiency",
    "HAlphaAnalysis",
    "RigidityReport",
    "Verdict",
    "VolumeProfile",
    "analyze_h_alpha",
    "check_bishop_gromov",
    "check_small_ball_limit",
    "constant_deficiency",
    "constituent_identities",
    "deficiency_integral",
    "h_alpha",
    "h_alpha_zero",
    "integral_identity",
    "layer_cake_integral",
    "monotone_check",
    "monotone_function",
    "power_deficiency",
    "rigidity_functional",
    "rigidity_report",
    "rigidity_verdict",
    "scaled_kernel",
    "step_deficiency",
    "weighted_kernel_integral",
]
