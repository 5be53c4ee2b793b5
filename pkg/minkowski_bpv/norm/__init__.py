"""Minkowski norm geometry for Minkowski BPV."""

from minkowski_bpv.norm.minkowski_norm import (
    eikonal_residual,
    fundamental_tensor,
    norm_eval,
    polar_eval,
    polar_eval_fast,
    uniformity_constant,
)
from minkowski_bpv.norm.norm_spec import NormSpec
from minkowski_bpv.norm.volume import (
    VolumeEstimate,
    is_normalized,
    normalize,
    omega,
    unit_ball_volume,
    volume_estimate,
)

__all__ = [
    "NormSpec",
    "VolumeEstimate",
    "eikonal_residual",
    "fundamental_tensor",
    "is_normalized",
    "norm_eval",
    "normalize",
    "omega",
    "polar_eval",
    "polar_eval_fast",
    "uniformity_constant",
    "unit_ball_volume",
    "volume_estimate",
]
