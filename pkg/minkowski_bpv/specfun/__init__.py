"""Bessel special functions for Minkowski BPV."""

from minkowski_bpv.specfun.bessel import (
    bessel_j,
    bessel_j_prime,
    bessel_j_series,
    unit_ball_volume_euclidean,
)
from minkowski_bpv.specfun.identities import (
    SeriesEstimate,
    derivative_residuals,
    mittag_leffler_log_derivative,
    mittag_leffler_ratio,
    rayleigh_limit_estimate,
    rayleigh_partial_sum,
    recurrence_residual,
)
from minkowski_bpv.specfun.zeros import (
    ZeroTable,
    bessel_zero,
    bessel_zeros,
    first_zero,
    mcmahon_estimate,
)

__all__ = [
    "SeriesEstimate",
    "ZeroTable",
    "bessel_j",
    "bessel_j_prime",
    "bessel_j_series",
    "bessel_zero",
    "bessel_zeros",
    "derivative_residuals",
    "first_zero",
    "mcmahon_estimate",
    "mittag_leffler_log_derivative",
    "mittag_leffler_ratio",
    "rayleigh_limit_estimate",
    "rayleigh_partial_sum",
    "recurrence_residual",
    "unit_ball_volume_euclidean",
]
