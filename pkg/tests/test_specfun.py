"""Tests for Bessel functions, their zeros and the series identities."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import special

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.specfun import (
    bessel_j,
    bessel_j_prime,
    bessel_j_series,
    bessel_zero,
    bessel_zeros,
    derivative_residuals,
    first_zero,
    mittag_leffler_log_derivative,
    mittag_leffler_ratio,
    rayleigh_limit_estimate,
    rayleigh_partial_sum,
    recurrence_residual,
    unit_ball_volume_euclidean,
)


def test_values_at_origin():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert bessel_j(2.5, 0.0) == 0.0


def test_first_zero_of_j0():
    assert round(bessel_zero(0, 1), 4) == 2.4048
    assert abs(bessel_j(0, 2.4048)) < 1e-4


def test_second_zero_is_bracketed():
    zero = bessel_zero(0, 2)
    assert 4 < zero < 7
    assert bessel_j(0, zero - 1e-6) * bessel_j(0, zero + 1e-6) < 0


def test_recurrence_cross_check_by_series():
    t = 1.7
    left = bessel_j_series(0, t) + bessel_j_series(2, t)
    right = (2 / t) * bessel_j_series(1, t)
    assert left == pytest.approx(right, abs=1e-10)
    assert bessel_j(1, t) == pytest.approx(bessel_j_series(1, t), abs=1e-12)


@pytest.mark.parametrize("order", [0.0, 0.5, 1.0, 2.0])
def test_derivative_matches_finite_difference(order):
    t = np.linspace(0.1, 20.0, 60)
    step = 1e-6
    difference = (bessel_j(order, t + step) - bessel_j(order, t - step)) / (2 * step)
    assert np.max(np.abs(bessel_j_prime(order, t) - difference)) < 1e-6


def test_derivative_at_a_zero_of_j0():
    j0 = first_zero(0)
    assert bessel_j_prime(0, j0) == pytest.approx(-bessel_j(1, j0), abs=1e-15)


def test_derivative_identity_for_order_one():
    t = 3.1
    assert bessel_j_prime(1, t) == pytest.approx(bessel_j(0, t) - bessel_j(1, t) / t, abs=1e-10)


@pytest.mark.parametrize("order", [0.0, 0.5, 1.0, 2.5])
def test_derivative_residuals(order):
    t = np.linspace(0.2, 25.0, 80)
    lowering, raising = derivative_residuals(order, t)
    assert np.max(np.abs(lowering)) < 1e-10
    assert np.max(np.abs(raising)) < 1e-10


def test_series_agrees_with_library_values():
    t = np.linspace(0.5, 10.0, 40)
    for order in (0.0, 0.5, 1.0, 3.0):
        assert np.max(np.abs(bessel_j_series(order, t) - bessel_j(order, t))) < 1e-10


@pytest.mark.parametrize("order", [1.0, 1.5, 2.0, 3.0])
def test_recurrence_residual(order):
    t = np.linspace(0.1, 30.0, 300)
    assert np.max(np.abs(recurrence_residual(order, t))) < 1e-10


@pytest.mark.parametrize("order", [0.0, 0.5, 1.0, 2.0])
def test_zero_residuals(order):
    table = bessel_zeros(order, 20)
    assert len(table) == 20
    assert np.max(np.abs(special.jv(order, table.zeros))) <= 1e-11
    assert np.all(np.diff(table.zeros) > 0)


@pytest.mark.parametrize("order", [0.0, 0.25, 0.5, 1.0, 3.0])
def test_zeros_interlace(order):
    lower = bessel_zeros(order, 10).zeros
    upper = bessel_zeros(order + 1, 10).zeros
    assert bessel_zero(order, 1) < bessel_zero(order + 1, 1)
    assert np.all(lower < upper)
    assert np.all(upper[:-1] < lower[1:])


@settings(max_examples=20, deadline=None)
@given(st.floats(min_value=0.0, max_value=6.0, allow_nan=False))
def test_zero_tables_are_certified(order):
    table = bessel_zeros(order, 8)
    assert np.all(np.diff(table.zeros) > 0)
    assert np.max(np.abs(special.jv(order, table.zeros))) <= table.tolerance


def test_zero_table_serialization():
    data = bessel_zeros(0, 3).to_dict()
    assert data["alpha"] == 0
    assert len(data["zeros"]) == 3
    assert data["zeros"][0] == pytest.approx(2.404825557695773, abs=1e-12)


def test_zero_index_is_one_based():
    table = bessel_zeros(1.0, 5)
    assert table.zero(1) == table.zeros[0]
    with pytest.raises(PreconditionError):
        table.zero(0)
    with pytest.raises(PreconditionError):
        bessel_zero(0, 0)


def test_rayleigh_partial_sums():
    j0 = first_zero(0)
    assert rayleigh_partial_sum(0, 1) == pytest.approx(1 / j0**2, rel=1e-14)
    sums = [rayleigh_partial_sum(1.0, k) for k in (1, 5, 50, 500)]
    assert sums == sorted(sums)
    assert sums[-1] < 1 / 8


@pytest.mark.parametrize("order", [0.0, 0.5, 1.0, 2.0])
def test_rayleigh_limit(order):
    assert abs(rayleigh_limit_estimate(order) - 1 / (4 * (order + 1))) < 1e-6


def test_mittag_leffler_ratio_vanishes_at_zero():
    assert mittag_leffler_ratio(1.0, 0.0).value == 0.0


@pytest.mark.parametrize("order, t", [(0.5, 1.0), (2.0, 3.0)])
def test_mittag_leffler_ratio_matches_direct_ratio(order, t):
    estimate = mittag_leffler_ratio(order, t)
    direct = bessel_j(order + 1, t) / bessel_j(order, t)
    assert abs(estimate.value - direct) < 1e-8
    assert estimate.tail_bound > 0


@pytest.mark.parametrize("order, t", [(0.5, 1.5), (1.0, 2.0), (2.0, 4.0)])
def test_mittag_leffler_log_derivative(order, t):
    estimate = mittag_leffler_log_derivative(order, t)
    direct = t * bessel_j_prime(order, t) / bessel_j(order, t)
    assert abs(estimate.value - direct) < estimate.tail_bound + 1e-8


def test_mittag_leffler_rejects_arguments_beyond_the_first_zero():
    with pytest.raises(PreconditionError):
        mittag_leffler_ratio(1.0, first_zero(1.0))


def test_rejects_invalid_arguments():
    with pytest.raises(PreconditionError):
        bessel_j(-1.0, 1.0)
    with pytest.raises(PreconditionError):
        bessel_j(0.0, -1.0)
    with pytest.raises(PreconditionError):
        bessel_j_prime(0.0, 0.0)
    with pytest.raises(PreconditionError):
        recurrence_residual(0.5, 1.0)


def test_unit_ball_volume():
    assert unit_ball_volume_euclidean(2) == pytest.approx(math.pi, rel=1e-14)
    assert unit_ball_volume_euclidean(3) == pytest.approx(4 * math.pi / 3, rel=1e-14)


@pytest.mark.parametrize("call", [lambda: bessel_j(-1.0, 1.0), lambda: first_zero(-0.5)])
def test_negative_order_error_names_alpha(call):
    with pytest.raises(PreconditionError, match="alpha"):
        call()
