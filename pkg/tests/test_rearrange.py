"""Tests for the discrete anisotropic symmetrization and the rearrangement checks."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.norm import NormSpec, normalize
from minkowski_bpv.rearrange import (
    GridFunction,
    cavalieri_check,
    convexity_defect,
    equimeasurability_counts,
    hardy_inequality_check,
    hardy_littlewood_check,
    polya_szego_check,
    random_bump_function,
    rearrangement_report,
    symmetrize,
    wulff_indicator,
)

HALF_WIDTH = 1.25


def _random_plane_function(seed, size=64):
    rng = np.random.default_rng(seed)
    return random_bump_function((size, size), 2 * HALF_WIDTH / size, rng, 1.0)


def _nonzero_centers(u):
    centers = u.centers()[u.values > 0]
    return {tuple(np.round(c / u.h, 6)) for c in centers}


def test_wulff_indicator_is_a_fixed_point(planar_norm):
    u = wulff_indicator(planar_norm, (41, 41), 0.05, 0.6)
    symmetric = symmetrize(u, planar_norm)
    assert _nonzero_centers(symmetric) == _nonzero_centers(u)
    assert symmetric.support_count() == u.support_count()


def test_constant_function_becomes_a_discrete_wulff_ball(lp4_plane):
    values = np.zeros((30, 30))
    values[3:10, 15:27] = 2.5
    u = GridFunction.centered(values, 0.05)
    symmetric = symmetrize(u, lp4_plane)
    distances = symmetric.norm_at_centers(lp4_plane)
    inside = symmetric.values > 0
    assert np.all(symmetric.values[inside] == 2.5)
    assert inside.sum() == u.support_count()
    assert distances[inside].max() <= distances[~inside].min()


def test_values_are_preserved(planar_norm):
    u = _random_plane_function(0)
    symmetric = symmetrize(u, planar_norm)
    before = np.sort(u.values[u.values > 0])
    after = np.sort(symmetric.values[symmetric.values > 0])
    assert np.array_equal(before, after)


def test_output_is_radially_non_increasing(ellipse_plane):
    symmetric = symmetrize(_random_plane_function(1), ellipse_plane)
    order = np.argsort(symmetric.norm_at_centers(ellipse_plane).ravel(), kind="stable")
    assert np.all(np.diff(symmetric.values.ravel()[order]) <= 0)


def test_symmetrize_is_idempotent(lp4_plane):
    once = symmetrize(_random_plane_function(2), lp4_plane)
    twice = symmetrize(once, lp4_plane)
    assert twice.shape == once.shape
    assert np.array_equal(twice.values, once.values)


@settings(max_examples=10, deadline=None)
@given(st.floats(min_value=0.1, max_value=10.0, allow_nan=False))
def test_symmetrize_commutes_with_scaling(factor):
    spec = NormSpec.euclidean(2)
    u = _random_plane_function(3, size=32)
    assert np.array_equal(
        symmetrize(u.scaled(factor), spec).values, symmetrize(u, spec).scaled(factor).values
    )


def test_equimeasurability(lp4_plane):
    u = _random_plane_function(4)
    symmetric = symmetrize(u, lp4_plane)
    thresholds = np.linspace(0, u.values.max(), 25)
    for _, before, after in equimeasurability_counts(u, symmetric, thresholds):
        assert before == after


def test_zero_function_stays_zero(euclidean_plane):
    u = GridFunction.centered(np.zeros((8, 8)), 0.1)
    assert symmetrize(u, euclidean_plane).support_count() == 0


@pytest.mark.parametrize("seed", range(10))
def test_cavalieri_is_exact(seed, lp4_plane):
    check = cavalieri_check(_random_plane_function(seed, size=40), lp4_plane)
    assert check.passed
    assert check.lhs == check.rhs


def test_cavalieri_for_an_indicator(euclidean_plane):
    u = wulff_indicator(euclidean_plane, (31, 31), 0.1, 1.0, center=(0.3, -0.2))
    check = cavalieri_check(u, euclidean_plane)
    assert check.lhs == pytest.approx(u.support_count() * 0.01, rel=1e-14)
    assert check.passed


def test_hardy_littlewood_equality_for_symmetric_input(euclidean_plane):
    symmetric = symmetrize(_random_plane_function(5), euclidean_plane)
    check = hardy_littlewood_check(symmetric, euclidean_plane)
    assert check.passed
    assert check.lhs == pytest.approx(check.rhs, rel=1e-12)


def test_hardy_littlewood_is_strict_for_a_translated_ball(lp4_plane):
    u = wulff_indicator(lp4_plane, (61, 61), 0.05, 0.4, center=(0.8, 0.5))
    check = hardy_littlewood_check(u, lp4_plane)
    assert check.passed
    assert check.lhs < 0.9 * check.rhs


@pytest.mark.parametrize("seed", range(100))
def test_hardy_littlewood_on_random_functions(seed, ellipse_plane):
    assert hardy_littlewood_check(_random_plane_function(seed, size=32), ellipse_plane).passed


@pytest.mark.parametrize("seed", range(5))
def test_polya_szego_on_random_functions(seed, planar_norm):
    check = polya_szego_check(_random_plane_function(seed), planar_norm)
    assert check.passed
    assert check.slack == pytest.approx(10 * 2 * HALF_WIDTH / 64)


def test_polya_szego_for_a_translated_bump(euclidean_plane):
    h = 1 / 64

    def bump(points):
        shifted = np.sum((points - np.array([0.3, 0.2])) ** 2, axis=-1)
        return np.maximum(0.0, 1 - shifted / 0.25) ** 2

    u = GridFunction.sample(bump, (160, 160), h)
    check = polya_szego_check(u, euclidean_plane)
    assert check.passed


def test_polya_szego_needs_boundary_vanishing(euclidean_plane):
    u = GridFunction.centered(np.ones((6, 6)), 0.1)
    with pytest.raises(PreconditionError):
        polya_szego_check(u, euclidean_plane)


def test_hardy_ratio_of_a_gaussian_bump():
    spec = NormSpec.euclidean(3)
    h = 1 / 16

    def bump(points):
        squared = np.sum(points**2, axis=-1)
        return np.exp(-4 * squared) * np.maximum(0.0, 1 - squared) ** 2

    u = GridFunction.sample(bump, (40, 40, 40), h)
    ratio = hardy_inequality_check(u, spec)
    assert ratio > 0.25
    assert hardy_inequality_check(u.scaled(3.0), spec) == pytest.approx(ratio, rel=1e-12)


def test_hardy_ratio_along_the_near_extremal_family():
    spec = NormSpec.euclidean(3)
    h = 1 / 16
    ratios = []
    for delta in (1.0, 0.75, 0.5):

        def family(points, delta=delta):
            rho = np.sqrt(np.sum(points**2, axis=-1))
            cutoff = np.maximum(0.0, 1 - rho**2) ** 2
            return np.maximum(rho, 1e-12) ** (delta - 0.5) * cutoff

        u = GridFunction.sample(family, (40, 40, 40), h)
        ratios.append(hardy_inequality_check(u, spec))
    assert ratios[0] > ratios[1] > ratios[2] > 0.25 - 10 * h
    assert ratios[2] == pytest.approx(1.0, abs=0.15)


def test_hardy_ratio_rejects_the_plane(euclidean_plane):
    with pytest.raises(PreconditionError):
        hardy_inequality_check(_random_plane_function(0, size=16), euclidean_plane)


@settings(max_examples=15, deadline=None)
@given(st.floats(min_value=0.0, max_value=1.0, allow_nan=False))
def test_dirichlet_energy_is_convex(t):
    spec = normalize(NormSpec.lp(2, 4.0))
    u = _random_plane_function(6, size=24)
    v = _random_plane_function(7, size=24)
    scale = max(1.0, abs(convexity_defect(u, v, 0.5, spec, 0.0)))
    assert convexity_defect(u, v, t, spec, 0.0) <= 1e-10 * scale


def test_hardy_functional_is_convex_below_the_hardy_constant():
    spec = NormSpec.euclidean(3)
    rng = np.random.default_rng(8)
    u = random_bump_function((24, 24, 24), 2.5 / 24, rng, 1.0)
    v = random_bump_function((24, 24, 24), 2.5 / 24, rng, 1.0)
    assert convexity_defect(u, v, 0.3, spec, 0.1) <= 1e-10


def test_rearrangement_report(lp4_plane):
    report, symmetric = rearrangement_report(_random_plane_function(9), lp4_plane)
    assert report.passed
    assert report.mass_in == report.mass_out
    assert report.dirichlet_out <= report.dirichlet_in * (1 + report.slack)
    assert report.hardy_ratio is None
    assert symmetric.is_boundary_vanishing()


def test_grid_function_text_format(tmp_path):
    u = _random_plane_function(10, size=12)
    path = tmp_path / "u.txt"
    u.write(path)
    loaded = GridFunction.read(path)
    assert loaded.shape == u.shape
    assert loaded.origin == u.origin
    assert np.array_equal(loaded.values, u.values)


def test_grid_function_rejects_negative_values():
    with pytest.raises(PreconditionError):
        GridFunction.centered(-np.ones((4, 4)), 0.1)


def test_random_bumps_vanish_on_the_boundary():
    for seed in range(5):
        assert _random_plane_function(seed, size=20).is_boundary_vanishing()
