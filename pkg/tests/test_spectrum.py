"""Tests for sharp constants, radial extremals and the grid BPV check."""

import math

import numpy as np
import pytest

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.norm import NormSpec
from minkowski_bpv.rearrange import GridFunction, random_bump_function
from minkowski_bpv.specfun import bessel_j, first_zero, unit_ball_volume_euclidean
from minkowski_bpv.spectrum import (
    RadialProfile,
    alpha_range,
    check_admissible,
    euler_lagrange_residual,
    extremal_limit_at_zero,
    extremal_profile,
    graded_mesh,
    radial_eigen_min,
    radial_rayleigh_quotient,
    sharp_constant,
    verify_bpv_grid,
)

ADMISSIBLE_PAIRS = [(0.0, 2), (0.5, 3), (1.0, 4), (1.5, 5)]


@pytest.mark.parametrize("alpha, n", ADMISSIBLE_PAIRS + [(0.25, 3), (0.0, 3)])
def test_sharp_constant_on_the_unit_ball(alpha, n):
    value = sharp_constant(alpha, n, unit_ball_volume_euclidean(n))
    assert value == pytest.approx(first_zero(alpha) ** 2, rel=1e-14)


def test_sharp_constant_in_the_plane():
    assert sharp_constant(0.0, 2, 4 * math.pi) == pytest.approx(first_zero(0.0) ** 2 / 4)


@pytest.mark.parametrize("alpha, n", ADMISSIBLE_PAIRS)
def test_sharp_constant_scales_with_volume(alpha, n):
    volume = unit_ball_volume_euclidean(n)
    assert sharp_constant(alpha, n, 3.0**n * volume) == pytest.approx(
        sharp_constant(alpha, n, volume) / 9.0, rel=1e-12
    )


@pytest.mark.parametrize(
    "alpha, n", [(0.0, 1), (0.5, 2), (-0.1, 3), (0.6, 3), (math.nan, 4)]
)
def test_inadmissible_pairs(alpha, n):
    with pytest.raises(PreconditionError):
        check_admissible(alpha, n)


def test_zero_order_in_higher_dimensions_is_not_strictly_admissible():
    check_admissible(0.0, 3)
    with pytest.raises(PreconditionError):
        check_admissible(0.0, 3, strict=True)
    with pytest.raises(PreconditionError):
        extremal_profile(0.0, 3)
    with pytest.raises(PreconditionError):
        radial_eigen_min(0.0, 3, M=200)


def test_sharp_constant_rejects_empty_domains():
    with pytest.raises(PreconditionError):
        sharp_constant(0.0, 2, 0.0)


def test_alpha_range():
    assert alpha_range(3, 1.0) == (0.0, 0.5)
    low, high = alpha_range(5, 0.6)
    assert low == pytest.approx(1.5 * 0.8)
    assert high == 1.5
    with pytest.raises(PreconditionError):
        alpha_range(3, 0.0)


def test_graded_mesh():
    nodes = graded_mesh(2.0, 10, 1.0)
    assert np.allclose(nodes, 0.2 * np.arange(1, 11))
    assert graded_mesh(1.0, 50)[-1] == 1.0
    assert np.all(np.diff(graded_mesh(1.0, 50, 3.0)) > 0)
    with pytest.raises(PreconditionError):
        graded_mesh(1.0, 4)
    with pytest.raises(PreconditionError):
        graded_mesh(1.0, 10, 0.5)


@pytest.mark.parametrize("alpha, n", ADMISSIBLE_PAIRS)
def test_radial_eigenvalue_matches_the_bessel_zero(alpha, n):
    mu, profile = radial_eigen_min(alpha, n)
    assert mu == pytest.approx(first_zero(alpha) ** 2, rel=1e-3)
    assert profile.sup_norm() == pytest.approx(1.0)
    assert np.all(profile.values >= 0)
    assert profile.is_boundary_vanishing()


def test_radial_eigenvalue_under_dilation():
    mu, profile = radial_eigen_min(1.0, 4, R=2.0, M=2000)
    assert mu == pytest.approx(first_zero(1.0) ** 2 / 4, rel=1e-3)
    assert profile.R == 2.0


def test_radial_eigenvalue_is_the_quotient_of_its_minimizer():
    mu, profile = radial_eigen_min(0.5, 3, M=1000)
    assert radial_rayleigh_quotient(profile, 0.5, 3) == pytest.approx(mu, rel=1e-8)


@pytest.mark.parametrize("alpha, n", ADMISSIBLE_PAIRS)
def test_extremal_solves_the_euler_lagrange_equation(alpha, n):
    profile = extremal_profile(alpha, n, M=2000)
    Q = first_zero(alpha) ** 2
    assert euler_lagrange_residual(profile, alpha, n, Q) <= 1e-6 * profile.sup_norm()


def test_wrong_eigenvalue_leaves_a_residual():
    profile = extremal_profile(1.0, 4, M=2000)
    Q = first_zero(1.0) ** 2
    assert euler_lagrange_residual(profile, 1.0, 4, 1.1 * Q) > 1e-3


def test_euler_lagrange_residual_needs_five_nodes():
    profile = RadialProfile(R=1.0, nodes=[0.25, 0.5, 0.75, 1.0], values=[1, 1, 1, 0])
    with pytest.raises(PreconditionError):
        euler_lagrange_residual(profile, 0.0, 2, 1.0)


@pytest.mark.parametrize("alpha, n", ADMISSIBLE_PAIRS)
def test_rayleigh_quotient_of_the_extremal(alpha, n):
    profile = extremal_profile(alpha, n, M=2000)
    quotient = radial_rayleigh_quotient(profile, alpha, n)
    assert quotient == pytest.approx(first_zero(alpha) ** 2, rel=1e-4)


def test_rayleigh_quotient_scaling():
    profile = extremal_profile(0.5, 3, M=800)
    quotient = radial_rayleigh_quotient(profile, 0.5, 3)
    assert radial_rayleigh_quotient(profile.scaled(3.0), 0.5, 3) == pytest.approx(
        quotient, rel=1e-12
    )
    assert radial_rayleigh_quotient(profile.dilated(2.0), 0.5, 3) == pytest.approx(
        quotient / 4, rel=1e-9
    )


def test_rayleigh_quotient_needs_a_vanishing_boundary_value():
    profile = RadialProfile(R=1.0, nodes=graded_mesh(1.0, 20), values=np.ones(20))
    with pytest.raises(PreconditionError):
        radial_rayleigh_quotient(profile, 0.0, 2)


def test_rayleigh_quotient_of_the_zero_profile():
    profile = RadialProfile(R=1.0, nodes=graded_mesh(1.0, 20), values=np.zeros(20))
    with pytest.raises(PreconditionError):
        radial_rayleigh_quotient(profile, 0.0, 2)


@pytest.mark.parametrize("alpha, n", [(0.5, 3), (1.0, 4), (1.5, 5)])
def test_extremal_limit_at_the_origin(alpha, n):
    profile = extremal_profile(alpha, n, M=4000)
    near_origin = profile.values[0] * profile.nodes[0] ** ((n - 2) / 2 - alpha)
    assert near_origin == pytest.approx(extremal_limit_at_zero(alpha, n, 1.0), rel=1e-4)


def test_extremal_profile_values():
    profile = extremal_profile(0.0, 2, R=2.0, M=100)
    assert profile.values[-1] == 0.0
    middle = profile.nodes[50]
    assert profile.values[50] == pytest.approx(bessel_j(0.0, first_zero(0.0) / 2 * middle))


def test_profile_csv(tmp_path):
    profile = extremal_profile(0.0, 2, M=20)
    path = tmp_path / "h.csv"
    profile.write_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "rho,h"
    assert len(lines) == 21
    assert float(lines[-1].split(",")[0]) == 1.0


def _plane_bump(seed, size=64):
    rng = np.random.default_rng(seed)
    return random_bump_function((size, size), 2.5 / size, rng, 1.0)


@pytest.mark.parametrize("seed", range(50))
def test_bpv_holds_for_random_planar_functions(seed, planar_norm):
    report = verify_bpv_grid(_plane_bump(seed), planar_norm, 0.0, 2.5**2)
    assert report.passed
    assert report.margin > 0
    assert report.hardy_term == 0.0
    assert report.alpha_min == report.alpha_max == 0.0


def test_bpv_report_is_two_homogeneous(euclidean_plane):
    u = _plane_bump(11)
    report = verify_bpv_grid(u, euclidean_plane, 0.0, 2.5**2)
    scaled = verify_bpv_grid(u.scaled(3.0), euclidean_plane, 0.0, 2.5**2)
    assert scaled.lhs == pytest.approx(9 * report.lhs, rel=1e-12)
    assert scaled.margin == pytest.approx(9 * report.margin, rel=1e-9)


def test_bpv_margin_of_the_extremal_stays_small_under_refinement(euclidean_plane):
    root = first_zero(0.0)

    def extremal(points):
        rho = np.sqrt(np.sum(points**2, axis=-1))
        inside = np.maximum(bessel_j(0.0, root * np.minimum(rho, 1.0)), 0.0)
        return np.where(rho < 1.0, inside, 0.0)

    relative = []
    for size in (32, 64, 128):
        u = GridFunction.sample(extremal, (size, size), 2.5 / size)
        report = verify_bpv_grid(u, euclidean_plane, 0.0, math.pi)
        assert report.passed
        relative.append(abs(report.margin) / report.lhs)
    assert relative[0] > relative[1] > relative[2]
    assert relative[2] < 0.1


def test_bpv_in_three_dimensions():
    spec = NormSpec.euclidean(3)
    rng = np.random.default_rng(3)
    u = random_bump_function((24, 24, 24), 2.5 / 24, rng, 1.0)
    report = verify_bpv_grid(u, spec, 0.25, 2.5**3, lF=1.0)
    assert report.passed
    assert report.hardy_term > 0
    assert report.warning is None
    assert report.alpha_max == 0.5


def test_bpv_warns_below_the_admissible_range():
    spec = NormSpec.euclidean(3)
    rng = np.random.default_rng(4)
    u = random_bump_function((16, 16, 16), 2.5 / 16, rng, 1.0)
    report = verify_bpv_grid(u, spec, 0.25, 2.5**3, lF=0.5)
    assert report.alpha_min == pytest.approx(0.5 * math.sqrt(0.75))
    assert report.warning is not None


def test_bpv_requires_a_normalized_norm():
    with pytest.raises(PreconditionError):
        verify_bpv_grid(_plane_bump(0, size=16), NormSpec.lp(2, 4.0), 0.0, 6.25)


def test_bpv_requires_a_vanishing_boundary(euclidean_plane):
    u = GridFunction.centered(np.ones((8, 8)), 0.1)
    with pytest.raises(PreconditionError):
        verify_bpv_grid(u, euclidean_plane, 0.0, 1.0)


def test_rayleigh_quotient_without_an_extremal():
    # alpha = 0 in three dimensions: exact quotient of 1 - rho^2 is 35/4
    profile = RadialProfile.from_function(lambda rho: 1 - rho**2, R=1.0, M=2000)
    quotient = radial_rayleigh_quotient(profile, 0.0, 3)
    assert quotient == pytest.approx(8.75, rel=1e-3)
    assert quotient > first_zero(0.0) ** 2
    with pytest.raises(PreconditionError):
        radial_eigen_min(0.0, 3, M=200)


def test_zero_order_margin_stays_away_from_zero_in_three_dimensions():
    # no extremal exists for alpha = 0 when n >= 3: refinement must not close the gap
    spec = NormSpec.euclidean(3)

    def bump(points):
        return np.maximum(1.0 - np.sum(points**2, axis=-1), 0.0) ** 2

    relative = []
    for size in (24, 32, 48):
        u = GridFunction.sample(bump, (size, size, size), 2.5 / size)
        report = verify_bpv_grid(u, spec, 0.0, 4 * math.pi / 3)
        assert report.passed
        assert report.warning is None
        relative.append(report.margin / report.lhs)
    # the continuum value is 0.224
    assert min(relative) > 0.1
    assert max(relative) - min(relative) < 0.05
