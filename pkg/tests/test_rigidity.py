"""Tests for the Bessel kernel, layer-cake integration and the flatness verdict."""

import math

import numpy as np
import pytest

from minkowski_bpv.exceptions import PreconditionError
from minkowski_bpv.specfun import bessel_j, first_zero
from minkowski_bpv.rigidity import (
    Verdict,
    VolumeProfile,
    analyze_h_alpha,
    constant_deficiency,
    constituent_identities,
    deficiency_integral,
    h_alpha,
    h_alpha_zero,
    integral_identity,
    layer_cake_integral,
    monotone_check,
    power_deficiency,
    rigidity_functional,
    rigidity_report,
    rigidity_verdict,
    scaled_kernel,
    step_deficiency,
)

KERNEL_PAIRS = [(0.0, 2), (0.25, 3), (0.5, 3), (1.0, 4), (1.0, 5), (1.5, 5)]


@pytest.mark.parametrize("alpha, n", KERNEL_PAIRS)
def test_integral_identity(alpha, n):
    assert abs(integral_identity(alpha, n)) <= 1e-8


@pytest.mark.parametrize("alpha, n", KERNEL_PAIRS)
def test_kernel_changes_sign_once(alpha, n):
    t0 = h_alpha_zero(alpha, n)
    assert 0 < t0 < 1
    assert abs(h_alpha(alpha, n, t0)) < 1e-12
    assert h_alpha(alpha, n, t0 / 2) < 0
    assert h_alpha(alpha, n, (1 + t0) / 2) > 0


@pytest.mark.parametrize("alpha, n", KERNEL_PAIRS)
def test_constituent_identities(alpha, n):
    first, second = constituent_identities(alpha, n)
    assert abs(first) <= 1e-10
    assert abs(second) <= 1e-10


def test_plane_kernel_has_no_middle_term():
    t = np.linspace(0.1, 1.0, 10)
    x = first_zero(0.0) * t
    expected = bessel_j(1.0, x) ** 2 - bessel_j(0.0, x) ** 2
    assert np.allclose(h_alpha(0.0, 2, t), expected, atol=1e-15)


def test_sign_change_is_refined_to_full_precision():
    t0 = h_alpha_zero(0.5, 3)
    step = 4 * np.finfo(float).eps * t0 + 1e-15
    assert h_alpha(0.5, 3, t0 - step) <= 0 <= h_alpha(0.5, 3, t0 + step)


@pytest.mark.parametrize("alpha, n", [(0.25, 3), (0.5, 3), (1.0, 5), (1.5, 5)])
def test_scaled_kernel_is_continuous_at_the_origin(alpha, n):
    limit = scaled_kernel(alpha, n, 0.0)
    assert limit < 0
    assert scaled_kernel(alpha, n, 1e-6) == pytest.approx(limit, rel=1e-8)


def test_scaled_kernel_vanishes_at_the_origin_in_the_plane():
    assert scaled_kernel(0.0, 2, 0.0) == 0.0


def test_kernel_arguments():
    assert isinstance(h_alpha(0.5, 3, 0.5), float)
    with pytest.raises(PreconditionError):
        h_alpha(0.5, 3, 0.0)
    with pytest.raises(PreconditionError):
        h_alpha(0.5, 3, 1.5)
    with pytest.raises(PreconditionError):
        h_alpha(0.0, 3, 0.5)


def test_analyze_h_alpha():
    analysis = analyze_h_alpha(1.0, 4)
    assert analysis.t0 == h_alpha_zero(1.0, 4)
    assert abs(analysis.integral_identity_residual) <= 1e-8


@pytest.mark.parametrize("alpha, n", [(0.0, 2), (0.5, 3), (1.0, 4)])
@pytest.mark.parametrize("which, beta", [(1, 0.0), (1, 1.0), (1, 2.0), (2, None), (3, None)])
def test_auxiliary_functions_are_monotone(alpha, n, which, beta):
    assert monotone_check(which, alpha, n, beta=beta) <= 1e-12


def test_monotone_check_arguments():
    with pytest.raises(PreconditionError):
        monotone_check(1, 0.5, 3, beta=3.0)
    with pytest.raises(PreconditionError):
        monotone_check(4, 0.5, 3)


def test_layer_cake_of_a_linear_function():
    rho = np.linspace(0.0, 1.0, 11)
    value = layer_cake_integral(VolumeProfile.euclidean(2), rho, 1 - rho, 1.0)
    assert value == pytest.approx(math.pi / 3, rel=1e-12)


def test_layer_cake_of_the_squared_extremal():
    j0 = first_zero(0.0)
    rho = np.linspace(0.0, 1.0, 2001)
    values = np.asarray(bessel_j(0.0, j0 * rho)) ** 2
    values[-1] = 0.0
    value = layer_cake_integral(VolumeProfile.euclidean(2), rho, values, 1.0)
    assert value == pytest.approx(math.pi * bessel_j(1.0, j0) ** 2, rel=1e-5)


def test_layer_cake_of_zero():
    rho = np.linspace(0.0, 2.0, 5)
    assert layer_cake_integral(VolumeProfile.euclidean(3), rho, np.zeros(5), 2.0) == 0.0


def test_layer_cake_rejects_bad_input():
    vp = VolumeProfile.euclidean(2)
    rho = np.linspace(0.0, 1.0, 5)
    with pytest.raises(PreconditionError):
        layer_cake_integral(vp, rho, np.array([0.5, 1.0, 0.5, 0.2, 0.0]), 1.0)
    with pytest.raises(PreconditionError):
        layer_cake_integral(vp, rho, 2 - rho, 1.0)
    with pytest.raises(PreconditionError):
        layer_cake_integral(vp, rho, 1 - rho, 2.0)


@pytest.mark.parametrize("alpha, n", KERNEL_PAIRS)
def test_euclidean_functional_vanishes(alpha, n):
    assert abs(rigidity_functional(VolumeProfile.euclidean(n), alpha, n, 1.0)) <= 1e-7


@pytest.mark.parametrize("c", [0.5, 0.8, 0.95])
def test_scaled_flat_functional_is_negative(c):
    vp = VolumeProfile.scaled_flat(2, c)
    assert rigidity_functional(vp, 0.0, 2, 1.0) < -1e-6 * math.pi


DEFICIENCIES = {
    "power": power_deficiency(0.3),
    "power-saturated": power_deficiency(0.5, 2.0, 0.5),
    "step": step_deficiency(0.3, 0.5),
}


@pytest.mark.parametrize("name", sorted(DEFICIENCIES))
@pytest.mark.parametrize("alpha, n", [(0.0, 2), (1.0, 4)])
def test_deficient_profiles_have_negative_functional(name, alpha, n):
    vp = VolumeProfile.parametric(n, DEFICIENCIES[name])
    assert rigidity_functional(vp, alpha, n, 1.0) < 0


@pytest.mark.parametrize("name", ["power", "power-saturated"])
@pytest.mark.parametrize("alpha, n", [(0.0, 2), (1.0, 4)])
def test_growing_deficient_profiles_violate_bpv(name, alpha, n):
    vp = VolumeProfile.parametric(n, DEFICIENCIES[name])
    assert rigidity_verdict(vp, alpha, n) == Verdict.BPV_VIOLATED


def test_a_shrinking_ball_volume_is_rejected():
    vp = VolumeProfile.parametric(2, DEFICIENCIES["step"])
    with pytest.raises(PreconditionError):
        rigidity_report(vp, 0.0, 2)


@pytest.mark.parametrize(
    "deficiency",
    [power_deficiency(0.2, 0.5), step_deficiency(0.4, 0.9), constant_deficiency(0.3)],
)
def test_deficiency_integral_is_non_negative(deficiency):
    assert deficiency_integral(deficiency, 0.5, 3) >= -1e-8


def test_constant_deficiency_is_the_equality_case():
    vp = VolumeProfile.parametric(2, constant_deficiency(0.3))
    assert abs(rigidity_functional(vp, 0.0, 2, 1.0)) <= 1e-8
    with pytest.raises(PreconditionError):
        rigidity_report(vp, 0.0, 2)


def test_functional_is_homogeneous_in_the_radius():
    vp = VolumeProfile.scaled_flat(3, 0.8, core=1.0)
    small = rigidity_functional(vp, 0.5, 3, 1.0)
    large = rigidity_functional(VolumeProfile.scaled_flat(3, 0.8, core=2.0), 0.5, 3, 2.0)
    assert large == pytest.approx(8 * small, rel=1e-8)


@pytest.mark.parametrize("alpha, n", [(0.0, 2), (1.0, 4)])
def test_euclidean_profile_is_flat(alpha, n):
    report = rigidity_report(VolumeProfile.euclidean(n), alpha, n)
    assert report.verdict == Verdict.FLAT
    assert report.checks["max_ratio_deviation"] == 0.0
    assert 0 < report.t0 < 1


def test_scaled_flat_profile_violates_bpv():
    report = rigidity_report(VolumeProfile.scaled_flat(2, 0.9), 0.0, 2)
    assert report.verdict == Verdict.BPV_VIOLATED
    assert report.functional < -report.tolerance
    dumped = report.model_dump(by_alias=True)
    assert dumped["I"] == report.functional
    assert dumped["verdict"] == "bpv_violated"


def test_small_deficiency_is_inconclusive():
    vp = VolumeProfile.parametric(3, power_deficiency(1e-5))
    report = rigidity_report(vp, 0.5, 3)
    assert report.verdict == Verdict.INCONCLUSIVE
    assert abs(report.functional) <= report.tolerance
    assert report.functional < 0
    assert report.checks["max_ratio_deviation"] > 1e-6
    assert rigidity_verdict(vp, 0.5, 3) == Verdict.INCONCLUSIVE


@pytest.mark.parametrize("alpha, n", [(0.25, 3), (1.0, 5)])
def test_functional_with_a_singular_kernel_weight(alpha, n):
    assert rigidity_functional(VolumeProfile.scaled_flat(n, 0.8), alpha, n, 1.0) < 0
    deficient = VolumeProfile.parametric(n, power_deficiency(0.3))
    assert rigidity_functional(deficient, alpha, n, 1.0) < 0
    assert rigidity_verdict(deficient, alpha, n) == Verdict.BPV_VIOLATED


def test_tabulated_euclidean_profile_is_flat():
    rho = np.linspace(0.01, 2.0, 200)
    vp = VolumeProfile.tabulated(2, rho, math.pi * rho**2)
    assert rigidity_verdict(vp, 0.0, 2) == Verdict.FLAT


def test_profile_from_csv(tmp_path):
    rho = np.concatenate(([1e-5], np.linspace(0.01, 1.0, 100)))
    parametric = VolumeProfile.parametric(2, power_deficiency(0.3))
    path = tmp_path / "vol.csv"
    rows = ["rho,vol"]
    rows += [f"{r:.17g},{v:.17g}" for r, v in zip(rho, parametric.volume(rho))]
    path.write_text("\n".join(rows) + "\n")
    vp = VolumeProfile.from_csv(2, path)
    assert vp.kind == "tabulated"
    assert np.allclose(vp.volume(rho), parametric.volume(rho), rtol=1e-12)
    assert rigidity_verdict(vp, 0.0, 2) == Verdict.BPV_VIOLATED


def test_bishop_gromov_violation_is_rejected():
    rho = np.linspace(0.001, 1.0, 100)
    vp = VolumeProfile.tabulated(2, rho, math.pi * rho**2 * (1 + rho))
    with pytest.raises(PreconditionError):
        rigidity_report(vp, 0.0, 2)


def test_profile_arguments():
    with pytest.raises(PreconditionError):
        VolumeProfile.scaled_flat(2, 1.5)
    with pytest.raises(PreconditionError):
        power_deficiency(1.0)
    with pytest.raises(PreconditionError):
        VolumeProfile.tabulated(2, [0.5, 0.2], [1.0, 2.0])
    with pytest.raises(PreconditionError):
        rigidity_report(VolumeProfile.euclidean(3), 0.0, 2)
