"""Rectifying-curve characterizations: ratio fits, apex recovery,
latitude profiles and the extremal inequality."""

import numpy as np
import pytest

from desitter.curves import (CurvatureProfile, FramedSample, ParamCurve,
                             framed_samples, synthesize_from_curvatures)
from desitter.errors import (GeodesicCurve, InsufficientSamples, NotRectifying,
                             PlanarDegenerate, RegularityFailure)
from desitter.minkowski import lorentz_dot
from desitter.pseudosphere import TangentSphereChart
from desitter.rectifying import (EtaProfile, apex_conditions,
                                 construct_rectifying, corollary_roundtrip,
                                 extremal_check, fit_ratio_form, recover_apex)

rng = np.random.default_rng(20240821)

APEX = np.array([0.0, 1.0, 0.0, 0.0])


def _canonical_init(kappa, tau0):
    return FramedSample(s=0.0,
                        alpha=np.array([0.0, 1.0, 0.0, 0.0]),
                        T=np.array([1.0, 0.0, 0.0, 0.0]),
                        N=np.array([0.0, 0.0, 1.0, 0.0]),
                        B=np.array([0.0, 0.0, 0.0, 1.0]),
                        kappa_g=kappa, tau_g=tau0)


def _synthesized(tau, kappa=2.0, s_range=(-1.0, 1.0)):
    profile = CurvatureProfile(kappa_g=lambda s: kappa, tau_g=tau)
    return synthesize_from_curvatures(profile, _canonical_init(kappa, tau(0.0)),
                                      s_range, 1e-3)


def test_fit_ratio_form_exact():
    samples = _synthesized(lambda s: 2.0 * (0.3 * np.sinh(s) + 0.1 * np.cosh(s)))
    fit = fit_ratio_form(samples)
    assert fit.coeff_sinh == pytest.approx(0.3, abs=1e-12)
    assert fit.coeff_cosh == pytest.approx(0.1, abs=1e-12)
    assert fit.residual_rms < 1e-12
    assert fit.admissible


def test_fit_ratio_form_inadmissible():
    # mu2^2 - mu1^2 = B^2 - A^2 >= 1 must be flagged
    samples = _synthesized(lambda s: 2.0 * (0.1 * np.sinh(s) + 1.5 * np.cosh(s)))
    fit = fit_ratio_form(samples)
    assert not fit.admissible


def test_fit_ratio_form_rejects_linear_ratio():
    samples = _synthesized(lambda s: 2.0 * s)
    fit = fit_ratio_form(samples)
    assert fit.residual_rms > 1e-2


def test_fit_ratio_form_geodesic_and_small_inputs():
    samples = _synthesized(lambda s: 0.5 * np.sinh(s))
    with pytest.raises(InsufficientSamples):
        fit_ratio_form(samples[:5])
    flat = [FramedSample(s=smp.s, alpha=smp.alpha, T=smp.T, N=smp.N, B=smp.B,
                         kappa_g=0.0, tau_g=0.0) for smp in samples]
    with pytest.raises(GeodesicCurve):
        fit_ratio_form(flat)


def test_apex_conditions_and_recovery_on_construction():
    trip = corollary_roundtrip(1.0, 0.0, 2.0, (-1.0, 1.0))
    report = apex_conditions(trip.samples, APEX)
    assert report.verdict is True
    assert max(report.residuals()) < 1e-5
    p, rms = recover_apex(trip.samples)
    err = min(np.max(np.abs(p - APEX)), np.max(np.abs(p + APEX)))
    assert err < 1e-5
    assert rms < 1e-6


def test_apex_conditions_reject_wrong_point():
    trip = corollary_roundtrip(1.0, 0.0, 2.0, (-1.0, 1.0))
    wrong = np.array([0.0, np.cosh(0.4), np.sinh(0.4), 0.0])
    wrong = wrong / np.sqrt(lorentz_dot(wrong, wrong))
    report = apex_conditions(trip.samples, wrong)
    assert report.verdict is False


def test_recover_apex_rejects_non_rectifying():
    samples = _synthesized(lambda s: 2.0 * s)
    with pytest.raises(NotRectifying):
        recover_apex(samples)


def test_recover_apex_rejects_planar():
    samples = _synthesized(lambda s: 0.0)
    with pytest.raises(PlanarDegenerate):
        recover_apex(samples)


def test_eta_profile_solves_latitude_ode():
    for a, t0 in ((1.0, 0.0), (0.7, 0.4), (-1.3, -0.2)):
        eta = EtaProfile(a=a, t0=t0)
        worst = max(abs(eta.ode_residual(t)) for t in np.linspace(-2, 2, 41))
        assert worst < 1e-12


def test_eta_profile_derivatives():
    eta = EtaProfile(a=1.2, t0=0.3)
    h = 1e-5
    for t in (-0.7, 0.0, 0.9):
        fd1 = (eta(t + h) - eta(t - h)) / (2 * h)
        fd2 = (eta(t + h) - 2 * eta(t) + eta(t - h)) / h ** 2
        assert eta.d1(t) == pytest.approx(fd1, abs=1e-8)
        assert eta.d2(t) == pytest.approx(fd2, abs=1e-5)


def test_construct_rectifying_speed_guard():
    # eta == constant violates sin^2(eta) - eta'^2 > 0 nowhere, but a
    # profile steeper than its latitude does
    chart = TangentSphereChart.at(APEX)
    gamma = ParamCurve(point=lambda t: np.cos(t) * chart.f2
                       + np.sin(t) * chart.f3, t_min=-1, t_max=1)
    with pytest.raises(RegularityFailure):
        construct_rectifying(APEX, gamma, lambda t: 0.05 + 0.5 * t, (-1, 1))


def test_corollary_roundtrip_constants():
    trip = corollary_roundtrip(1.0, 0.0, 2.0, (-1.0, 1.0))
    assert trip.b == pytest.approx(4.0)
    assert trip.kappa_max_err < 1e-3
    assert trip.fit.admissible
    assert trip.fit.residual_rms < 1e-3


def test_extremal_equality_on_rectifying():
    chart = TangentSphereChart.at(APEX)
    from desitter.pseudosphere import (canonical_directrix_sample,
                                       directrix_curve, spiral_curvature,
                                       synthesize_directrix)
    samples = synthesize_directrix(chart, spiral_curvature(1.0, 4.0),
                                   canonical_directrix_sample(chart),
                                   (-1.1, 1.1), 1e-3)
    gamma = directrix_curve(samples)
    eta = EtaProfile(a=1.0)
    reports = extremal_check(APEX, gamma, eta, (-1.0, 1.0))
    assert max(abs(r.gap) for r in reports) < 1e-6
    assert all(r.cos2_theta > 1.0 - 1e-6 for r in reports)


def test_extremal_strict_gap_off_family():
    chart = TangentSphereChart.at(APEX)
    from desitter.pseudosphere import (canonical_directrix_sample,
                                       directrix_curve, spiral_curvature,
                                       synthesize_directrix)
    samples = synthesize_directrix(chart, spiral_curvature(1.0, 4.0),
                                   canonical_directrix_sample(chart),
                                   (-1.1, 1.1), 1e-3)
    gamma = directrix_curve(samples)

    def eta(t):
        return np.arctan(1.0 / np.cosh(t)) + 0.05 * np.sin(2.0 * t)

    reports = extremal_check(APEX, gamma, eta, (-1.0, 1.0))
    gaps = [r.gap for r in reports]
    assert min(gaps) > -1e-6
    assert max(gaps) > 1e-3
