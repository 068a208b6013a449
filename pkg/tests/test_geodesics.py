"""Geodesics of the unit pseudo-sphere and normal-geodesic transport."""

import numpy as np
import pytest

from desitter.errors import Antipodal, NoGeodesic, NotTangent
from desitter.geodesics import (GeodesicKind, exp_map, geodesic_between,
                                normal_geodesic_point,
                                parallel_transport_normal_geodesic)
from desitter.minkowski import lorentz_dot

rng = np.random.default_rng(20240819)


def _random_sphere_point():
    while True:
        x = rng.normal(size=4)
        q = lorentz_dot(x, x)
        if q > 0.1:
            return x / np.sqrt(q)


def test_geodesic_between_endpoints_and_membership():
    hits = 0
    while hits < 25:
        p, q = _random_sphere_point(), _random_sphere_point()
        d = lorentz_dot(p, q)
        if abs(abs(d) - 1.0) < 1e-6 or d < -1.0:
            continue
        hits += 1
        arc = geodesic_between(p, q)
        assert np.max(np.abs(arc(0.0) - p)) < 1e-12
        assert np.max(np.abs(arc(arc.theta) - q)) < 1e-9
        for t in np.linspace(0.0, arc.theta, 9):
            x = arc(t)
            assert abs(lorentz_dot(x, x) - 1.0) < 1e-10


def test_geodesic_kinds():
    p = np.array([0.0, 1.0, 0.0, 0.0])
    spacelike_sep = np.array([0.0, np.cos(0.7), np.sin(0.7), 0.0])
    assert geodesic_between(p, spacelike_sep).kind is GeodesicKind.CIRCLE
    timelike_sep = np.array([np.sinh(1.0), np.cosh(1.0), 0.0, 0.0])
    assert geodesic_between(p, timelike_sep).kind is GeodesicKind.PSEUDO_CIRCLE
    null_sep = p + np.array([1.0, 0.0, 1.0, 0.0])
    assert geodesic_between(p, null_sep).kind is GeodesicKind.LINE


def test_geodesic_between_failures():
    p = np.array([0.0, 1.0, 0.0, 0.0])
    with pytest.raises(Antipodal):
        geodesic_between(p, p)
    with pytest.raises(Antipodal):
        geodesic_between(p, -p)
    far = np.array([np.sinh(1.0), -np.cosh(1.0), 0.0, 0.0])
    assert lorentz_dot(p, far) < -1
    with pytest.raises(NoGeodesic):
        geodesic_between(p, far)


def test_exp_map_membership_and_tangency():
    for _ in range(25):
        p = _random_sphere_point()
        w = rng.normal(size=4)
        w = w - lorentz_dot(w, p) * p
        q = lorentz_dot(w, w)
        if abs(q) < 1e-6:
            continue
        w = w / np.sqrt(abs(q))
        for t in (-0.8, 0.3, 1.2):
            x = exp_map(p, w, t)
            assert abs(lorentz_dot(x, x) - 1.0) < 1e-9


def test_exp_map_rejects_non_tangent():
    p = np.array([0.0, 1.0, 0.0, 0.0])
    with pytest.raises(NotTangent):
        exp_map(p, np.array([0.0, 1.0, 1.0, 0.0]), 0.5)


def test_exp_map_null_direction_is_line():
    p = np.array([0.0, 1.0, 0.0, 0.0])
    w = np.array([1.0, 0.0, 1.0, 0.0])
    x = exp_map(p, w, 2.0)
    assert np.max(np.abs(x - (p + 2.0 * w))) < 1e-15
    assert abs(lorentz_dot(x, x) - 1.0) < 1e-12


def test_normal_geodesic_transport_preserves_products():
    from desitter.curves import CurvatureProfile, FramedSample, \
        synthesize_from_curvatures
    profile = CurvatureProfile(kappa_g=lambda s: 2.0, tau_g=lambda s: 0.7)
    init = FramedSample(s=0.0,
                        alpha=np.array([0.0, 1.0, 0.0, 0.0]),
                        T=np.array([1.0, 0.0, 0.0, 0.0]),
                        N=np.array([0.0, 0.0, 1.0, 0.0]),
                        B=np.array([0.0, 0.0, 0.0, 1.0]),
                        kappa_g=2.0, tau_g=0.7)
    samples = synthesize_from_curvatures(profile, init, (-0.3, 0.3), 1e-3)
    smp = samples[len(samples) // 2]
    for u in (0.2, 0.9, 1.7):
        base = normal_geodesic_point(smp, u)
        PT, PN, PB = parallel_transport_normal_geodesic(smp, u)
        assert abs(lorentz_dot(base, base) - 1.0) < 1e-10
        # transported vectors stay tangent and keep their Gram products
        for vec, sig in ((PT, -1.0), (PN, 1.0), (PB, 1.0)):
            assert abs(lorentz_dot(base, vec)) < 1e-9
            assert abs(lorentz_dot(vec, vec) - sig) < 1e-9
        assert abs(lorentz_dot(PT, PN)) < 1e-9
        assert abs(lorentz_dot(PN, PB)) < 1e-9


def test_geodesic_velocity_is_derivative():
    p = np.array([0.0, 1.0, 0.0, 0.0])
    q = np.array([np.sinh(1.0), np.cosh(1.0), 0.0, 0.0])
    arc = geodesic_between(p, q)
    h = 1e-6
    for t in (0.1, 0.5):
        fd = (arc(t + h) - arc(t - h)) / (2 * h)
        assert np.max(np.abs(fd - arc.velocity(t))) < 1e-8
