"""Index-one linear algebra: metric, determinants, triple products."""

import numpy as np
import pytest

from desitter.minkowski import (CausalCharacter, causal_character,
                                compensated_sum, det4, gram_matrix,
                                lorentz_dot, lorentz_norm, on_sphere,
                                reorthonormalize_frame, tangent_cross, vec4,
                                wedge3)

IDENTITY_TOL = 1e-11

rng = np.random.default_rng(20240817)


def test_lorentz_dot_signature():
    e1, e2 = vec4(1, 0, 0, 0), vec4(0, 1, 0, 0)
    assert lorentz_dot(e1, e1) == -1.0
    assert lorentz_dot(e2, e2) == 1.0
    assert lorentz_dot(e1, e2) == 0.0


def test_lorentz_dot_bilinear():
    for _ in range(100):
        x, y, z = rng.normal(size=(3, 4))
        a, b = rng.normal(size=2)
        lhs = lorentz_dot(a * x + b * y, z)
        rhs = a * lorentz_dot(x, z) + b * lorentz_dot(y, z)
        assert abs(lhs - rhs) < 1e-12 * (1 + abs(lhs))


def test_lorentz_dot_compensated_cancellation():
    # the naive sum loses the tiny head-to-tail imbalance entirely
    big = 1e8
    x = vec4(big, big, 1e-8, 0.0)
    assert abs(lorentz_dot(x, x) - 1e-16) < 1e-30


def test_compensated_sum_matches_fsum():
    import math
    for _ in range(50):
        terms = rng.normal(size=64) * np.logspace(-8, 8, 64)
        assert compensated_sum(terms) == pytest.approx(math.fsum(terms),
                                                       abs=1e-6, rel=1e-15)


def test_causal_character():
    assert causal_character(vec4(2, 1, 0, 0)) is CausalCharacter.TIMELIKE
    assert causal_character(vec4(1, 2, 0, 0)) is CausalCharacter.SPACELIKE
    assert causal_character(vec4(1, 1, 0, 0)) is CausalCharacter.NULL


def test_wedge3_identity_random():
    for _ in range(300):
        w, x, y, z = rng.normal(size=(4, 4))
        lhs = lorentz_dot(w, wedge3(x, y, z))
        rhs = det4(w, x, y, z)
        assert abs(lhs - rhs) < IDENTITY_TOL * max(1.0, abs(rhs))


def test_wedge3_orthogonal_to_arguments():
    for _ in range(100):
        x, y, z = rng.normal(size=(3, 4))
        w = wedge3(x, y, z)
        for v in (x, y, z):
            assert abs(lorentz_dot(w, v)) < 1e-10 * np.linalg.norm(w)


def test_tangent_cross_identity_random():
    for _ in range(300):
        q = on_sphere(_random_sphere_point())
        u, v, w = rng.normal(size=(3, 4))
        u = u - lorentz_dot(u, q) * q
        v = v - lorentz_dot(v, q) * q
        lhs = lorentz_dot(w, tangent_cross(q, u, v))
        rhs = -det4(q, u, v, w)
        assert abs(lhs - rhs) < IDENTITY_TOL * max(1.0, abs(rhs))


def _random_sphere_point():
    while True:
        x = rng.normal(size=4)
        q = lorentz_dot(x, x)
        if q > 0.1:
            return x / np.sqrt(q)


def test_on_sphere_projects_and_rejects():
    p = on_sphere(vec4(0, 1, 0, 0) * (1 + 1e-8))
    assert abs(lorentz_dot(p, p) - 1.0) < 1e-15
    from desitter.errors import NotOnSphere
    with pytest.raises(NotOnSphere):
        on_sphere(vec4(0, 2, 0, 0))


def test_reorthonormalize_frame_gram():
    signatures = (1.0, -1.0, 1.0, 1.0)
    base = np.eye(4)[[1, 0, 2, 3]]
    frame = [v + 1e-6 * rng.normal(size=4) for v in base]
    fixed = reorthonormalize_frame(frame, signatures)
    g = gram_matrix(fixed) - np.diag(signatures)
    assert np.max(np.abs(g)) < 1e-12
