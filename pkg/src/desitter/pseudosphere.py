"""Timelike unit-speed curves in the 2-dimensional pseudo-sphere of a
tangent space: Sabban frames, curvature, and synthesis from prescribed
curvature.

For a base point p, the tangent space carries the induced Lorentzian
metric and its own unit pseudo-sphere; a curve gamma there has the
curve-surface (Sabban) frame {gamma, T = gamma', N = gamma ∧ gamma'}
with curvature kappa = det(gamma, gamma', gamma'', p).
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .curves import FD_H23, ParamCurve, _richardson, _cd1, _cd2
from .errors import FrameDrift, NotOnPseudoSphere
from .minkowski import (det4, gram_matrix, lorentz_dot, on_sphere,
                        reorthonormalize_frame, tangent_cross, wedge3)

MEMBERSHIP_TOL = 1e-7

#: signatures of (p, gamma, T_gamma, N_gamma)
_CHART_SIGNATURES = (1.0, 1.0, -1.0, 1.0)
_CHART_GRAM = np.diag(_CHART_SIGNATURES)

#: pre-projection Gram drift allowed in one integrator step
DRIFT_MAX = 1e-3


@dataclass
class TangentSphereChart:
    """Base point p with a pseudo-orthonormal basis of its tangent space.

    f1 is timelike, f2 and f3 spacelike; all three are tangent at p.
    """

    p: np.ndarray
    f1: np.ndarray
    f2: np.ndarray
    f3: np.ndarray

    @classmethod
    def at(cls, p):
        """Deterministic chart from the canonical basis.

        The canonical vectors are projected off p by Gram-Schmidt; the
        first projected vector with a dominant timelike part becomes f1.
        """
        p = on_sphere(p)
        candidates = []
        for i in range(4):
            e = np.zeros(4)
            e[i] = 1.0
            w = e - lorentz_dot(e, p) * p
            if abs(lorentz_dot(w, w)) > 1e-12:
                candidates.append(w)
        timelike = [w for w in candidates if lorentz_dot(w, w) < -1e-12]
        if not timelike:
            raise NotOnPseudoSphere("no timelike direction tangent at p")
        f1 = timelike[0]
        rest = [w for w in candidates if w is not f1]
        basis = reorthonormalize_frame([p, f1] + rest[:2],
                                       (1.0, -1.0, 1.0, 1.0))
        return cls(p=p, f1=basis[1], f2=basis[2], f3=basis[3])

    def check_membership(self, x, tol=MEMBERSHIP_TOL):
        """Require x to lie in the unit pseudo-sphere of this tangent space."""
        qp = lorentz_dot(x, self.p)
        qx = lorentz_dot(x, x)
        if abs(qp) > tol or abs(qx - 1.0) > tol:
            raise NotOnPseudoSphere(
                f"<x,p> = {qp!r}, <x,x> = {qx!r} violate the chart")


@dataclass
class SabbanSample:
    """Directrix point with Sabban frame and curvature at arc length t."""

    t: float
    gamma: np.ndarray
    T: np.ndarray
    N: np.ndarray
    kappa: float

    def chart_frame(self, chart):
        return [chart.p, self.gamma, self.T, self.N]


def sabban_frame(chart: TangentSphereChart, gamma: ParamCurve, t):
    """Sabban frame and curvature of a timelike unit-speed directrix.

    kappa = det(gamma, gamma', gamma'', p); the normal is the tangent
    cross product at p: N = p × gamma × gamma'.
    """
    g = gamma(t)
    chart.check_membership(g)
    d1 = gamma.deriv(t, 1)
    d2 = gamma.deriv(t, 2)
    kappa = det4(g, d1, d2, chart.p)
    N = tangent_cross(chart.p, g, d1, tol=1e-5)
    return SabbanSample(t=float(t), gamma=g, T=d1, N=N, kappa=float(kappa))


def spiral_curvature(a, b, t0=0.0):
    """Curvature profile t -> b (cosh^2(t + t0) + a^2)^(-3/2), a, b != 0."""
    if a == 0 or b == 0:
        raise ValueError("a and b must be nonzero")

    def kappa(t):
        return b * (np.cosh(t + t0) ** 2 + a * a) ** (-1.5)

    return kappa


def canonical_directrix_sample(chart: TangentSphereChart, t=0.0):
    """Default initial frame gamma = f2, T = f1 at parameter t."""
    N = tangent_cross(chart.p, chart.f2, chart.f1, tol=1e-9)
    return SabbanSample(t=float(t), gamma=chart.f2.copy(), T=chart.f1.copy(),
                        N=N, kappa=0.0)


def synthesize_directrix(chart: TangentSphereChart, kappa: Callable,
                         init: SabbanSample, t_range, step):
    """Integrate the Sabban system for a prescribed curvature.

    The system (gamma' = T, T' = gamma + kappa N, N' = kappa T) is
    integrated with the classical fixed-step 4th-order scheme from
    ``init.t`` to both ends of ``t_range``, re-orthonormalizing
    (p, gamma, T, N) after every step so the samples never leave the
    pseudo-sphere of the chart.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    t_min, t_max = float(t_range[0]), float(t_range[1])
    if not (t_min <= init.t <= t_max):
        raise ValueError("init.t must lie inside t_range")
    p = chart.p

    def rhs(t, y):
        g, T, N = y
        k = kappa(t)
        return np.array([T, g + k * N, k * T])

    def project(y):
        frame = reorthonormalize_frame([p, y[0], y[1], y[2]],
                                       _CHART_SIGNATURES)
        return np.array(frame[1:])

    def march(t_stop, direction):
        y = np.array([init.gamma, init.T, init.N])
        t = init.t
        out = []
        hh = direction * step
        for _ in range(int(round(abs(t_stop - t) / step))):
            k1 = rhs(t, y)
            k2 = rhs(t + hh / 2, y + hh / 2 * k1)
            k3 = rhs(t + hh / 2, y + hh / 2 * k2)
            k4 = rhs(t + hh, y + hh * k3)
            y = y + hh / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            t += hh
            drift = float(np.max(np.abs(
                gram_matrix([p, y[0], y[1], y[2]]) - _CHART_GRAM)))
            if drift > DRIFT_MAX:
                raise FrameDrift(f"drift {drift!r} at t = {t!r}; reduce step")
            y = project(y)
            out.append((t, y))
        return out

    def to_sample(t, y):
        return SabbanSample(t=t, gamma=y[0], T=y[1], N=y[2],
                            kappa=float(kappa(t)))

    backward = march(t_min, -1.0)
    forward = march(t_max, +1.0)
    samples = [to_sample(t, y) for t, y in reversed(backward)]
    samples.append(to_sample(init.t, np.array([init.gamma, init.T, init.N])))
    samples.extend(to_sample(t, y) for t, y in forward)
    return samples


def directrix_curve(samples):
    """Interpolating ParamCurve through synthesized directrix samples."""
    from .curves import curve_from_samples
    t_grid = np.array([s.t for s in samples])
    pts = np.array([s.gamma for s in samples])
    return curve_from_samples(t_grid, pts)
