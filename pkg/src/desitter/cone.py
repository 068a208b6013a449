"""Timelike conical surfaces Phi(u,v) = cos(v) p + sin(v) gamma(u):
fundamental forms, curvatures, the cone-geodesic system and its
closed-form solution, and geodesic testing."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.interpolate import CubicSpline

from .curves import ParamCurve
from .errors import ApexSingularity, DomainExit
from .minkowski import lorentz_dot, lorentz_norm, on_sphere, tangent_cross
from .pseudosphere import TangentSphereChart, sabban_frame

#: distance from v = 0 or v = pi at which evaluation is refused
APEX_TOL = 1e-9

#: finite-difference step on the (u, v) chart
FD_UV = 1e-4

#: atanh arguments are clamped here before DomainExit is raised
ATANH_CLAMP = 1.0 - 1e-12


@dataclass
class ConicalSurface:
    """Cone with apex p over a timelike unit-speed directrix gamma.

    ``gamma`` lives in the unit pseudo-sphere of the tangent space at
    p (``chart``); the ruling parameter v is restricted to (0, pi).
    """

    chart: TangentSphereChart
    gamma: ParamCurve

    @property
    def p(self):
        return self.chart.p

    def evaluate(self, u, v):
        """Phi(u,v) = cos(v) p + sin(v) gamma(u)."""
        _check_v(v)
        return np.cos(v) * self.p + np.sin(v) * self.gamma(u)

    def partials(self, u, v):
        """(Phi_u, Phi_v) by finite differences on the chart."""
        _check_v(v)
        h = FD_UV
        phi_u = (self.evaluate(u + h, v) - self.evaluate(u - h, v)) / (2 * h)
        phi_v = (self.evaluate(u, v + h) - self.evaluate(u, v - h)) / (2 * h)
        return phi_u, phi_v

    def fundamental_form_and_normal(self, u, v):
        """(E, F, G, xi): first fundamental form and unit normal.

        E, F, G are computed from finite-difference partials (the exact
        values are -sin^2(v), 0, 1); the normal is xi = -N_gamma(u).
        """
        phi_u, phi_v = self.partials(u, v)
        E = lorentz_dot(phi_u, phi_u)
        F = lorentz_dot(phi_u, phi_v)
        G = lorentz_dot(phi_v, phi_v)
        xi = -sabban_frame(self.chart, self.gamma, u).N
        return E, F, G, xi

    def curvatures(self, u, v):
        """(K, H) = (1, kappa_gamma(u) / (2 sin v)).

        K is cross-checked through a finite-difference Weingarten map:
        the shape operator annihilates the ruling direction, so its
        determinant vanishes and K = 1 + det(S).
        """
        _check_v(v)
        kappa = sabban_frame(self.chart, self.gamma, u).kappa
        H = kappa / (2.0 * np.sin(v))
        K = 1.0 + self._shape_det(u, v)
        return K, H

    def _shape_operator(self, u, v):
        """Matrix of S = -d(xi) projected on (Phi_u, Phi_v), FD version."""
        h = FD_UV
        phi_u, phi_v = self.partials(u, v)

        def xi(uu, vv):
            # normal from the surface partials only, independent of the
            # closed-form -N_gamma route
            pu, pv = self.partials(uu, vv)
            w = tangent_cross(self.evaluate(uu, vv), pu, pv, tol=1e-4)
            return w / lorentz_norm(w)

        dxi_u = (xi(u + h, v) - xi(u - h, v)) / (2 * h)
        dxi_v = (xi(u, v + h) - xi(u, v - h)) / (2 * h)
        E = lorentz_dot(phi_u, phi_u)
        G = lorentz_dot(phi_v, phi_v)
        out = np.empty((2, 2))
        for j, dxi in enumerate((dxi_u, dxi_v)):
            s_vec = -dxi  # <xi, Phi> = 0 kills the Gauss correction term
            out[0, j] = lorentz_dot(s_vec, phi_u) / E
            out[1, j] = lorentz_dot(s_vec, phi_v) / G
        return out

    def _shape_det(self, u, v):
        m = self._shape_operator(u, v)
        return float(m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0])

    def shape_trace(self, u, v):
        return float(np.trace(self._shape_operator(u, v)))


def _check_v(v):
    if not (APEX_TOL < v < np.pi - APEX_TOL):
        raise ApexSingularity(f"v = {v!r} outside (0, pi)")


@dataclass
class ConeGeodesicParams:
    """Constants of the closed-form cone geodesic.

    cos(v(s)) = lambda1 sinh(s + s0) + lambda2 cosh(s + s0) and the
    first integral u' sin^2(v) = c with c^2 = lambda1^2 - lambda2^2 + 1.
    """

    lambda1: float
    lambda2: float
    s0: float = 0.0
    c: float = None

    def __post_init__(self):
        c2 = self.lambda1 ** 2 - self.lambda2 ** 2 + 1.0
        if c2 <= 0:
            raise ValueError("lambda1^2 - lambda2^2 + 1 must be positive")
        if self.c is None:
            self.c = float(np.sqrt(c2))
        elif abs(self.c ** 2 - c2) > 1e-12:
            raise ValueError("c^2 != lambda1^2 - lambda2^2 + 1")

    def f(self, s):
        return (self.lambda1 * np.sinh(s + self.s0)
                + self.lambda2 * np.cosh(s + self.s0))

    def v(self, s):
        f = self.f(s)
        if abs(f) >= 1.0:
            raise DomainExit("cos(v) left (-1, 1)", s)
        return float(np.arccos(f))

    def u(self, s):
        arg = (self.lambda1 * self.lambda2 / self.c
               + (1.0 + self.lambda1 ** 2) / self.c * np.tanh(s + self.s0))
        if abs(arg) >= 1.0:
            if abs(arg) < 1.0 + 1e-12:
                arg = np.clip(arg, -ATANH_CLAMP, ATANH_CLAMP)
            else:
                raise DomainExit("atanh argument left (-1, 1)", s)
        return float(np.arctanh(arg))


def cone_geodesic_closed_form(params: ConeGeodesicParams, s_range, n=201):
    """Sample the closed-form geodesic as (u(s), v(s), s) triples.

    Raises DomainExit (reporting the exiting s) if the arccos or atanh
    domain is violated anywhere on the grid.
    """
    s_values = np.linspace(float(s_range[0]), float(s_range[1]), n)
    return [(params.u(s), params.v(s), float(s)) for s in s_values]


def unit_speed_residual(params: ConeGeodesicParams, s):
    """Residual of -(u')^2 sin^2(v) + (v')^2 = -1 at s, by differentiation
    of the closed forms (u' from the first integral)."""
    v = params.v(s)
    fp = (params.lambda1 * np.cosh(s + params.s0)
          + params.lambda2 * np.sinh(s + params.s0))
    vp = -fp / np.sin(v)
    up = params.c / np.sin(v) ** 2
    return float(-(up ** 2) * np.sin(v) ** 2 + vp ** 2 + 1.0)


def is_geodesic_on_cone(surface: ConicalSurface, path, tol=1e-4):
    """Check the cone-geodesic system along a unit-speed (u, v, s) path.

    Evaluates the residuals of u'' + 2 u' v' cot(v) = 0 and
    v'' + (u')^2 sin(v) cos(v) = 0 (the tangential components of the
    ambient acceleration) by spline differentiation of the path.
    Returns (verdict, max_residual).
    """
    path = np.asarray(path, dtype=float)
    s = path[:, 2]
    cu = CubicSpline(s, path[:, 0])
    cv = CubicSpline(s, path[:, 1])
    # skip the outermost samples where spline derivatives degrade
    inner = s[6:-6] if len(s) > 16 else s
    worst = 0.0
    for si in inner:
        up, upp = float(cu(si, 1)), float(cu(si, 2))
        vp, vpp = float(cv(si, 1)), float(cv(si, 2))
        v = float(cv(si))
        r1 = upp + 2.0 * up * vp / np.tan(v)
        r2 = vpp + up * up * np.sin(v) * np.cos(v)
        unit = -(up ** 2) * np.sin(v) ** 2 + vp ** 2 + 1.0
        if abs(unit) > 1e-6:
            return False, float(abs(unit))
        worst = max(worst, abs(r1), abs(r2))
    return worst < tol, float(worst)


def compose_cone_curve(surface: ConicalSurface, params: ConeGeodesicParams,
                       s_range):
    """Unit-speed ParamCurve s -> Phi(u(s), v(s)) for the closed form."""

    def point(s):
        return surface.evaluate(params.u(s), params.v(s))

    return ParamCurve(point=point, t_min=float(s_range[0]),
                      t_max=float(s_range[1]))
