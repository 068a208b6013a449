"""Geodesics of the unit pseudo-sphere: point pairs, exponential map,
parallel transport along principal-normal geodesics."""

from dataclasses import dataclass
from enum import Enum
from typing import Callable

import numpy as np

from .errors import Antipodal, NoGeodesic, NotNormalized, NotTangent
from .minkowski import lorentz_dot, lorentz_norm, on_sphere

#: tolerance for the <p,q> = 1 (null plane) boundary
BOUNDARY_TOL = 1e-9

TANGENT_TOL = 1e-7


class GeodesicKind(Enum):
    PSEUDO_CIRCLE = "pseudo-circle"
    CIRCLE = "circle"
    LINE = "line"


@dataclass
class GeodesicArc:
    """Geodesic through ``p`` with direction ``w``.

    The evaluator is cosh(t)p + sinh(t)w, cos(t)p + sin(t)w or p + tw,
    according to ``kind`` (i.e. to the causal character of w).
    """

    kind: GeodesicKind
    p: np.ndarray
    w: np.ndarray
    theta: float = 0.0

    def __call__(self, t):
        if self.kind is GeodesicKind.PSEUDO_CIRCLE:
            return np.cosh(t) * self.p + np.sinh(t) * self.w
        if self.kind is GeodesicKind.CIRCLE:
            return np.cos(t) * self.p + np.sin(t) * self.w
        return self.p + t * self.w

    def velocity(self, t):
        if self.kind is GeodesicKind.PSEUDO_CIRCLE:
            return np.sinh(t) * self.p + np.cosh(t) * self.w
        if self.kind is GeodesicKind.CIRCLE:
            return -np.sin(t) * self.p + np.cos(t) * self.w
        return self.w.copy()


def geodesic_between(p, q, tol=BOUNDARY_TOL):
    """Geodesic arc joining two distinct, non-antipodal sphere points.

    Case analysis on d = <p,q>: d > 1 gives a pseudo-circle (arccosh
    angle), |d| < 1 a circle (arccos angle), d = 1 a straight line
    through the null direction q - p; d < -1 admits no geodesic.
    """
    p, q = on_sphere(p), on_sphere(q)
    # Euclidean norms: the Lorentz norm also vanishes on null-separated
    # distinct pairs, which are legitimate inputs (line case)
    if np.linalg.norm(p - q) < 1e-12 or np.linalg.norm(p + q) < 1e-12:
        raise Antipodal("p and q are equal or antipodal")
    d = lorentz_dot(p, q)
    omega = q - d * p
    if d > 1.0 + tol:
        # log form of arccosh, stable near d = 1
        theta = float(np.log(d + np.sqrt(d * d - 1.0)))
        return GeodesicArc(GeodesicKind.PSEUDO_CIRCLE, p,
                           omega / lorentz_norm(omega), theta)
    if abs(d - 1.0) <= tol:
        return GeodesicArc(GeodesicKind.LINE, p, omega, 1.0)
    if d > -1.0 + tol:
        theta = float(np.arccos(d))
        return GeodesicArc(GeodesicKind.CIRCLE, p,
                           omega / lorentz_norm(omega), theta)
    if d < -1.0 - tol:
        raise NoGeodesic(f"<p,q> = {d!r} < -1: no joining geodesic")
    raise Antipodal("joining plane degenerates at <p,q> = -1")


def exp_map(p, w, t):
    """Point of the constant-speed geodesic from p with velocity w, at t.

    ``w`` must be tangent at p and unit or null; the arc type follows
    the causal character of w.
    """
    p = on_sphere(p)
    w = np.asarray(w, dtype=float)
    if abs(lorentz_dot(p, w)) > TANGENT_TOL:
        raise NotTangent(f"<p,w> = {lorentz_dot(p, w)!r}")
    q = lorentz_dot(w, w)
    if abs(q) <= BOUNDARY_TOL:
        return p + t * w
    if abs(abs(q) - 1.0) > 1e-9:
        raise NotNormalized(f"<w,w> = {q!r} is neither unit nor null")
    if q < 0:
        return np.cosh(t) * p + np.sinh(t) * w
    return np.cos(t) * p + np.sin(t) * w


def parallel_transport_normal_geodesic(sample, u):
    """Transport (T, N, B) along the principal-normal geodesic to exp(u N).

    Vectors orthogonal to the geodesic tangent are invariant, so T and B
    pass through unchanged while N rotates against the base point:
    P(N) = -sin(u) alpha + cos(u) N.
    """
    PT = sample.T.copy()
    PN = -np.sin(u) * sample.alpha + np.cos(u) * sample.N
    PB = sample.B.copy()
    return PT, PN, PB


def normal_geodesic_point(sample, u):
    """Base point exp_alpha(u N) of the transported frame."""
    return np.cos(u) * sample.alpha + np.sin(u) * sample.N
