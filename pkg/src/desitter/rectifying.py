"""Detection, characterization, construction and extremal verification of
timelike rectifying curves.

A non-planar timelike curve is rectifying (for an apex p) exactly when
tau_g / kappa_g is a sinh/cosh combination of arc length with
mu2^2 - mu1^2 < 1; equivalently when <p, N_alpha> vanishes identically;
equivalently when it arises as cos(eta) p + sin(eta) gamma with
eta = arctan(a sech(t + t0)) over a unit-speed directrix gamma.
"""

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
import scipy.linalg

from .curves import (FramedSample, ParamCurve, TOL_GEODESIC, _cd1,
                     _frame_data, _richardson, framed_samples)
from .errors import (ApexOnCurve, GeodesicCurve, InsufficientSamples,
                     NotRectifying, PlanarDegenerate, RegularityFailure)
from .minkowski import lorentz_dot, on_sphere
from .pseudosphere import (TangentSphereChart, canonical_directrix_sample,
                           directrix_curve, sabban_frame, spiral_curvature,
                           synthesize_directrix)

#: residual above which a ratio fit is called not-rectifying
RECTIFYING_RMS_TOL = 1e-4

#: apex recovery residual limit
APEX_RESIDUAL_TOL = 1e-3

_ETA = np.diag([-1.0, 1.0, 1.0, 1.0])


def _hyperbolic_lstsq(s, y):
    """Least squares of y against {sinh s, cosh s}; returns (A, B, rms)."""
    design = np.column_stack([np.sinh(s), np.cosh(s)])
    coef, _, _, _ = np.linalg.lstsq(design, y, rcond=None)
    rms = float(np.sqrt(np.mean((design @ coef - y) ** 2)))
    return float(coef[0]), float(coef[1]), rms


def _shift_factorization(A, B):
    """Factor A sinh(s) + B cosh(s) as mu1 sinh(s+s0) + mu2 cosh(s+s0).

    The factorization is non-unique; convention: pick s0 to zero mu1
    when |B| > |A|, otherwise s0 = 0.
    """
    if abs(abs(A) - abs(B)) <= 1e-12 or abs(A) >= abs(B):
        return A, B, 0.0
    s0 = float(np.arctanh(np.clip(A / B, -1 + 1e-15, 1 - 1e-15)))
    mu1 = A * np.cosh(s0) - B * np.sinh(s0)
    mu2 = B * np.cosh(s0) - A * np.sinh(s0)
    return float(mu1), float(mu2), s0


@dataclass
class RatioFit:
    """Result of fitting tau_g/kappa_g to the hyperbolic form."""

    mu1: float
    mu2: float
    s0: float
    residual_rms: float
    admissible: bool
    #: raw coefficients in the shift-free basis {sinh s, cosh s}
    coeff_sinh: float = 0.0
    coeff_cosh: float = 0.0


def fit_ratio_form(samples: Sequence[FramedSample]) -> RatioFit:
    """Fit tau_g/kappa_g against {sinh s, cosh s} over framed samples.

    Samples with kappa_g at the geodesic floor are skipped; fewer than 8
    usable samples raises InsufficientSamples, none at all raises
    GeodesicCurve.
    """
    usable = [smp for smp in samples if smp.kappa_g > TOL_GEODESIC]
    if samples and not usable:
        raise GeodesicCurve("kappa_g below tolerance everywhere")
    if len(usable) < 8:
        raise InsufficientSamples(f"{len(usable)} usable samples, need >= 8")
    s = np.array([smp.s for smp in usable])
    ratio = np.array([smp.tau_g / smp.kappa_g for smp in usable])
    A, B, rms = _hyperbolic_lstsq(s, ratio)
    mu1, mu2, s0 = _shift_factorization(A, B)
    return RatioFit(mu1=mu1, mu2=mu2, s0=s0, residual_rms=rms,
                    admissible=bool(B * B - A * A < 1.0),
                    coeff_sinh=A, coeff_cosh=B)


@dataclass
class ApexReport:
    """Residuals of the six equivalent apex conditions.

    ``verdict`` is True when every residual is below the tolerance used
    at construction, False otherwise, and None when the m-coefficient
    invariant sits within 1e-9 of its boundary value 1 (the boundary
    case is undecided).
    """

    p: np.ndarray
    max_pN: float
    sigma: float
    sigma_dev: float
    m1: float
    m2: float
    m_fit_rms: float
    n1: float
    n2: float
    n_fit_rms: float
    n: float
    n_dev: float
    unit_identity_residual: float
    k1: float
    k2: float
    boundary: float
    verdict: Optional[bool]

    def residuals(self):
        return (self.max_pN, self.sigma_dev, self.m_fit_rms,
                self.n_fit_rms, self.n_dev, self.unit_identity_residual)


def apex_conditions(samples: Sequence[FramedSample], p, tol=1e-4) -> ApexReport:
    """Evaluate all apex conditions of a candidate fixed point.

    Conditions checked, each as a residual: <p,N> = 0; <p,B> constant;
    <p,T> and <p,alpha> hyperbolic in arc length; |p_perp| constant;
    the unit identity n1^2 - n2^2 + n^2 = 1; and the distance function
    cos(eta) = <p,alpha> (which shares the <p,alpha> fit).
    """
    p = on_sphere(p)
    if min(float(np.linalg.norm(p - smp.alpha)) for smp in samples) < 1e-9:
        raise ApexOnCurve("apex lies on the curve")
    s = np.array([smp.s for smp in samples])
    pN = np.array([lorentz_dot(p, smp.N) for smp in samples])
    pB = np.array([lorentz_dot(p, smp.B) for smp in samples])
    pT = np.array([lorentz_dot(p, smp.T) for smp in samples])
    pA = np.array([lorentz_dot(p, smp.alpha) for smp in samples])

    sigma = float(np.mean(pB))
    m1, m2, m_rms = _hyperbolic_lstsq(s, pA)
    n1, n2, n_rms = _hyperbolic_lstsq(s, pT)
    perp2 = pN ** 2 + pB ** 2
    n_sq = float(np.mean(perp2))
    n_val = float(np.sqrt(n_sq))
    unit_residual = float(abs(n1 * n1 - n2 * n2 + n_sq - 1.0))
    boundary = m2 * m2 - m1 * m1

    residuals = (float(np.max(np.abs(pN))), float(np.max(np.abs(pB - sigma))),
                 m_rms, n_rms, float(np.max(np.abs(perp2 - n_sq))),
                 unit_residual)
    verdict: Optional[bool]
    if abs(boundary - 1.0) < 1e-9:
        verdict = None
    else:
        verdict = bool(max(residuals) < tol and boundary < 1.0)
    return ApexReport(p=p, max_pN=residuals[0], sigma=sigma,
                      sigma_dev=residuals[1], m1=m1, m2=m2, m_fit_rms=m_rms,
                      n1=n1, n2=n2, n_fit_rms=n_rms, n=n_val,
                      n_dev=residuals[4], unit_identity_residual=unit_residual,
                      k1=m1, k2=m2, boundary=float(boundary), verdict=verdict)


def recover_apex(samples: Sequence[FramedSample]):
    """Recover the apex as the unit-<p,p> minimizer of sum <p, N_i>^2.

    The quadratic form is diagonalized against the metric (generalized
    eigenproblem); the spacelike eigenvector with the smallest attained
    residual is the apex.  Planar curves (tau_g ~ 0 throughout, or a
    normal bundle spanning < 3 dimensions) are rejected as degenerate;
    a residual above APEX_RESIDUAL_TOL rejects the curve entirely.
    Returns (p, residual_rms).
    """
    if len(samples) < 8:
        raise InsufficientSamples(f"{len(samples)} samples, need >= 8")
    if all(abs(smp.tau_g) <= 1e-7 for smp in samples):
        raise PlanarDegenerate("tau_g vanishes everywhere; apex not unique")
    n_mat = np.array([smp.N for smp in samples])
    eta_n = n_mat @ _ETA
    m = eta_n.T @ eta_n / len(samples)
    eigvals = np.linalg.eigvalsh(m)
    scale = max(float(eigvals[-1]), 1e-30)
    if np.sum(eigvals < 1e-10 * scale) >= 2:
        raise PlanarDegenerate("normal directions span < 3 dimensions")

    w, vecs = scipy.linalg.eig(m, _ETA)
    best = None
    for i in range(4):
        if abs(w[i].imag) > 1e-9 or not np.isfinite(w[i].real):
            continue
        v = vecs[:, i].real
        q = float(v @ _ETA @ v)
        if q <= 1e-12:
            continue
        cand = v / np.sqrt(q)
        rms = float(np.sqrt(max(cand @ m @ cand, 0.0)))
        if best is None or rms < best[1]:
            best = (cand, rms)
    if best is None:
        raise NotRectifying("no spacelike minimizer; apex off the sphere")
    p, rms = best
    if rms > APEX_RESIDUAL_TOL:
        raise NotRectifying(f"apex residual {rms!r} too large")
    return on_sphere(p, project_tol=1e-6), rms


@dataclass
class EtaProfile:
    """The latitude profile eta(t) = arctan(a sech(t + t0)), a != 0.

    Closed-form first and second derivatives; solves the rectifying
    latitude equation sin(eta) eta'' - 2 cos(eta) eta'^2
    + cos(eta) sin^2(eta) = 0 identically.
    """

    a: float
    t0: float = 0.0

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("a must be nonzero")

    def __call__(self, t):
        return float(np.arctan(self.a / np.cosh(t + self.t0)))

    def d1(self, t):
        h, hp, _ = self._h(t)
        return float(hp / (1.0 + h * h))

    def d2(self, t):
        h, hp, hpp = self._h(t)
        return float(hpp / (1 + h * h) - 2 * h * hp * hp / (1 + h * h) ** 2)

    def _h(self, t):
        tau = t + self.t0
        sech = 1.0 / np.cosh(tau)
        tanh = np.tanh(tau)
        return (self.a * sech, -self.a * sech * tanh,
                self.a * sech * (tanh * tanh - sech * sech))

    def ode_residual(self, t):
        e, ep, epp = self(t), self.d1(t), self.d2(t)
        return float(np.sin(e) * epp - 2 * np.cos(e) * ep * ep
                     + np.cos(e) * np.sin(e) ** 2)

    def speed_squared(self, t):
        e = self(t)
        return float(np.sin(e) ** 2 - self.d1(t) ** 2)


def _eta_d1(eta, t):
    if hasattr(eta, "d1"):
        return float(eta.d1(t))
    return float(_richardson(lambda h: _cd1(eta, t, h), 1e-4))


def construct_rectifying(p, gamma: ParamCurve, eta, t_range) -> ParamCurve:
    """alpha(t) = cos(eta(t)) p + sin(eta(t)) gamma(t).

    ``gamma`` must be a timelike unit-speed directrix in the pseudo-
    sphere of the tangent space at p; the speed condition
    sin^2(eta) - eta'^2 > 0 is enforced on a scan of ``t_range``.
    """
    p = on_sphere(p)
    t0, t1 = float(t_range[0]), float(t_range[1])
    for t in np.linspace(t0, t1, 101):
        e = eta(t)
        if np.sin(e) ** 2 - _eta_d1(eta, t) ** 2 <= 0:
            raise RegularityFailure(f"speed condition fails at t = {t!r}")

    def point(t):
        e = eta(t)
        return np.cos(e) * p + np.sin(e) * gamma(t)

    def deriv1(t):
        e, ep = eta(t), _eta_d1(eta, t)
        return (-ep * np.sin(e) * p + ep * np.cos(e) * gamma(t)
                + np.sin(e) * gamma.deriv(t, 1))

    return ParamCurve(point=point, deriv1=deriv1, t_min=t0, t_max=t1)


@dataclass
class ExtremalReport:
    """Per-sample record of the extremal inequality.

    lhs = kappa_gamma^2, rhs = ||alpha'||^4 kappa_g^2 / sin^2(eta) with
    ||alpha'||^2 = sin^2(eta) - eta'^2; gap = rhs - lhs >= 0 up to
    rounding, with equality exactly on rectifying curves.
    """

    t: float
    lhs: float
    rhs: float
    gap: float
    cos2_theta: float
    theta: float


def extremal_check(p, gamma: ParamCurve, eta, t_range, n=81):
    """Evaluate the extremal inequality along cos(eta) p + sin(eta) gamma."""
    chart = TangentSphereChart.at(p)
    alpha = construct_rectifying(p, gamma, eta, t_range)
    reports = []
    for t in np.linspace(float(t_range[0]), float(t_range[1]), n):
        kappa_dir = sabban_frame(chart, gamma, t).kappa
        e, ep = eta(t), _eta_d1(eta, t)
        speed2 = np.sin(e) ** 2 - ep * ep
        if speed2 <= 0:
            raise RegularityFailure(f"speed condition fails at t = {t!r}")
        _, _, _, kg, _, _ = _frame_data(alpha, t, want_torsion=False)
        lhs = kappa_dir ** 2
        rhs = speed2 ** 2 * kg ** 2 / np.sin(e) ** 2
        cos2 = float(np.clip(lhs / rhs, 0.0, 1.0)) if rhs > 0 else 0.0
        reports.append(ExtremalReport(t=float(t), lhs=float(lhs),
                                      rhs=float(rhs), gap=float(rhs - lhs),
                                      cos2_theta=cos2,
                                      theta=float(np.arccos(np.sqrt(cos2)))))
    return reports


@dataclass
class SpiralRoundTrip:
    """Result of the constant-curvature spiral construction pipeline."""

    b: float
    kappa_max_err: float
    fit: RatioFit
    samples: list = field(repr=False, default_factory=list)


def corollary_roundtrip(a, t0, kappa0, t_range, step=1e-3,
                        apex=(0.0, 1.0, 0.0, 0.0)) -> SpiralRoundTrip:
    """Spiral-directrix construction and curvature round trip.

    Synthesizes the directrix with curvature b (cosh^2(t+t0)+a^2)^(-3/2),
    b = a (1+a^2) kappa0, builds the rectifying curve with
    eta = arctan(a sech(t+t0)), and re-extracts kappa_g (expected
    |kappa0|) and the tau_g/kappa_g ratio fit.
    """
    if a == 0 or kappa0 == 0:
        raise ValueError("a and kappa0 must be nonzero")
    b = a * (1 + a * a) * kappa0
    chart = TangentSphereChart.at(np.asarray(apex, dtype=float))
    pad = 0.05
    t_lo, t_hi = float(t_range[0]), float(t_range[1])
    directrix_samples = synthesize_directrix(
        chart, spiral_curvature(a, b, t0),
        canonical_directrix_sample(chart), (t_lo - pad, t_hi + pad), step)
    gamma = directrix_curve(directrix_samples)
    eta = EtaProfile(a=a, t0=t0)
    alpha = construct_rectifying(chart.p, gamma, eta, (t_lo, t_hi))
    t_values = np.linspace(t_lo, t_hi, 161)
    samples = framed_samples(alpha, t_values)
    kappa_err = max(abs(smp.kappa_g - abs(kappa0)) for smp in samples)
    fit = fit_ratio_form(samples)
    return SpiralRoundTrip(b=b, kappa_max_err=float(kappa_err), fit=fit,
                           samples=samples)
