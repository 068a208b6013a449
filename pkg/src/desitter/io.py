"""Stereographic projection and delimited export of curve samples.

The projection sends a point of the unit pseudo-sphere to the three
non-pole coordinates divided by ``1 + pole_sign * x_pole``; the pole sits
at ``-pole_sign * e_pole_axis``.  Exports are CSV (17 significant
digits), JSON ({meta, samples}) and SVG 1.1 (a single polyline of the
first two projected coordinates in an 800x800 viewbox).
"""

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import AtPole, IoError
from .minkowski import lorentz_dot

#: denominators smaller than this count as the pole itself
POLE_TOL = 1e-9

#: S^3_1 membership demanded of every exported point
EXPORT_MEMBERSHIP_TOL = 1e-9

_CSV_HEADER = "t,s,x1,x2,x3,x4,kappa_g,tau_g"


@dataclass(frozen=True)
class ProjectionSpec:
    """Choice of stereographic pole: a spacelike axis and a sign.

    ``pole_axis`` is the 1-based coordinate index in {2, 3, 4} (axis 1 is
    the timelike direction and cannot carry the pole).
    """

    pole_axis: int = 2
    pole_sign: int = 1

    def __post_init__(self):
        if self.pole_axis not in (2, 3, 4):
            raise ValueError("pole_axis must be one of 2, 3, 4")
        if self.pole_sign not in (-1, 1):
            raise ValueError("pole_sign must be -1 or +1")


def stereographic_project(x, spec: ProjectionSpec = ProjectionSpec()):
    """Project a pseudo-sphere point to Minkowski 3-space.

    Returns the three non-pole coordinates divided by
    ``1 + pole_sign * x_pole``; raises :class:`AtPole` when the
    denominator vanishes (the point is the pole itself).
    """
    x = np.asarray(x, dtype=float)
    k = spec.pole_axis - 1
    denom = 1.0 + spec.pole_sign * x[k]
    if abs(denom) <= POLE_TOL:
        raise AtPole(f"point lies at the projection pole (axis {spec.pole_axis})")
    rest = [x[i] for i in range(4) if i != k]
    return tuple(float(c / denom) for c in rest)


def stereographic_inverse(y, spec: ProjectionSpec = ProjectionSpec()):
    """Inverse of :func:`stereographic_project`.

    ``y`` carries an induced index-one metric (its first entry is the
    timelike x1); with q = -y1^2 + y2^2 + y3^2 the preimage is
    x_rest = 2y/(1+q), x_pole = pole_sign*(1-q)/(1+q).
    """
    y = np.asarray(y, dtype=float)
    q = float(-y[0] * y[0] + y[1] * y[1] + y[2] * y[2])
    if abs(1.0 + q) <= POLE_TOL:
        raise AtPole("image point has no finite preimage")
    rest = 2.0 * y / (1.0 + q)
    pole = spec.pole_sign * (1.0 - q) / (1.0 + q)
    k = spec.pole_axis - 1
    out = np.empty(4)
    out[[i for i in range(4) if i != k]] = rest
    out[k] = pole
    return out


@dataclass
class CurveRecord:
    """One exportable sample: parameter, arc length, point, invariants."""

    t: float
    s: float
    point: np.ndarray
    kappa_g: Optional[float] = None
    tau_g: Optional[float] = None


def records_from_framed(samples, t_values=None):
    """Wrap FramedSample objects as export records (t defaults to s)."""
    ts = t_values if t_values is not None else [smp.s for smp in samples]
    return [CurveRecord(t=float(t), s=float(smp.s), point=smp.alpha,
                        kappa_g=smp.kappa_g, tau_g=smp.tau_g)
            for t, smp in zip(ts, samples)]


def _fmt(x):
    if x is None or (isinstance(x, float) and np.isnan(x)):
        return "nan"
    return format(float(x), ".17g")


def export_curve(records: Sequence[CurveRecord], path, fmt,
                 projection: ProjectionSpec = ProjectionSpec(),
                 membership_tol=EXPORT_MEMBERSHIP_TOL, meta=None):
    """Write curve samples as CSV, JSON or SVG.

    Every point must lie on the unit pseudo-sphere within
    ``membership_tol``.  CSV uses the fixed header and 17 significant
    digits; JSON is an object {meta, samples}; SVG is a single polyline
    of the first two stereographically projected coordinates, autoscaled
    into an 800x800 viewbox with a 5% margin.
    """
    for rec in records:
        q = lorentz_dot(rec.point, rec.point)
        # scale-relative: rounding the coordinates of a point of Euclidean
        # size R already perturbs <x,x> by about eps*R^2
        scale = max(1.0, float(np.dot(rec.point, rec.point)))
        if abs(q - 1.0) > membership_tol * scale:
            raise IoError(f"point at t = {rec.t!r} off the sphere: <x,x> = {q!r}")
    try:
        if fmt == "csv":
            _write_csv(records, path)
        elif fmt == "json":
            _write_json(records, path, meta or {})
        elif fmt == "svg":
            _write_svg(records, path, projection)
        else:
            raise ValueError(f"unknown format {fmt!r}")
    except OSError as exc:
        raise IoError(str(exc)) from exc


def _write_csv(records, path):
    lines = [_CSV_HEADER]
    for r in records:
        x = r.point
        lines.append(",".join([_fmt(r.t), _fmt(r.s), _fmt(x[0]), _fmt(x[1]),
                               _fmt(x[2]), _fmt(x[3]), _fmt(r.kappa_g),
                               _fmt(r.tau_g)]))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def import_curve_csv(path):
    """Read a CSV written by :func:`export_curve` back into records."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or lines[0] != _CSV_HEADER:
        raise IoError(f"unrecognized curve file header in {path!r}")
    out = []
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != 8:
            raise IoError(f"malformed row: {ln!r}")
        vals = [float(c) for c in cells]
        out.append(CurveRecord(t=vals[0], s=vals[1],
                               point=np.array(vals[2:6]),
                               kappa_g=None if np.isnan(vals[6]) else vals[6],
                               tau_g=None if np.isnan(vals[7]) else vals[7]))
    return out


def _write_json(records, path, meta):
    payload = {
        "meta": meta,
        "samples": [
            {
                "t": r.t,
                "s": None if np.isnan(r.s) else r.s,
                "point": [float(c) for c in r.point],
                "kappa_g": r.kappa_g,
                "tau_g": r.tau_g,
            }
            for r in records
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2)
        fh.write("\n")


def _write_svg(records, path, projection):
    pts = [stereographic_project(r.point, projection)[:2] for r in records]
    if pts:
        xs = np.array([p[0] for p in pts])
        ys = np.array([p[1] for p in pts])
        x0, x1 = float(xs.min()), float(xs.max())
        y0, y1 = float(ys.min()), float(ys.max())
        span = max(x1 - x0, y1 - y0, 1e-30)
        margin = 0.05 * span
        scale = 800.0 / (span + 2 * margin)

        def to_view(px, py):
            # y flipped so the mathematical orientation reads upward
            return ((px - x0 + margin) * scale,
                    800.0 - (py - y0 + margin) * scale)

        coords = " ".join(f"{vx:.9g},{vy:.9g}" for vx, vy in
                          (to_view(px, py) for px, py in pts))
    else:
        coords = ""
    body = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        'width="800" height="800" viewBox="0 0 800 800">\n'
        f'  <polyline fill="none" stroke="black" stroke-width="1" '
        f'points="{coords}"/>\n'
        "</svg>\n"
    )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(body)
