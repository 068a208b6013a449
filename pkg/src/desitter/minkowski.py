"""Lorentzian linear algebra of Minkowski 4-space R^4_1.

The scalar product is ``<x,y> = -x1*y1 + x2*y2 + x3*y3 + x4*y4``; the
first coordinate is the timelike axis.  Points of the unit pseudo-sphere
(De Sitter 3-space) satisfy ``<x,x> = 1``.
"""

from enum import Enum

import numpy as np

from .errors import DegenerateFrame, NotOnSphere, NotTangent

#: |<x,x>| below this counts as null.
CAUSAL_TOL = 1e-9

#: membership tolerance for the unit pseudo-sphere
SPHERE_TOL = 1e-9

#: violations below this are silently repaired by radial projection
SPHERE_PROJECT_TOL = 1e-6

#: tangency tolerance for cross products and charts
TANGENT_TOL = 1e-7

_SIGNATURE = np.array([-1.0, 1.0, 1.0, 1.0])


class CausalCharacter(Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"


def vec4(x1, x2, x3, x4):
    """Build a 4-vector as a float ndarray."""
    return np.array([x1, x2, x3, x4], dtype=float)


#: Dekker splitting constant, 2**27 + 1
_SPLIT = 134217729.0


def _two_product(a, b):
    """Product and its exact floating-point remainder (Dekker splitting)."""
    p = a * b
    c = _SPLIT * a
    a_hi = c - (c - a)
    a_lo = a - a_hi
    c = _SPLIT * b
    b_hi = c - (c - b)
    b_lo = b - b_hi
    err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo
    return p, err


def _two_sum(a, b):
    """Sum and its exact floating-point remainder (branch-free Knuth)."""
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def compensated_sum(terms):
    """Neumaier-compensated sum of a 1d array of floats."""
    s = 0.0
    comp = 0.0
    for x in terms:
        t = s + x
        comp += (s - t) + x if abs(s) >= abs(x) else (x - t) + s
        s = t
    return s + comp


def lorentz_dot(x, y):
    """Index-one scalar product -x1*y1 + x2*y2 + x3*y3 + x4*y4.

    Evaluated with compensated products and summation: points far out on
    the pseudo-sphere have Euclidean size e^(arc length x rapidity), and
    plain evaluation of the near-cancelling sum would lose the O(1)
    result in rounding of the O(|x||y|) terms.
    """
    p, err = _two_product(np.asarray(x, dtype=float) * _SIGNATURE,
                          np.asarray(y, dtype=float))
    return float(compensated_sum(p) + compensated_sum(err))


def lorentz_norm(x):
    """Pseudo-norm sqrt(|<x,x>|)."""
    return float(np.sqrt(abs(lorentz_dot(x, x))))


def causal_character(x, tol=CAUSAL_TOL):
    """Classify a vector as spacelike, timelike or null within ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    q = lorentz_dot(x, x)
    if abs(q) <= tol:
        return CausalCharacter.NULL
    return CausalCharacter.TIMELIKE if q < 0 else CausalCharacter.SPACELIKE


def det4(a, b, c, d):
    """Determinant of the 4x4 matrix with rows a, b, c, d.

    Explicit cofactor expansion along the first row; no pivoting is
    needed at this size.
    """
    m = np.array([a, b, c, d], dtype=float)
    return (m[0, 0] * _minor(m, 0) - m[0, 1] * _minor(m, 1)
            + m[0, 2] * _minor(m, 2) - m[0, 3] * _minor(m, 3))


def _minor(m, col):
    """3x3 minor of ``m`` removing row 0 and column ``col``."""
    cols = [j for j in range(4) if j != col]
    s = m[1:, cols]
    return (s[0, 0] * (s[1, 1] * s[2, 2] - s[1, 2] * s[2, 1])
            - s[0, 1] * (s[1, 0] * s[2, 2] - s[1, 2] * s[2, 0])
            + s[0, 2] * (s[1, 0] * s[2, 1] - s[1, 1] * s[2, 0]))


def wedge3(x, y, z):
    """Triple wedge product x × y × z in R^4_1.

    Cofactor expansion of the formal 4x4 array with first row
    (-e1, e2, e3, e4), so that ``<w, x×y×z> = det(w, x, y, z)`` for
    every w.  The result is pseudo-orthogonal to x, y and z.
    """
    m = np.array([np.zeros(4), x, y, z], dtype=float)
    return np.array([-_minor(m, 0), -_minor(m, 1), _minor(m, 2), -_minor(m, 3)])


def on_sphere(v, tol=SPHERE_TOL, project_tol=SPHERE_PROJECT_TOL):
    """Return ``v`` as a point of the unit pseudo-sphere.

    Exact members (within ``tol``) pass through unchanged; small
    violations (within ``project_tol``) are repaired by a single radial
    projection v / ||v||; anything worse raises :class:`NotOnSphere`.
    """
    v = np.asarray(v, dtype=float)
    q = lorentz_dot(v, v)
    if abs(q - 1.0) <= tol:
        return v
    if abs(q - 1.0) <= project_tol and q > 0:
        return v / np.sqrt(q)
    raise NotOnSphere(f"<v,v> = {q!r} is not 1 within {project_tol}")


def tangent_cross(q, u, v, tol=TANGENT_TOL):
    """Cross product u ∧ v = q × u × v in the tangent space at q.

    ``u`` and ``v`` must be tangent at ``q`` (``<q,u> = <q,v> = 0``
    within ``tol``).  The result is tangent at ``q`` and satisfies
    ``<w, u∧v> = -det(q, u, v, w)`` for tangent w.
    """
    qu, qv = lorentz_dot(q, u), lorentz_dot(q, v)
    if abs(qu) > tol * max(1.0, lorentz_norm(u)):
        raise NotTangent(f"<q,u> = {qu!r}")
    if abs(qv) > tol * max(1.0, lorentz_norm(v)):
        raise NotTangent(f"<q,v> = {qv!r}")
    return wedge3(q, u, v)


def reorthonormalize_frame(vectors, signatures, tol=1e-12):
    """Lorentzian Gram-Schmidt against the prescribed signatures.

    ``vectors`` is a sequence of four 4-vectors, ``signatures`` the
    target values of <v_i, v_i> (each -1 or +1).  The direction of the
    first vector is preserved.  Raises :class:`DegenerateFrame` if a
    projected vector has pseudo-norm below ``tol``.
    """
    out = []
    for v, sig in zip(vectors, signatures):
        w = np.asarray(v, dtype=float).copy()
        for e, esig in out:
            w -= esig * lorentz_dot(w, e) * e
        q = lorentz_dot(w, w)
        if abs(q) < tol or np.sign(q) != np.sign(sig):
            raise DegenerateFrame(
                f"projected vector has <w,w> = {q!r}, wanted sign {sig}")
        out.append((w / np.sqrt(abs(q)), sig))
    return [e for e, _ in out]


def gram_matrix(vectors):
    """4x4 matrix of pairwise Lorentzian inner products."""
    n = len(vectors)
    g = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            g[i, j] = lorentz_dot(vectors[i], vectors[j])
    return g
