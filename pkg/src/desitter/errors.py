"""Exception hierarchy for geometric and numerical failure modes."""


class DeSitterError(Exception):
    """Base class for all errors raised by this package."""


class NotTangent(DeSitterError):
    """A vector violates the tangency condition at a base point."""


class NotNormalized(DeSitterError):
    """A direction vector is neither unit (|<w,w>| = 1) nor null."""


class DegenerateFrame(DeSitterError):
    """Gram-Schmidt hit a vector with vanishing pseudo-norm."""


class NotOnSphere(DeSitterError):
    """A point is too far from the unit pseudo-sphere to project back."""


class NotTimelike(DeSitterError):
    """A curve fails the timelike condition <c', c'> < 0 somewhere."""


class GeodesicPoint(DeSitterError):
    """The Frenet frame is undefined because kappa_g vanishes."""


class FrameDrift(DeSitterError):
    """Per-step frame drift exceeded the allowed bound (step too large)."""


class NoGeodesic(DeSitterError):
    """No geodesic joins the two points (<p,q> < -1)."""


class Antipodal(DeSitterError):
    """The two points are equal or antipodal; the joining plane degenerates."""


class NotOnPseudoSphere(DeSitterError):
    """A directrix point leaves the unit pseudo-sphere of a tangent chart."""


class ApexSingularity(DeSitterError):
    """Conical-surface evaluation at (or beyond) the apex, sin(v) <= 0."""


class DomainExit(DeSitterError):
    """A closed-form cone geodesic left its coordinate chart.

    Carries the exiting parameter value in ``args[1]`` when known.
    """


class InsufficientSamples(DeSitterError):
    """Too few usable samples for a least-squares fit."""


class GeodesicCurve(DeSitterError):
    """Every sample has kappa_g below tolerance; the ratio is undefined."""


class ApexOnCurve(DeSitterError):
    """The candidate apex lies on the curve itself."""


class PlanarDegenerate(DeSitterError):
    """Apex recovery is underdetermined (planar curve, Remark-level case)."""


class NotRectifying(DeSitterError):
    """Apex recovery residual too large; the curve is not rectifying."""


class RegularityFailure(DeSitterError):
    """The speed condition sin^2(eta) - (eta')^2 > 0 fails."""


class AtPole(DeSitterError):
    """Stereographic projection evaluated at (or too close to) the pole."""


class IoError(DeSitterError):
    """Export or import of curve files failed."""
