"""Differential geometry of timelike curves in De Sitter 3-space.

The package covers the index-one linear algebra of Minkowski 4-space,
Frenet-type frames and invariants of timelike curves on the unit
pseudo-sphere, geodesics and tangent-sphere charts, conical surfaces
over spherical directrices, rectifying-curve characterizations, and a
CLI with stereographic projection and CSV/JSON/SVG export.
"""

from . import errors
from .cone import (ConeGeodesicParams, ConicalSurface,
                   cone_geodesic_closed_form, compose_cone_curve,
                   is_geodesic_on_cone, unit_speed_residual)
from .curves import (CurvatureProfile, FramedSample, ParamCurve,
                     arclength_reparametrize, curve_from_samples,
                     extract_profile, frame_at, framed_samples,
                     geodesic_curvature, geodesic_torsion,
                     invariants_from_derivatives, speed,
                     synthesize_from_curvatures)
from .demo import ExampleReport, run_example
from .geodesics import (GeodesicArc, GeodesicKind, exp_map, geodesic_between,
                        normal_geodesic_point,
                        parallel_transport_normal_geodesic)
from .io import (CurveRecord, ProjectionSpec, export_curve, import_curve_csv,
                 records_from_framed, stereographic_inverse,
                 stereographic_project)
from .minkowski import (causal_character, det4, gram_matrix, lorentz_dot,
                        lorentz_norm, on_sphere, tangent_cross, vec4, wedge3)
from .pseudosphere import (SabbanSample, TangentSphereChart,
                           canonical_directrix_sample, directrix_curve,
                           sabban_frame, spiral_curvature,
                           synthesize_directrix)
from .rectifying import (ApexReport, EtaProfile, ExtremalReport, RatioFit,
                         SpiralRoundTrip, apex_conditions,
                         construct_rectifying, corollary_roundtrip,
                         extremal_check, fit_ratio_form, recover_apex)

__version__ = "0.1.0"
