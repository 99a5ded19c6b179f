"""Numerical laboratory for the Lipschitz (Thurston) metric on the
Teichmuller space of the once-punctured torus, with Teichmuller-metric
estimators for comparison.

Layers, bottom up: hyperbolic trigonometry kernel (hyptrig), curves and
markings (curves), holonomy representations and geodesic lengths from
Fenchel-Nielsen coordinates (holonomy), the regular-annulus model of the
thin part (annulus), distances and estimators (metrics), and a deterministic
experiment runner (cli).
"""

from .annulus import (
    AnnulusPoint,
    arc_length,
    dLA_bruteforce,
    dLA_estimate,
    half_plane_distance,
    half_plane_estimate,
)
from .curves import (
    ONCE_PUNCTURED_TORUS,
    Marking,
    Slope,
    SurfaceSig,
    dehn_twist,
    enumerate_slopes,
    intersection_number,
    marking_intersection,
)
from .errors import LipteichError
from .estimates import ADDITIVE, EXACT, TRUNCATION, MetricEstimate
from .holonomy import (
    FNPoint,
    build_representation,
    curve_length,
    fn_along,
    representation,
    short_marking,
    thin_curves,
)
from .hyptrig import (
    EPS0,
    EPS1,
    MARGULIS,
    Isometry,
    collar_half_width,
    fermi_distance,
    hexagon_opposite,
    pentagon_side,
)
from .metrics import (
    FlatTorus,
    comparability_check,
    dL,
    dL_gamma,
    dT_gamma,
    divergent_pair,
    flat_torus_dL,
    flat_torus_dT,
    lipschitz_sup,
    marking_distance,
    project_thin,
    theorem1_closed_form,
    thick_quantity,
    wolpert_check,
)

__version__ = "0.1.0"

__all__ = [
    "ADDITIVE",
    "AnnulusPoint",
    "EPS0",
    "EPS1",
    "EXACT",
    "FNPoint",
    "FlatTorus",
    "Isometry",
    "LipteichError",
    "MARGULIS",
    "Marking",
    "MetricEstimate",
    "ONCE_PUNCTURED_TORUS",
    "Slope",
    "SurfaceSig",
    "TRUNCATION",
    "arc_length",
    "build_representation",
    "collar_half_width",
    "comparability_check",
    "curve_length",
    "dL",
    "dLA_bruteforce",
    "dLA_estimate",
    "dL_gamma",
    "dT_gamma",
    "dehn_twist",
    "divergent_pair",
    "enumerate_slopes",
    "fermi_distance",
    "flat_torus_dL",
    "flat_torus_dT",
    "fn_along",
    "half_plane_distance",
    "half_plane_estimate",
    "hexagon_opposite",
    "intersection_number",
    "lipschitz_sup",
    "marking_distance",
    "marking_intersection",
    "pentagon_side",
    "project_thin",
    "representation",
    "short_marking",
    "theorem1_closed_form",
    "thick_quantity",
    "thin_curves",
    "wolpert_check",
]
