"""Reconstruction of convex bodies from their disk area measures.

The disk area measure ``S_1(K, D; .)`` of a convex body ``K`` in ``R^n``
(``D`` the unit disk orthogonal to ``e_n``) is handled through its
disintegration along the 2-planes containing ``e_n``.  The package provides
the forward map, the solvability checks and a reconstruction that either
returns a support function or a certificate explaining why none exists.
"""

from .bodies import (
    AxialSegment,
    Ball,
    ConvexityReport,
    DiskBody,
    Ellipsoid,
    MinkowskiSum,
    PlanarBody,
    Polytope,
    Sampled,
    SupportFunction,
    ZonalBody,
    check_support_function,
    cube,
    cylinder,
    dilate,
    planar_v1,
    pole_faces,
    project,
    rotate_about_axis,
    sample,
    steiner_point,
    support,
    translate,
)
from .christoffel2d import BergKernel, berg_invert, even_invert, forward_polygon, forward_smooth
from .disk_forward import ForwardResult, forward, forward_density, mixed_volume, mixed_volume_oracle, pole_mass
from .errors import (
    AtomsPresent,
    DegenerateInput,
    DiskChristoffelError,
    NegativeCurvature,
    NotCentered,
    NotEven,
    PoleInput,
    SpecError,
    UnsupportedBody,
    UnsupportedDimension,
    UnsupportedVariant,
)
from .inverse_solver import (
    Certificate,
    SolveReport,
    UniquenessReport,
    error_up_to_translation,
    invert,
    invert_density,
    invert_even,
    restore_linear_parts,
    uniqueness_check,
)
from .measures import (
    CircleMeasure,
    ConditionReport,
    DisintegratedMeasure,
    SphereDensity,
    check_conditions,
    density_to_family,
    family_distance,
    family_to_density,
    first_moment,
    rotate_family,
    sphere_first_moment,
    total_mass,
)
from .sphere_geom import (
    AxialPlane,
    CircleGrid,
    DimensionConstants,
    PlaneGrid,
    SphereGrid,
    UnitVector,
    ball_volume,
    circle_angle,
    embed,
    integrate_circle,
    integrate_grassmannian,
    integrate_sphere_cylindrical,
    plane_of,
    polar_angle,
    sphere_area,
)

__version__ = "0.1.0"
