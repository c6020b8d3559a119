"""Exact rational analysis of the Voronoi cell at the origin."""

from .kernel import (
    Direction,
    Halfspace,
    InputError,
    InternalError,
    LPResult,
    LPStatus,
    Location,
    Scalar,
    canonical_direction,
    convex_hull_2d,
    halfspace,
    halfspace_contains,
    hull_facets_2d,
    in_convex_hull,
    in_positive_hull,
    lp_solve,
    scalar,
    vec,
)
from .generators import (
    DEFAULT_SCHEDULE,
    FAMILY_IDS,
    GeneratorSpec,
    TruncatedGenerator,
    builtin_family,
    enumerate_truncation,
    finite_generator,
    limit_directions,
    load_spec,
    save_spec,
    validate_spec,
)
from .dircone import (
    Cone2D,
    GaugeValue,
    cone_from_directions,
    direction_cone,
    full_space_check,
    gauge_value,
    intersect_cones,
    is_finitely_generated,
    local_cone_radius,
    polar_cone,
)
from .cell import (
    CellAnalysis,
    HRep,
    analyze_cell,
    bounded_verdict,
    cell_halfspaces,
    hrep,
    irredundant_facets,
    membership_oracle,
    recession_cone,
    vertices_2d,
    verify_bounded_certificate,
    verify_unbounded_certificate,
)
from .reciprocal import (
    CharacteristicCone,
    ConvexReciprocal,
    characteristic_cone,
    convex_reciprocal,
    invert,
    is_extreme_point,
    polyhedrality_verdict,
    section_check,
    stabilization_certificate,
    tail_bound_check,
    verify_nonpolyhedral_certificate,
    verify_stabilization_certificate,
)
from .delaunay import (
    LiftedPoint,
    cross_check_facets,
    delaunay_neighbors_of_origin,
    empty_circle_witness,
    is_generic,
    lift,
)
from .verdicts import Verdict

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
