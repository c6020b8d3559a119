"""Inversion at the unit sphere and the convex reciprocal.

Inverting the non-origin generator points maps far points near the
origin; the convex hull of the inverted points together with the
origin (the convex reciprocal) controls the cell: for a discrete
generator the cell is a polyhedron exactly when that hull needs only
finitely many of its points, and the lifted inequality cone meets the
height-one slice in a copy of the hull.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import dircone
from .cell import HRep, cell_halfspaces, hrep, irredundant_facets
from .dircone import arc_max_dot_sq, cone_in_halfspace, direction_cone
from .generators import GeneratorSpec, TruncatedGenerator, enumerate_truncation
from .kernel import (
    InputError,
    Vec,
    as_vec,
    canonical_direction,
    hull_facets_2d,
    in_convex_hull,
    in_positive_hull,
    is_zero_vec,
    norm_sq,
    scalar,
)
from .verdicts import (
    CERTIFIED,
    EVIDENCE,
    INCONCLUSIVE,
    NON_POLYHEDRAL,
    POLYHEDRAL,
    StabilizationCertificate,
    TrailRow,
    UnattainedLimitCertificate,
    Verdict,
)


def invert(p: Sequence[Fraction]) -> Vec:
    """Inversion at the unit sphere, p -> p / |p|^2; an involution on
    the punctured space."""
    v = as_vec(p)
    if is_zero_vec(v):
        raise InputError("inversion is undefined at the origin")
    nsq = norm_sq(v)
    return tuple(x / nsq for x in v)


@dataclass(frozen=True)
class ConvexReciprocal:
    """Inverted generator points with their extreme subset.

    ``extreme`` holds the extreme points of the hull of the reciprocal
    points and the origin; ``hull2d`` carries the facet half spaces of
    that hull in dimension two.
    """

    reciprocal_points: tuple[Vec, ...]
    extreme: tuple[Vec, ...]
    hull2d: HRep | None
    dimension: int


def is_extreme_point(candidate: Vec, others: Sequence[Vec]) -> bool:
    """LP route: a point is extreme exactly when it is not a convex
    combination of the remaining points."""
    return not in_convex_hull(candidate, others)


@functools.lru_cache(maxsize=None)
def convex_reciprocal(gen: TruncatedGenerator) -> ConvexReciprocal:
    """Reciprocal points of all non-origin generators, the extreme
    subset (decided point by point through exact LP feasibility), and
    the planar hull facets."""
    origin = tuple([Fraction(0)] * gen.dimension)
    recips = sorted(invert(p) for p in gen.nonzero_points())
    cloud = recips + [origin]
    extreme = []
    for i, candidate in enumerate(cloud):
        others = cloud[:i] + cloud[i + 1:]
        if is_extreme_point(candidate, others):
            extreme.append(candidate)
    hull = None
    if gen.dimension == 2:
        hull = hrep(hull_facets_2d(cloud), 2)
    return ConvexReciprocal(tuple(recips), tuple(sorted(extreme)), hull,
                            gen.dimension)


@dataclass(frozen=True)
class CharacteristicCone:
    """Lifted inequality generators (p, |p|^2) plus the vertical ray
    (0, 1); their positive hull meets the height-one slice in the
    convex reciprocal."""

    lifted_generators: tuple[Vec, ...]
    dimension: int


def characteristic_cone(gen: TruncatedGenerator) -> CharacteristicCone:
    lifted = [p + (norm_sq(p),) for p in gen.nonzero_points()]
    lifted.append(tuple([Fraction(0)] * gen.dimension) + (Fraction(1),))
    return CharacteristicCone(tuple(sorted(lifted)), gen.dimension)


def section_check(cone: CharacteristicCone,
                  recip: ConvexReciprocal) -> bool:
    """Verify the identity: the height-one slice of the lifted cone is
    the convex reciprocal.

    One direction: every hull vertex of the reciprocal, lifted to
    height one, is an exact positive combination of the lifted
    generators (decided by LP).  Other direction: every lifted
    generator, scaled to height one, satisfies every hull facet.
    """
    if cone.dimension != recip.dimension:
        raise InputError("section check requires matching dimensions")
    lifted = cone.lifted_generators
    for v in recip.extreme:
        if not in_positive_hull(v + (Fraction(1),), lifted):
            return False
    if recip.hull2d is None:
        raise InputError("section check needs planar hull facets")
    for g in lifted:
        height = g[-1]
        if height <= 0:
            return False
        scaled = tuple(x / height for x in g[:-1])
        if not recip.hull2d.contains(scaled):
            return False
    return True


def tail_bound_check(spec: GeneratorSpec, inner_radius, outer_radius) -> bool:
    """Every generator point in the annulus (inner, outer] inverts into
    the closed ball of radius 1/inner, exactly (squared comparison)."""
    r0 = scalar(inner_radius)
    r1 = scalar(outer_radius)
    if not (r1 > r0 > 0):
        raise InputError("need outer_radius > inner_radius > 0")
    if not spec.discrete:
        raise InputError("tail bounds apply to discrete generators")
    inner = set(enumerate_truncation(spec, r0).points)
    outer = enumerate_truncation(spec, r1).points
    bound = 1 / (r0 * r0)
    for p in outer:
        if p in inner or is_zero_vec(p):
            continue
        if norm_sq(invert(p)) > bound:
            return False
    return True


# ---------------------------------------------------------------------------
# Stabilization certificate
# ---------------------------------------------------------------------------

def stabilization_certificate(spec: GeneratorSpec, radius
                              ) -> StabilizationCertificate | None:
    """Try to certify, at a window radius R, that every generator point
    beyond R inverts into the current reciprocal hull.

    Any such point lands inside the closed direction cone within the
    ball of radius 1/R, so it suffices that this cap fits in the hull:
    for each hull facet with positive offset, the support of the cap in
    the facet normal (arc maximum over the sector, scaled by 1/R) must
    not exceed the offset; zero-offset facets must contain the whole
    sector.  All comparisons are squared to stay rational.

    The cap argument is only valid once the window is large enough that
    every remaining family direction lies inside the computed sector;
    the declared ``direction_stable_norm_sq`` gates this (for a finite
    list the maximal point norm works).  When the check fires, the
    reciprocal hull and the cell facets are final.
    """
    r = scalar(radius)
    if r <= 0:
        raise InputError("radius must be positive")
    if not spec.discrete:
        raise InputError("stabilization applies to discrete generators")
    if spec.dimension != 2:
        raise InputError("stabilization is planar only")
    if not _directions_stable_at(spec, r):
        return None
    gen = enumerate_truncation(spec, r)
    if not gen.complete:
        return None
    recip = convex_reciprocal(gen)
    _, sector = direction_cone(gen, spec.limit_directions)
    for facet in recip.hull2d:
        if facet.offset == 0:
            if not cone_in_halfspace(sector, facet.normal):
                return None
        else:
            positive, max_sq = arc_max_dot_sq(sector, facet.normal)
            if positive and max_sq > (facet.offset * r) ** 2:
                return None
    return StabilizationCertificate(r, recip.hull2d.halfspaces, sector)


def _directions_stable_at(spec: GeneratorSpec, radius: Fraction) -> bool:
    if spec.kind == "finite":
        bound = max((norm_sq(p) for p in spec.points), default=Fraction(0))
    else:
        bound = spec.direction_stable_norm_sq
        if bound is None:
            return False
    return radius * radius >= bound


def verify_stabilization_certificate(spec: GeneratorSpec,
                                     cert: StabilizationCertificate) -> bool:
    """Re-run the cap containment from the recorded witness data and
    re-check that the recorded facets really hold the reciprocal."""
    try:
        gen = enumerate_truncation(spec, cert.radius)
    except InputError:
        return False
    if not (spec.discrete and gen.complete):
        return False
    if not _directions_stable_at(spec, cert.radius):
        return False
    _, sector_now = direction_cone(gen, spec.limit_directions)
    if cert.sector != sector_now:
        return False
    facets = hrep(cert.hull_facets, 2)
    origin = (Fraction(0), Fraction(0))
    if not facets.contains(origin):
        return False
    for p in gen.nonzero_points():
        if not facets.contains(invert(p)):
            return False
        if not dircone.contains_vec(cert.sector, p):
            return False
    for d in spec.limit_directions:
        if not dircone.contains_vec(cert.sector, d.as_vec()):
            return False
    r = cert.radius
    for facet in facets:
        if facet.offset == 0:
            if not cone_in_halfspace(cert.sector, facet.normal):
                return False
        elif facet.offset < 0:
            return False
        else:
            positive, max_sq = arc_max_dot_sq(cert.sector, facet.normal)
            if positive and max_sq > (facet.offset * r) ** 2:
                return False
    return True


# ---------------------------------------------------------------------------
# Polyhedrality verdict
# ---------------------------------------------------------------------------

def _unattained_boundary_limits(spec: GeneratorSpec,
                                gen: TruncatedGenerator) -> list:
    cone, _ = direction_cone(gen, spec.limit_directions)
    declared = set(spec.limit_directions)
    return [d for d, attained in cone.boundary_rays()
            if not attained and d in declared]


def polyhedrality_verdict(spec: GeneratorSpec, schedule: Sequence) -> Verdict:
    """Decide polyhedrality of the cell across a truncation schedule.

    Routes: (1) discrete with a firing stabilization certificate is
    certified polyhedral; (2) discrete with a declared limit direction
    sitting unattained on the direction-cone boundary is certified
    non-polyhedral (the cone is not finitely generated); (3) a
    non-discrete generator only ever gets Evidence with trend data;
    (4) otherwise Evidence.  Coordinate-based certificates from
    approximated families are downgraded to Evidence with a marker.
    """
    radii = [scalar(r) for r in schedule]
    if not radii or any(b <= a for a, b in zip(radii, radii[1:])):
        raise InputError("schedule must be nonempty and increasing")
    if spec.dimension != 2:
        raise InputError("polyhedrality verdicts are planar only")

    coordinate_certs = spec.discrete and not spec.approximated
    trail = []
    first_cert: StabilizationCertificate | None = None
    last_gen = None
    for r in radii:
        gen = enumerate_truncation(spec, r)
        last_gen = gen
        recip = convex_reciprocal(gen)
        facets = irredundant_facets(cell_halfspaces(gen))
        fired = None
        if coordinate_certs:
            cert = stabilization_certificate(spec, r)
            fired = cert is not None
            if fired and first_cert is None:
                first_cert = cert
        trail.append(TrailRow(radius=r, point_count=len(gen.points),
                              facet_count=len(facets),
                              extreme_count=len(recip.extreme),
                              certificate_fired=fired))
    trail = tuple(trail)
    notes = _direction_closure_notes(spec, last_gen)

    if first_cert is not None:
        return Verdict(CERTIFIED, POLYHEDRAL, first_cert, trail, notes)
    if spec.discrete:
        # metadata route: stays valid for approximated coordinates
        unattained = _unattained_boundary_limits(spec, last_gen)
        if unattained:
            cert = UnattainedLimitCertificate(unattained[0], last_gen.radius)
            return Verdict(CERTIFIED, NON_POLYHEDRAL, cert, trail, notes)
        if spec.approximated:
            notes = notes + ("approximated input: coordinate-based "
                             "stabilization certificates are not issued",)
        return Verdict(EVIDENCE, INCONCLUSIVE, None, trail, notes)
    return Verdict(EVIDENCE, INCONCLUSIVE, None, trail,
                   notes + _trend_notes(trail))


def _direction_closure_notes(spec: GeneratorSpec,
                             gen: TruncatedGenerator) -> tuple[str, ...]:
    unattained = _unattained_boundary_limits(spec, gen)
    if unattained:
        rays = ", ".join(str(d.coords) for d in unattained)
        return (f"direction cone is not closed: declared limit "
                f"direction(s) {rays} unattained by any enumerated point",)
    return ()


def _trend_notes(trail: tuple[TrailRow, ...]) -> tuple[str, ...]:
    counts = [row.extreme_count for row in trail]
    if all(b > a for a, b in zip(counts, counts[1:])):
        return ("extreme point count strictly increasing across the "
                "schedule",)
    if all(b == a for a, b in zip(counts, counts[1:])):
        return ("extreme point count constant across the schedule",)
    return (f"extreme point counts across the schedule: {counts}",)


def verify_nonpolyhedral_certificate(spec: GeneratorSpec,
                                     cert: UnattainedLimitCertificate) -> bool:
    """The witness direction must be declared, must sit on the boundary
    of the recomputed direction cone, and no enumerated point may lie
    on its ray."""
    if not spec.discrete:
        return False
    if cert.direction not in spec.limit_directions:
        return False
    try:
        gen = enumerate_truncation(spec, cert.radius)
    except InputError:
        return False
    cone, _ = direction_cone(gen, spec.limit_directions)
    on_boundary = any(d == cert.direction and not attained
                      for d, attained in cone.boundary_rays())
    if not on_boundary:
        return False
    return all(canonical_direction(p) != cert.direction
               for p in gen.nonzero_points())


def reciprocal_stable_after(spec: GeneratorSpec, fire_radius, radii) -> bool:
    """After a certificate fires, larger windows must add no extreme
    point and no irredundant cell facet (exact set comparisons)."""
    base_gen = enumerate_truncation(spec, scalar(fire_radius))
    base_extreme = set(convex_reciprocal(base_gen).extreme)
    base_facets = set(irredundant_facets(cell_halfspaces(base_gen)).halfspaces)
    for r in radii:
        if scalar(r) <= scalar(fire_radius):
            continue
        gen = enumerate_truncation(spec, scalar(r))
        if set(convex_reciprocal(gen).extreme) != base_extreme:
            return False
        if set(irredundant_facets(cell_halfspaces(gen)).halfspaces) \
                != base_facets:
            return False
    return True
