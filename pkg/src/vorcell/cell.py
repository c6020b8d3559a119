"""Half-space representation of the Voronoi cell at the origin.

Each non-origin generator point p contributes the half space
<p, x> <= |p|^2; their intersection is the doubled cell, so the
brute-force distance oracle and the half-space representation agree
after scaling the query point by two.  The representation is kept
doubled so every coefficient stays as written; halving is presentation
only.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import dircone
from .dircone import Cone2D, cone_from_directions, full_space_check, polar_cone
from .generators import GeneratorSpec, TruncatedGenerator, enumerate_truncation
from .kernel import (
    Direction,
    Halfspace,
    InputError,
    LPStatus,
    Location,
    Vec,
    as_vec,
    canonical_direction,
    dot,
    is_zero_vec,
    lp_feasible,
    lp_solve,
    lp_support_value,
    norm_sq,
    scalar,
    vscale,
)
from .verdicts import (
    BOUNDED,
    CERTIFIED,
    EVIDENCE,
    INCONCLUSIVE,
    SeparatorCertificate,
    SpanningCertificate,
    TrailRow,
    UNBOUNDED,
    Verdict,
)


@dataclass(frozen=True)
class HRep:
    """A finite list of half spaces; duplicates are merged by canonical
    comparison at construction."""

    halfspaces: tuple[Halfspace, ...]
    dimension: int

    def __iter__(self):
        return iter(self.halfspaces)

    def __len__(self) -> int:
        return len(self.halfspaces)

    def locate(self, x: Sequence[Fraction]) -> Location:
        worst = Location.INTERIOR
        for h in self.halfspaces:
            loc = h.locate(x)
            if loc is Location.EXTERIOR:
                return loc
            if loc is Location.BOUNDARY:
                worst = loc
        return worst

    def contains(self, x: Sequence[Fraction]) -> bool:
        return self.locate(x) is not Location.EXTERIOR


def hrep(halfspaces: Iterable[Halfspace], dimension: int) -> HRep:
    canon = []
    seen = set()
    for h in halfspaces:
        if h.dim != dimension:
            raise InputError("half space dimension mismatch")
        c = h.canonical()
        key = (c.normal, c.offset)
        if key not in seen:
            seen.add(key)
            canon.append(c)
    return HRep(tuple(canon), dimension)


def cell_halfspaces(gen: TruncatedGenerator) -> HRep:
    """One half space <p, x> <= |p|^2 per non-origin generator point:
    the doubled cell.  An origin-only generator yields the whole space
    (empty list)."""
    return hrep((Halfspace(p, norm_sq(p)) for p in gen.nonzero_points()),
                gen.dimension)


def constraint_sources(gen: TruncatedGenerator) -> dict:
    """Map canonical constraint keys back to their generator points."""
    out = {}
    for p in gen.nonzero_points():
        c = Halfspace(p, norm_sq(p)).canonical()
        out[(c.normal, c.offset)] = p
    return out


def membership_oracle(gen: TruncatedGenerator, x: Sequence[Fraction]) -> bool:
    """Brute-force distance oracle: x is in the cell when the origin is
    at least as close to x as every generator point, exactly."""
    v = as_vec(x)
    if len(v) != gen.dimension:
        raise InputError("query point dimension mismatch")
    base = norm_sq(v)
    for q in gen.points:
        if norm_sq(tuple(a - b for a, b in zip(v, q))) < base:
            return False
    return True


@functools.lru_cache(maxsize=None)
def irredundant_facets(h: HRep) -> HRep:
    """Constraints that genuinely bound the intersection.

    Constraint i is kept exactly when maximizing its normal over the
    remaining constraints exceeds its offset or is unbounded; ties
    (support only along a lower-dimensional face) are dropped, which is
    the documented tie rule for coincident bisector configurations.
    The per-constraint maximizations run through the dual form while
    the whole intersection is known nonempty.
    """
    kept = []
    hs = h.halfspaces
    feasible = lp_feasible(hs)
    for i, current in enumerate(hs):
        others = [hs[j] for j in range(len(hs)) if j != i]
        if feasible:
            status, value = lp_support_value(current.normal, others)
        else:
            result = lp_solve(current.normal, others, sense="max")
            status, value = result.status, result.value
        if status is LPStatus.UNBOUNDED:
            kept.append(current)
        elif status is LPStatus.OPTIMAL and value > current.offset:
            kept.append(current)
    return HRep(tuple(kept), h.dimension)


@dataclass(frozen=True)
class VertexEnum2D:
    """Vertices and extreme rays of a planar H-polyhedron.

    ``marker`` is "whole_plane" for the empty representation and
    "no_vertex" when the region is unpointed (the rays then list the
    boundary rays of the recession cone rather than a full V-rep).
    """

    vertices: tuple[Vec, ...]
    rays: tuple[Direction, ...]
    marker: str | None = None


def _solve_pair(a: Halfspace, b: Halfspace) -> Vec | None:
    det = a.normal[0] * b.normal[1] - a.normal[1] * b.normal[0]
    if det == 0:
        return None
    x = (a.offset * b.normal[1] - b.offset * a.normal[1]) / det
    y = (a.normal[0] * b.offset - b.normal[0] * a.offset) / det
    return (x, y)


def vertices_2d(h: HRep) -> VertexEnum2D:
    """All 0-dimensional faces and the recession rays of a planar
    polyhedron, each vertex the exact intersection of two facets."""
    if h.dimension != 2:
        raise InputError("vertex enumeration is planar only")
    if not h.halfspaces:
        return VertexEnum2D((), (), "whole_plane")
    feasibility = lp_solve((0, 0), h.halfspaces, sense="max")
    if feasibility.status is LPStatus.INFEASIBLE:
        raise InputError("empty intersection has no vertices")
    irr = irredundant_facets(h)
    ordered = sorted(
        irr.halfspaces,
        key=functools.cmp_to_key(
            lambda a, b: dircone._angular_cmp(canonical_direction(a.normal),
                                              canonical_direction(b.normal))))
    vertices: list[Vec] = []
    for a, b in zip(ordered, ordered[1:] + ordered[:1]):
        candidate = _solve_pair(a, b)
        if candidate is None:
            continue
        if h.contains(candidate) and candidate not in vertices:
            vertices.append(candidate)
    rec = recession_cone(h)
    rays = tuple(d for d, _ in rec.boundary_rays())
    marker = None if vertices else "no_vertex"
    return VertexEnum2D(tuple(sorted(vertices)), rays, marker)


def recession_cone(h: HRep) -> Cone2D:
    """The recession cone: intersection of the constraint half spaces
    pushed to the origin, built by incremental exact cone intersection."""
    if h.dimension != 2:
        raise InputError("recession sectors are planar only")
    cone = dircone.full_cone()
    for f in h.halfspaces:
        cone = dircone.intersect_cones(cone, dircone.halfspace_cone(f.normal))
        if cone.kind == dircone.ZERO:
            break
    return cone


@dataclass(frozen=True)
class CellAnalysis:
    truncated_hrep: HRep
    irredundant: HRep
    vertices2d: VertexEnum2D | None
    recession: Cone2D
    facet_defining_generators: tuple[Vec, ...]


def analyze_cell(gen: TruncatedGenerator) -> CellAnalysis:
    full = cell_halfspaces(gen)
    irr = irredundant_facets(full)
    sources = constraint_sources(gen)
    defining = tuple(sorted(
        sources[(f.normal, f.offset)] for f in irr.halfspaces))
    skeleton = vertices_2d(full) if gen.dimension == 2 else None
    rec = recession_cone(full) if gen.dimension == 2 else None
    return CellAnalysis(full, irr, skeleton, rec, defining)


# ---------------------------------------------------------------------------
# Boundedness
# ---------------------------------------------------------------------------

def _point_direction_cone(gen: TruncatedGenerator) -> Cone2D:
    return cone_from_directions(
        canonical_direction(p) for p in gen.nonzero_points())


def bounded_verdict(spec: GeneratorSpec, schedule: Sequence) -> Verdict:
    """Certified boundedness decision across a truncation schedule.

    Bounded: at the first schedule radius whose points positively span
    the plane (the cell of any superset is then bounded).  Unbounded: a
    half space through the origin contains every enumerated point and
    every declared limit direction, so the whole direction cone misses
    a half plane.  Anything else stays Evidence.
    """
    radii = [scalar(r) for r in schedule]
    if not radii or any(b <= a for a, b in zip(radii, radii[1:])):
        raise InputError("schedule must be nonempty and increasing")
    if spec.dimension != 2:
        raise InputError("boundedness verdicts are planar only")
    trail = []
    spanning_cert = None
    last_gen = None
    for r in radii:
        gen = enumerate_truncation(spec, r)
        last_gen = gen
        cone = _point_direction_cone(gen)
        spanning = full_space_check(cone)
        trail.append(TrailRow(radius=r, point_count=len(gen.points),
                              cone_kind=cone.kind, spanning=spanning))
        if spanning and spanning_cert is None:
            spanning_cert = SpanningCertificate(r, gen.nonzero_points())
    if spanning_cert is not None:
        notes = ()
        if spec.discrete:
            notes = ("discrete generator with a bounded cell: "
                     "the cell is a polytope",)
        return Verdict(CERTIFIED, BOUNDED, spanning_cert, tuple(trail), notes)

    separator = _find_separator(spec, last_gen)
    if separator is not None:
        return Verdict(CERTIFIED, UNBOUNDED,
                       SeparatorCertificate(separator, last_gen.radius),
                       tuple(trail))
    return Verdict(EVIDENCE, INCONCLUSIVE, None, tuple(trail),
                   ("no spanning subset found and no separating half "
                    "space verified at schedule radii",))


def _find_separator(spec: GeneratorSpec,
                    gen: TruncatedGenerator) -> Direction | None:
    _, closure = dircone.direction_cone(gen, spec.limit_directions)
    polar = polar_cone(closure)
    # prefer a relative-interior ray of the polar: the most robust witness
    if polar.kind == dircone.ZERO:
        return None
    if polar.kind == dircone.FULL:
        candidates = [canonical_direction((1, 0))]
    elif polar.kind == dircone.SECTOR:
        mid = canonical_direction(
            tuple(a + b for a, b in zip(polar.lo.as_vec(), polar.hi.as_vec())))
        candidates = [mid, polar.lo, polar.hi]
    elif polar.kind == dircone.HALFPLANE:
        candidates = [polar.lo.perp(), polar.lo, polar.hi]
    else:
        candidates = [d for d, _ in polar.boundary_rays()]
    for u in candidates:
        if _separator_holds(spec, gen, u):
            return u
    return None


def _separator_holds(spec: GeneratorSpec, gen: TruncatedGenerator,
                     u: Direction) -> bool:
    uv = u.as_vec()
    for p in gen.nonzero_points():
        if dot(p, uv) > 0:
            return False
    for d in spec.limit_directions:
        if d.dot(uv) > 0:
            return False
    for a in spec.accumulation_points:
        if dot(a, uv) > 0:
            return False
    return True


def verify_bounded_certificate(spec: GeneratorSpec,
                               cert: SpanningCertificate) -> bool:
    """Re-check a spanning witness from scratch: the points must be
    enumerated at the stated radius and positively span the plane."""
    try:
        gen = enumerate_truncation(spec, cert.radius)
    except InputError:
        return False
    available = set(gen.points)
    if any(p not in available for p in cert.points):
        return False
    cone = cone_from_directions(
        canonical_direction(p) for p in cert.points if not is_zero_vec(p))
    return full_space_check(cone)


def verify_unbounded_certificate(spec: GeneratorSpec,
                                 cert: SeparatorCertificate) -> bool:
    try:
        gen = enumerate_truncation(spec, cert.radius)
    except InputError:
        return False
    return _separator_holds(spec, gen, cert.normal)


# ---------------------------------------------------------------------------
# Random sampling support for oracle-equivalence checks
# ---------------------------------------------------------------------------

def oracle_matches_hrep(gen: TruncatedGenerator, h: HRep,
                        samples: Iterable[Sequence]) -> bool:
    """The distance oracle answers for x exactly as the doubled-cell
    H-rep answers for 2x, for every sample point."""
    for x in samples:
        v = as_vec(x)
        if membership_oracle(gen, v) != h.contains(vscale(Fraction(2), v)):
            return False
    return True
