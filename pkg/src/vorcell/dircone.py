"""Exact planar convex-cone algebra.

A cone is stored as a sector: two canonical boundary ray directions
with attainment flags, or one of the degenerate variants (zero, ray,
line, half plane, full plane).  An attainment flag records whether an
actual generator point lies on that boundary ray, as opposed to a mere
limit direction; the represented point set excludes unattained
boundary rays (except the origin).  All angle comparisons are sign
tests of exact cross and dot products, never inverse trigonometry.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, Sequence

from .kernel import (
    Direction,
    Halfspace,
    InputError,
    InternalError,
    Vec,
    as_vec,
    canonical_direction,
    cross2d,
    dot,
    is_zero_vec,
    norm_sq,
)

ZERO = "zero"
RAY = "ray"
LINE = "line"
SECTOR = "sector"
HALFPLANE = "halfplane"
FULL = "full"


@dataclass(frozen=True)
class Cone2D:
    kind: str
    lo: Direction | None = None
    hi: Direction | None = None
    lo_attained: bool = True
    hi_attained: bool = True

    def __post_init__(self):
        if self.kind in (ZERO, FULL):
            if self.lo is not None or self.hi is not None:
                raise InputError(f"{self.kind} cone carries no boundary rays")
            return
        if self.lo is None or self.hi is None:
            raise InputError(f"{self.kind} cone needs boundary rays")
        if self.lo.dim != 2 or self.hi.dim != 2:
            raise InputError("planar cones only")
        if self.kind == RAY:
            if self.lo != self.hi:
                raise InputError("ray must have identical boundary rays")
        elif self.kind in (LINE, HALFPLANE):
            if self.hi != self.lo.neg():
                raise InputError(f"{self.kind} boundary rays must be opposite")
        elif self.kind == SECTOR:
            if self.lo.cross(self.hi) <= 0:
                raise InputError(
                    "sector must sweep counterclockwise by less than a half "
                    "turn; use halfplane or full for wider cones")
        else:
            raise InputError(f"unknown cone kind {self.kind!r}")

    def closure(self) -> "Cone2D":
        if self.kind in (ZERO, FULL):
            return self
        return replace(self, lo_attained=True, hi_attained=True)

    def is_closed(self) -> bool:
        return self == self.closure()

    def boundary_rays(self) -> tuple[tuple[Direction, bool], ...]:
        if self.kind in (ZERO, FULL):
            return ()
        if self.kind == RAY:
            return ((self.lo, self.lo_attained),)
        return ((self.lo, self.lo_attained), (self.hi, self.hi_attained))


def zero_cone() -> Cone2D:
    return Cone2D(ZERO)


def full_cone() -> Cone2D:
    return Cone2D(FULL)


def ray_cone(d: Direction, attained: bool = True) -> Cone2D:
    return Cone2D(RAY, d, d, attained, attained)


def line_cone(d: Direction, d_attained: bool = True,
              opposite_attained: bool = True) -> Cone2D:
    # canonical representative: first nonzero coordinate positive
    for c in d.coords:
        if c != 0:
            flip = c < 0
            break
    if flip:
        return Cone2D(LINE, d.neg(), d, opposite_attained, d_attained)
    return Cone2D(LINE, d, d.neg(), d_attained, opposite_attained)


def sector_cone(lo: Direction, hi: Direction, lo_attained: bool = True,
                hi_attained: bool = True) -> Cone2D:
    return Cone2D(SECTOR, lo, hi, lo_attained, hi_attained)


def halfplane_cone(lo: Direction, lo_attained: bool = True,
                   hi_attained: bool = True) -> Cone2D:
    """Closed half plane swept counterclockwise from ``lo`` by a half turn."""
    return Cone2D(HALFPLANE, lo, lo.neg(), lo_attained, hi_attained)


# ---------------------------------------------------------------------------
# Membership
# ---------------------------------------------------------------------------

def contains_direction(cone: Cone2D, d: Direction) -> bool:
    """Ray membership in the closed cone."""
    if cone.kind == ZERO:
        return False
    if cone.kind == FULL:
        return True
    if cone.kind == RAY:
        return d == cone.lo
    if cone.kind == LINE:
        return d == cone.lo or d == cone.hi
    if cone.kind == HALFPLANE:
        return cone.lo.cross(d) >= 0
    return cone.lo.cross(d) >= 0 and d.cross(cone.hi) >= 0


def contains_vec(cone: Cone2D, x: Sequence[Fraction],
                 respect_attainment: bool = False) -> bool:
    """Point membership; the origin always belongs to every cone."""
    v = as_vec(x)
    if is_zero_vec(v):
        return True
    d = canonical_direction(v)
    if not contains_direction(cone, d):
        return False
    if respect_attainment:
        for ray, attained in cone.boundary_rays():
            if d == ray and not attained:
                return False
    return True


def cone_in_halfspace(cone: Cone2D, normal: Sequence[Fraction]) -> bool:
    """Whether the closed cone lies in {x : <x, normal> <= 0}."""
    u = as_vec(normal)
    if is_zero_vec(u):
        return True
    if cone.kind == ZERO:
        return True
    if cone.kind == FULL:
        return False
    lo_val = cone.lo.dot(u)
    if cone.kind == RAY:
        return lo_val <= 0
    if cone.kind == LINE:
        return lo_val == 0
    hi_val = cone.hi.dot(u)
    if cone.kind == SECTOR:
        # every sector direction is a non-negative combination of lo, hi
        return lo_val <= 0 and hi_val <= 0
    # half plane: boundary on the hyperplane and the sweep side below it
    return lo_val == 0 and cone.lo.perp().dot(u) <= 0


# ---------------------------------------------------------------------------
# Construction from direction sets
# ---------------------------------------------------------------------------

def _angular_cmp(a: Direction, b: Direction) -> int:
    def half(d: Direction) -> int:
        x, y = d.coords
        return 0 if (y > 0 or (y == 0 and x > 0)) else 1

    ha, hb = half(a), half(b)
    if ha != hb:
        return -1 if ha < hb else 1
    c = a.cross(b)
    if c > 0:
        return -1
    if c < 0:
        return 1
    return 0


def cone_from_directions(directions: Iterable[Direction],
                         attained: Iterable[Direction] = ()) -> Cone2D:
    """Positive hull of a set of rays, with boundary attainment flags
    taken from the ``attained`` subset.

    Sorts the rays counterclockwise and inspects the angular gaps: a
    gap over a half turn leaves a pointed sector, a gap of exactly a
    half turn a half plane, and no such gap fills the plane.
    """
    dirs = sorted(set(directions), key=functools.cmp_to_key(_angular_cmp))
    attained_set = set(attained)

    def flag(d: Direction) -> bool:
        return d in attained_set

    if not dirs:
        return zero_cone()
    if len(dirs) == 1:
        return ray_cone(dirs[0], flag(dirs[0]))
    if len(dirs) == 2 and dirs[1] == dirs[0].neg():
        return line_cone(dirs[0], flag(dirs[0]), flag(dirs[1]))
    for i, a in enumerate(dirs):
        b = dirs[(i + 1) % len(dirs)]
        c = a.cross(b)
        if c < 0:
            return sector_cone(b, a, flag(b), flag(a))
        if c == 0 and a.dot(b.as_vec()) < 0:
            return Cone2D(HALFPLANE, b, a, flag(b), flag(a))
    return full_cone()


def direction_cone(gen, limit_dirs: Sequence[Direction] = ()
                   ) -> tuple[Cone2D, Cone2D]:
    """Direction cone of a truncated generator plus declared limit rays.

    Returns the cone with attainment computed from actual points, and
    its closure (all flags forced).  For the built-in families the
    truncated sector together with the declared limits equals the true
    closed direction cone once the window holds the extreme-direction
    points.
    """
    if gen.dimension != 2:
        raise InputError("direction cones are planar only")
    point_dirs = {canonical_direction(p) for p in gen.nonzero_points()}
    all_dirs = set(point_dirs)
    all_dirs.update(limit_dirs)
    cone = cone_from_directions(all_dirs, attained=point_dirs)
    return cone, cone.closure()


def is_finitely_generated(cone: Cone2D
                          ) -> tuple[bool, tuple[Direction, ...]]:
    """A planar cone is finitely generated exactly when every boundary
    ray is attained; the witness is a generating set, or the offending
    unattained ray."""
    if cone.kind == ZERO:
        return True, ()
    if cone.kind == FULL:
        return True, (canonical_direction((1, 0)),
                      canonical_direction((0, 1)),
                      canonical_direction((-1, -1)))
    for ray, attained in cone.boundary_rays():
        if not attained:
            return False, (ray,)
    return True, tuple(r for r, _ in cone.boundary_rays())


def polar_cone(cone: Cone2D) -> Cone2D:
    """Exact polar {u : <y, u> <= 0 for all y in the cone}.

    Polarity sees only the closure, so attainment flags are ignored and
    the result is always closed.
    """
    if cone.kind == ZERO:
        return full_cone()
    if cone.kind == FULL:
        return zero_cone()
    if cone.kind == RAY:
        return halfplane_cone(cone.lo.perp())
    if cone.kind == LINE:
        return line_cone(cone.lo.perp())
    if cone.kind == SECTOR:
        return sector_cone(cone.hi.perp(), cone.lo.perp().neg())
    return ray_cone(cone.lo.perp().neg())


def full_space_check(cone: Cone2D) -> bool:
    return cone.kind == FULL


def halfspace_cone(normal: Sequence[Fraction]) -> Cone2D:
    """The half space {x : <x, normal> <= 0} viewed as a closed cone."""
    u = canonical_direction(normal)
    return halfplane_cone(u.perp())


def intersect_cones(a: Cone2D, b: Cone2D) -> Cone2D:
    """Intersection of two closed planar cones (flags are ignored).

    The boundary rays of the intersection are boundary rays of the
    operands, so it suffices to classify which of those survive in both
    cones and rebuild the sector between them.
    """
    a = a.closure()
    b = b.closure()
    if a.kind == ZERO or b.kind == ZERO:
        return zero_cone()
    if a.kind == FULL:
        return b
    if b.kind == FULL:
        return a
    for first, second in ((a, b), (b, a)):
        if first.kind == LINE:
            pos = contains_direction(second, first.lo)
            neg = contains_direction(second, first.hi)
            if pos and neg:
                return first
            if pos:
                return ray_cone(first.lo)
            if neg:
                return ray_cone(first.hi)
            return zero_cone()
    if a == b:
        return a
    candidates: list[Direction] = []
    for d, _ in a.boundary_rays() + b.boundary_rays():
        if d not in candidates and contains_direction(a, d) \
                and contains_direction(b, d):
            candidates.append(d)
    if not candidates:
        return zero_cone()
    if len(candidates) == 1:
        return ray_cone(candidates[0])
    if len(candidates) == 2:
        c1, c2 = candidates
        if c2 == c1.neg():
            # two half planes sharing their boundary line
            if a.kind == HALFPLANE and b.kind == HALFPLANE:
                return line_cone(c1)
            raise InternalError("unexpected antipodal intersection bounds")
        cr = c1.cross(c2)
        if cr > 0:
            return sector_cone(c1, c2)
        return sector_cone(c2, c1)
    raise InternalError(
        f"cone intersection produced {len(candidates)} boundary rays")


# ---------------------------------------------------------------------------
# Support values over the unit arc
# ---------------------------------------------------------------------------

def arc_max_dot_sq(cone: Cone2D, u: Sequence[Fraction]
                   ) -> tuple[bool, Fraction]:
    """Maximum of <u, d> over unit directions d of the closed cone,
    reported without square roots.

    Returns (positive, m) where positive says the maximum exceeds zero
    and m is then its exact square.  Callers compare against a bound b
    via m <= b*b.
    """
    w = as_vec(u)
    if is_zero_vec(w) or cone.kind == ZERO:
        return False, Fraction(0)
    if cone.kind == FULL:
        return True, norm_sq(w)

    def at(d: Direction) -> tuple[bool, Fraction]:
        v = d.dot(w)
        if v <= 0:
            return False, Fraction(0)
        return True, v * v / norm_sq(d.as_vec())

    if cone.kind == RAY:
        return at(cone.lo)
    if cone.kind == LINE:
        best = max(at(cone.lo), at(cone.hi), key=lambda t: (t[0], t[1]))
        return best
    if contains_direction(cone, canonical_direction(w)):
        return True, norm_sq(w)
    return max(at(cone.lo), at(cone.hi), key=lambda t: (t[0], t[1]))


# ---------------------------------------------------------------------------
# Gauge of a planar polytope and the local cone radius
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GaugeValue:
    """Exact gauge value; ``infinite`` marks points outside pos(g) when
    the origin sits on the boundary of g."""

    value: Fraction | None
    infinite: bool = False


def _check_gauge_body(facets: Sequence[Halfspace]) -> None:
    if not facets:
        raise InputError("gauge body needs at least one facet")
    for f in facets:
        if f.dim != 2:
            raise InputError("gauge bodies are planar only")
        if f.offset < 0:
            raise InputError("gauge body must contain the origin")
    normals = cone_from_directions(
        canonical_direction(f.normal) for f in facets)
    if normals.kind != FULL:
        raise InputError("gauge body must be bounded")


def gauge_value(g: Iterable[Halfspace], x: Sequence[Fraction]) -> GaugeValue:
    """Minkowski gauge of a bounded planar H-polytope containing 0.

    For a polytope the gauge of x is the largest facet ratio
    <u, x> / offset over facets with <u, x> > 0; a zero-offset facet
    with positive inner product reports an infinite gauge (x is outside
    the positive hull of the body).
    """
    facets = list(g)
    _check_gauge_body(facets)
    v = as_vec(x)
    if is_zero_vec(v):
        return GaugeValue(Fraction(0))
    best = Fraction(0)
    for f in facets:
        num = dot(f.normal, v)
        if num > 0:
            if f.offset == 0:
                return GaugeValue(None, infinite=True)
            ratio = num / f.offset
            if ratio > best:
                best = ratio
    if best == 0:
        raise InternalError("bounded body admits a recession direction")
    return GaugeValue(best)


def pos_hull_cone(g: Iterable[Halfspace]) -> Cone2D:
    """pos(g) for a bounded planar H-polytope g containing the origin.

    Positive scaling removes every facet with positive offset, so the
    positive hull is the intersection of the zero-offset facets.
    """
    facets = list(g)
    _check_gauge_body(facets)
    cone = full_cone()
    for f in facets:
        if f.offset == 0:
            cone = intersect_cones(cone, halfspace_cone(f.normal))
    return cone


def local_cone_radius(g: Iterable[Halfspace]) -> Fraction:
    """A certified squared radius r2 > 0 such that every point of
    pos(g) with squared norm at most r2 belongs to g.

    Returned as a square to stay rational.  The value need not be
    maximal; each positive-offset facet contributes the bound
    offset / max(<u, d>) over unit directions d of pos(g).
    """
    facets = list(g)
    cone = pos_hull_cone(facets)
    best: Fraction | None = None
    for f in facets:
        if f.offset <= 0:
            continue
        positive, msq = arc_max_dot_sq(cone, f.normal)
        if not positive:
            continue
        candidate = f.offset * f.offset / msq
        if best is None or candidate < best:
            best = candidate
    return best if best is not None else Fraction(1)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def cone_to_json_dict(cone: Cone2D) -> dict:
    doc: dict = {"kind": cone.kind}
    if cone.lo is not None:
        doc["lo"] = list(cone.lo.coords)
        doc["hi"] = list(cone.hi.coords)
        doc["lo_attained"] = cone.lo_attained
        doc["hi_attained"] = cone.hi_attained
    return doc


def cone_from_json_dict(doc: dict) -> Cone2D:
    kind = doc.get("kind")
    if kind in (ZERO, FULL):
        return Cone2D(kind)
    try:
        lo = Direction(tuple(int(c) for c in doc["lo"]))
        hi = Direction(tuple(int(c) for c in doc["hi"]))
        return Cone2D(kind, lo, hi, bool(doc.get("lo_attained", True)),
                      bool(doc.get("hi_attained", True)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed cone document: {exc}") from exc
