"""Verification by duality: lifting onto the paraboloid and the empty
circumcircle characterization of the neighbors of the origin.

The neighbors of the origin in the Delaunay sense are exactly the
generators whose bisector supports the cell along an edge, so they
must coincide with the facet-defining generators found by redundancy
elimination; this module computes the neighbors independently (through
one-dimensional feasibility intervals along each bisector) and
cross-checks the two routes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cell import analyze_cell
from .generators import TruncatedGenerator
from .kernel import InputError, Vec, as_vec, dot, norm_sq, vscale, vsub


@dataclass(frozen=True)
class LiftedPoint:
    base: Vec
    height: Fraction


def lift(x: Sequence) -> LiftedPoint:
    """Lift onto the paraboloid: x -> (x, |x|^2), exactly."""
    v = as_vec(x)
    if len(v) != 2:
        raise InputError("lifting is planar here")
    return LiftedPoint(v, norm_sq(v))


def _support_interval(q: Vec, others: Sequence[Vec]):
    """Feasible parameter interval for circumcircle centers through the
    origin and q that keep every other generator outside-or-on.

    Centers sit on the bisector c(t) = q/2 + t * perp(q); each other
    point p imposes <c, p> <= |p|^2 / 2, linear in t.  Returns
    (lo, hi) with None for an unbounded side, or None when infeasible.
    """
    half_q = vscale(Fraction(1, 2), q)
    perp = (-q[1], q[0])
    lo = None
    hi = None
    for p in others:
        a = dot(perp, p)
        b = norm_sq(p) / 2 - dot(half_q, p)
        if a == 0:
            if b < 0:
                return None
            continue
        bound = b / a
        if a > 0:
            if hi is None or bound < hi:
                hi = bound
        else:
            if lo is None or bound > lo:
                lo = bound
    if lo is not None and hi is not None and lo > hi:
        return None
    return (lo, hi)


def delaunay_neighbors_of_origin(gen: TruncatedGenerator) -> tuple[Vec, ...]:
    """Generators q whose segment to the origin projects from a lower
    hull edge of the lifted points.

    q qualifies exactly when some circumcircle through the origin and q
    has no generator strictly inside and the feasible center set is a
    genuine segment; a single feasible center means the bisector only
    touches the cell at a vertex, which the documented tie rule
    excludes.
    """
    if gen.dimension != 2:
        raise InputError("neighbor computation is planar only")
    points = gen.nonzero_points()
    neighbors = []
    for q in points:
        others = [p for p in points if p != q]
        interval = _support_interval(q, others)
        if interval is None:
            continue
        lo, hi = interval
        if lo is not None and hi is not None and lo == hi:
            continue
        neighbors.append(q)
    return tuple(sorted(neighbors))


def empty_circle_witness(gen: TruncatedGenerator, q: Vec) -> Vec:
    """An exact circumcircle center through the origin and q with no
    generator point strictly inside."""
    points = [p for p in gen.nonzero_points() if p != q]
    interval = _support_interval(q, points)
    if interval is None:
        raise InputError(f"{q} admits no empty circumcircle with the origin")
    lo, hi = interval
    if lo is None and hi is None:
        t = Fraction(0)
    elif lo is None:
        t = hi - 1
    elif hi is None:
        t = lo + 1
    else:
        t = (lo + hi) / 2
    center = (q[0] / 2 - t * q[1], q[1] / 2 + t * q[0])
    radius_sq = norm_sq(center)
    if norm_sq(vsub(center, q)) != radius_sq:
        raise InputError("witness center is not equidistant")
    for p in points:
        if norm_sq(vsub(center, p)) < radius_sq:
            raise InputError("witness circle is not empty")
    return center


def cross_check_facets(gen: TruncatedGenerator) -> bool:
    """Delaunay neighbors of the origin must equal the facet-defining
    generators of the cell, two independently computed sets."""
    neighbors = set(delaunay_neighbors_of_origin(gen))
    facets = set(analyze_cell(gen).facet_defining_generators)
    return neighbors == facets


def is_generic(points: Sequence[Sequence]) -> bool:
    """No four of the points (the origin included) share a circumcircle
    or a line, decided by the exact incircle determinant."""
    pts = [as_vec(p) for p in points]
    n = len(pts)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for m in range(k + 1, n):
                    if _incircle_det(pts[i], pts[j], pts[k], pts[m]) == 0:
                        return False
    return True


def _incircle_det(a, b, c, d) -> Fraction:
    rows = []
    for p in (a, b, c):
        rows.append((p[0] - d[0], p[1] - d[1],
                     norm_sq(p) - 2 * dot(p, d) + norm_sq(d)))
    (a1, a2, a3), (b1, b2, b3), (c1, c2, c3) = rows
    return (a1 * (b2 * c3 - b3 * c2)
            - a2 * (b1 * c3 - b3 * c1)
            + a3 * (b1 * c2 - b2 * c1))
