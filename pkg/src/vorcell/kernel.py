"""Exact rational arithmetic, geometric primitives, and a small exact LP solver.

Every value in this module is an exact rational (``fractions.Fraction``).
There is no floating point in any predicate: equality, containment and
optimality are decided exactly.  All objects are immutable and all
operations are pure functions, so everything here is safe to use from
concurrent callers without coordination.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Scalar = Fraction
Vec = tuple[Fraction, ...]


class InputError(ValueError):
    """Raised for invalid caller-supplied data (bad dimensions, bad specs)."""


class InternalError(RuntimeError):
    """Raised when an internal invariant is violated (a bug, not bad input)."""


def scalar(value) -> Fraction:
    """Coerce ints, Fractions and "num/den" strings to an exact rational."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"cannot parse rational {value!r}") from exc
    if isinstance(value, float):
        raise InputError(
            f"refusing float {value!r}: pass an exact rational instead"
        )
    raise InputError(f"cannot coerce {type(value).__name__} to a rational")


def vec(*coords) -> Vec:
    return tuple(scalar(c) for c in coords)


def as_vec(coords: Iterable) -> Vec:
    return tuple(scalar(c) for c in coords)


def require_dim(v: Sequence, n: int) -> None:
    if len(v) != n:
        raise InputError(f"dimension mismatch: expected {n}, got {len(v)}")


def vadd(u: Vec, v: Vec) -> Vec:
    require_dim(v, len(u))
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    require_dim(v, len(u))
    return tuple(a - b for a, b in zip(u, v))


def vscale(c: Fraction, v: Vec) -> Vec:
    return tuple(c * x for x in v)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    require_dim(v, len(u))
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def norm_sq(v: Sequence[Fraction]) -> Fraction:
    return sum((x * x for x in v), Fraction(0))


def is_zero_vec(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def cross2d(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != 2 or len(v) != 2:
        raise InputError("cross product requires dimension 2")
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class Direction:
    """Canonical integer representative of a ray from the origin.

    Two vectors lie on the same ray (equal up to a positive rational
    factor) exactly when their canonical representatives are equal, so
    ray comparison is structural equality.
    """

    coords: tuple[int, ...]

    def __post_init__(self):
        if not self.coords or all(c == 0 for c in self.coords):
            raise InputError("direction must be a nonzero vector")
        g = 0
        for c in self.coords:
            g = gcd(g, abs(c))
        if g != 1:
            raise InternalError(f"direction {self.coords} not in lowest terms")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def as_vec(self) -> Vec:
        return tuple(Fraction(c) for c in self.coords)

    def neg(self) -> "Direction":
        return Direction(tuple(-c for c in self.coords))

    def perp(self) -> "Direction":
        """Rotation by +90 degrees; dimension 2 only."""
        if self.dim != 2:
            raise InputError("perp requires dimension 2")
        return Direction((-self.coords[1], self.coords[0]))

    def dot(self, v: Sequence[Fraction]) -> Fraction:
        return dot(self.as_vec(), as_vec(v))

    def cross(self, other: "Direction") -> int:
        if self.dim != 2 or other.dim != 2:
            raise InputError("cross requires dimension 2")
        return (self.coords[0] * other.coords[1]
                - self.coords[1] * other.coords[0])


def canonical_direction(v: Sequence) -> Direction:
    """Scale a nonzero rational vector by a positive rational into the
    canonical integer ray representative (gcd one, orientation kept)."""
    w = as_vec(v)
    if is_zero_vec(w):
        raise InputError("cannot canonicalize the zero vector")
    denom_lcm = 1
    for x in w:
        d = x.denominator
        denom_lcm = denom_lcm * d // gcd(denom_lcm, d)
    ints = [int(x * denom_lcm) for x in w]
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return Direction(tuple(c // g for c in ints))


class Location(Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    EXTERIOR = "exterior"


@dataclass(frozen=True)
class Halfspace:
    """The closed half space of points x with <x, normal> <= offset."""

    normal: Vec
    offset: Fraction

    def __post_init__(self):
        if is_zero_vec(self.normal):
            raise InputError("halfspace normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.normal)

    def locate(self, x: Sequence[Fraction]) -> Location:
        value = dot(self.normal, as_vec(x))
        if value < self.offset:
            return Location.INTERIOR
        if value == self.offset:
            return Location.BOUNDARY
        return Location.EXTERIOR

    def contains(self, x: Sequence[Fraction]) -> bool:
        return self.locate(x) is not Location.EXTERIOR

    def canonical(self) -> "Halfspace":
        """Scale so the normal is the canonical ray representative."""
        d = canonical_direction(self.normal)
        # the positive factor taking normal to d also scales the offset
        for a, b in zip(self.normal, d.as_vec()):
            if a != 0:
                factor = b / a
                break
        return Halfspace(d.as_vec(), self.offset * factor)


def halfspace(normal, offset) -> Halfspace:
    return Halfspace(as_vec(normal), scalar(offset))


def halfspace_contains(h: Halfspace, x: Sequence[Fraction]) -> Location:
    """Exact three-way point/half-space classification."""
    require_dim(x, h.dim)
    return h.locate(x)


# ---------------------------------------------------------------------------
# Linear programming
# ---------------------------------------------------------------------------

class LPStatus(Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    optimizer: Vec | None
    value: Fraction | None


def _pivot(tableau: list[list[Fraction]], basis: list[int],
           row: int, col: int) -> None:
    piv = tableau[row][col]
    if piv == 0:
        raise InternalError("pivot on zero element")
    inv = Fraction(1) / piv
    tableau[row] = [x * inv for x in tableau[row]]
    prow = tableau[row]
    for i, r in enumerate(tableau):
        if i != row and r[col] != 0:
            f = r[col]
            tableau[i] = [a - f * b for a, b in zip(r, prow)]
    basis[row] = col


def _bland_step(tableau: list[list[Fraction]], basis: list[int],
                ncols: int) -> str:
    """One simplex step on a minimization tableau with Bland's rule.

    Returns "optimal", "unbounded" or "pivoted".  The cost row is the
    last row; reduced costs must be made non-negative.
    """
    cost = tableau[-1]
    col = -1
    for j in range(ncols):
        if cost[j] < 0:
            col = j
            break
    if col < 0:
        return "optimal"
    # ratio test; ties broken by smallest basis variable index (Bland)
    best_row = -1
    best_ratio = None
    for i in range(len(tableau) - 1):
        a = tableau[i][col]
        if a > 0:
            ratio = tableau[i][-1] / a
            if (best_ratio is None or ratio < best_ratio
                    or (ratio == best_ratio and basis[i] < basis[best_row])):
                best_ratio = ratio
                best_row = i
    if best_row < 0:
        return "unbounded"
    _pivot(tableau, basis, best_row, col)
    return "pivoted"


def _solve_standard_form(rows: list[list[Fraction]], rhs: list[Fraction],
                         cost: list[Fraction],
                         basis_hint: list[int] | None = None):
    """Minimize cost . x subject to rows . x = rhs, x >= 0.

    Classical two-phase simplex over exact rationals with Bland's
    anti-cycling rule, so it terminates on every input.  ``basis_hint``
    may name a basic column per row (for example a slack); rows marked
    -1, or every row when the hint is omitted, receive an artificial
    variable and only those drive phase 1.  Returns (status, solution
    list, objective value).
    """
    m = len(rows)
    n = len(cost)
    # normalize to rhs >= 0
    work = []
    b = []
    for row, beta in zip(rows, rhs):
        if beta < 0:
            work.append([-a for a in row])
            b.append(-beta)
        else:
            work.append(list(row))
            b.append(beta)

    if basis_hint is None:
        basis_hint = [-1] * m
    artificial_rows = [i for i in range(m) if basis_hint[i] < 0]
    n_art = len(artificial_rows)
    total = n + n_art

    tableau: list[list[Fraction]] = []
    basis: list[int] = []
    art_col = {row: n + k for k, row in enumerate(artificial_rows)}
    for i in range(m):
        r = work[i] + [Fraction(0)] * n_art + [b[i]]
        if i in art_col:
            r[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(basis_hint[i])
        tableau.append(r)

    if n_art:
        phase1 = [Fraction(0)] * (total + 1)
        for i in artificial_rows:
            for j in range(total + 1):
                phase1[j] -= tableau[i][j]
        for i in artificial_rows:
            phase1[art_col[i]] = Fraction(0)
        tableau.append(phase1)
        while True:
            outcome = _bland_step(tableau, basis, total)
            if outcome == "optimal":
                break
            if outcome == "unbounded":
                raise InternalError("phase 1 objective unbounded")
        if tableau[-1][-1] != 0:
            return LPStatus.INFEASIBLE, None, None
        tableau.pop()
        # drive leftover artificial variables out of the basis
        for i in range(m):
            if basis[i] >= n:
                piv_col = -1
                for j in range(n):
                    if tableau[i][j] != 0:
                        piv_col = j
                        break
                if piv_col >= 0:
                    _pivot(tableau, basis, i, piv_col)
        keep_rows = [i for i in range(m) if basis[i] < n]
        tableau = [[tableau[i][j] for j in range(n)] + [tableau[i][-1]]
                   for i in keep_rows]
        basis = [basis[i] for i in keep_rows]
    else:
        tableau = [[r[j] for j in range(n)] + [r[-1]] for r in tableau]

    cost_row = list(cost) + [Fraction(0)]
    # reduce the cost row against the current basis
    for i, bi in enumerate(basis):
        f = cost_row[bi]
        if f != 0:
            cost_row = [a - f * bb for a, bb in zip(cost_row, tableau[i])]
    tableau.append(cost_row)

    while True:
        outcome = _bland_step(tableau, basis, n)
        if outcome == "optimal":
            break
        if outcome == "unbounded":
            return LPStatus.UNBOUNDED, None, None

    solution = [Fraction(0)] * n
    for i, bi in enumerate(basis):
        solution[bi] = tableau[i][-1]
    value = sum((cj * xj for cj, xj in zip(cost, solution)), Fraction(0))
    return LPStatus.OPTIMAL, solution, value


def lp_solve(objective: Sequence, constraints: Sequence[Halfspace],
             sense: str = "max") -> LPResult:
    """Exact LP over free variables: optimize objective . x subject to
    <normal_i, x> <= offset_i for every constraint half space.

    Free variables are split into positive and negative parts and a
    slack is added per constraint, then the two-phase simplex runs on
    the standard form.  Optimal results are re-verified against every
    constraint before being returned.
    """
    if sense not in ("max", "min"):
        raise InputError(f"sense must be 'max' or 'min', got {sense!r}")
    c = as_vec(objective)
    n = len(c)
    for h in constraints:
        if h.dim != n:
            raise InputError(
                f"constraint dimension {h.dim} does not match objective "
                f"dimension {n}")
    m = len(constraints)
    # columns: x+ (n), x- (n), slack (m); a slack is basic wherever the
    # right-hand side is non-negative, so phase 1 only touches the rest
    rows = []
    rhs = []
    hint = []
    for i, h in enumerate(constraints):
        row = ([h.normal[j] for j in range(n)]
               + [-h.normal[j] for j in range(n)]
               + [Fraction(0)] * m)
        row[2 * n + i] = Fraction(1)
        rows.append(row)
        rhs.append(h.offset)
        hint.append(2 * n + i if h.offset >= 0 else -1)
    # internal solver minimizes
    sign = Fraction(-1) if sense == "max" else Fraction(1)
    cost = ([sign * cj for cj in c] + [-sign * cj for cj in c]
            + [Fraction(0)] * m)

    status, solution, value = _solve_standard_form(rows, rhs, cost, hint)
    if status is not LPStatus.OPTIMAL:
        return LPResult(status, None, None)
    point = tuple(solution[j] - solution[n + j] for j in range(n))
    for h in constraints:
        if h.locate(point) is Location.EXTERIOR:
            raise InternalError("simplex returned an infeasible optimizer")
    return LPResult(LPStatus.OPTIMAL, point, dot(c, point))


def lp_feasible(constraints: Sequence[Halfspace]) -> bool:
    """Whether the intersection of the half spaces is nonempty."""
    if not constraints:
        return True
    if all(h.offset >= 0 for h in constraints):
        return True
    n = constraints[0].dim
    return lp_solve([0] * n, constraints).status is not LPStatus.INFEASIBLE


def lp_support_value(objective: Sequence, constraints: Sequence[Halfspace]
                     ) -> tuple[LPStatus, Fraction | None]:
    """sup of objective . x over a nonempty half-space intersection.

    Solved through the dual (minimize offsets . y over non-negative
    combinations of the normals equal to the objective), whose tableau
    has only ``dim`` rows, so batches of these calls stay cheap.  The
    caller must know the primal is feasible: a dual-infeasible outcome
    is then reported as UNBOUNDED.
    """
    c = as_vec(objective)
    n = len(c)
    for h in constraints:
        if h.dim != n:
            raise InputError("constraint dimension mismatch")
    m = len(constraints)
    if m == 0:
        if is_zero_vec(c):
            return LPStatus.OPTIMAL, Fraction(0)
        return LPStatus.UNBOUNDED, None
    rows = [[constraints[j].normal[r] for j in range(m)] for r in range(n)]
    cost = [h.offset for h in constraints]
    status, _, value = _solve_standard_form(rows, list(c), cost)
    if status is LPStatus.OPTIMAL:
        return LPStatus.OPTIMAL, value
    if status is LPStatus.INFEASIBLE:
        return LPStatus.UNBOUNDED, None
    return LPStatus.INFEASIBLE, None


def in_convex_hull(x: Sequence, points: Sequence[Sequence]) -> bool:
    """Exact membership of x in the convex hull of finitely many points.

    Solved as a phase-1 feasibility problem over the combination
    weights, which keeps the tableau small (rows = dimension + 1).
    """
    xs = as_vec(x)
    pts = [as_vec(p) for p in points]
    if not pts:
        return False
    n = len(xs)
    for p in pts:
        require_dim(p, n)
    k = len(pts)
    rows = [[pts[j][i] for j in range(k)] for i in range(n)]
    rows.append([Fraction(1)] * k)
    rhs = list(xs) + [Fraction(1)]
    status, _, _ = _solve_standard_form(rows, rhs, [Fraction(0)] * k)
    return status is LPStatus.OPTIMAL


def in_positive_hull(x: Sequence, generators: Sequence[Sequence]) -> bool:
    """Exact membership of x in pos(generators) (zero vector included)."""
    xs = as_vec(x)
    if is_zero_vec(xs):
        return True
    gens = [as_vec(g) for g in generators]
    if not gens:
        return False
    n = len(xs)
    for g in gens:
        require_dim(g, n)
    k = len(gens)
    rows = [[gens[j][i] for j in range(k)] for i in range(n)]
    rhs = list(xs)
    status, _, _ = _solve_standard_form(rows, rhs, [Fraction(0)] * k)
    return status is LPStatus.OPTIMAL


# ---------------------------------------------------------------------------
# Planar convex hulls (exact)
# ---------------------------------------------------------------------------

def convex_hull_2d(points: Sequence[Sequence]) -> list[Vec]:
    """Vertices of the convex hull in counterclockwise order.

    Andrew's monotone chain with exact orientation tests.  Points in
    the relative interior of an edge are not vertices and are dropped.
    Collinear input yields the two segment endpoints; a single distinct
    point yields itself.
    """
    pts = sorted({as_vec(p) for p in points})
    for p in pts:
        require_dim(p, 2)
    if len(pts) <= 2:
        return pts

    def build(seq):
        chain: list[Vec] = []
        for p in seq:
            while len(chain) > 1 and cross2d(
                    vsub(chain[-1], chain[-2]), vsub(p, chain[-2])) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:
        # all points collinear: keep the extreme pair
        return [pts[0], pts[-1]]
    return hull


def hull_facets_2d(points: Sequence[Sequence]) -> list[Halfspace]:
    """Canonical facet half spaces of the planar convex hull.

    Degenerate hulls are supported: a segment is pinned by four half
    spaces (two along, two across) and a single point by four axis
    constraints, so membership testing stays a plain facet scan.
    """
    hull = convex_hull_2d(points)
    if not hull:
        raise InputError("hull of an empty point set")
    facets: list[Halfspace] = []
    if len(hull) == 1:
        p = hull[0]
        for normal in ((1, 0), (-1, 0), (0, 1), (0, -1)):
            u = as_vec(normal)
            facets.append(Halfspace(u, dot(u, p)))
        return facets
    if len(hull) == 2:
        a, b = hull
        along = canonical_direction(vsub(b, a))
        across = along.perp()
        for d, anchor in ((along, b), (along.neg(), a),
                          (across, a), (across.neg(), a)):
            facets.append(Halfspace(d.as_vec(), d.dot(anchor)))
        return facets
    seen = set()
    for a, b in zip(hull, hull[1:] + hull[:1]):
        edge = vsub(b, a)
        outward = canonical_direction((edge[1], -edge[0]))
        f = Halfspace(outward.as_vec(), outward.dot(a))
        key = (outward.coords, f.offset)
        if key not in seen:
            seen.add(key)
            facets.append(f)
    return facets
