"""Generator sets: finite point lists and the built-in parametric
families, enumerated through radius-truncated windows.

A generator is a point set containing the origin.  Infinite families
are accessed through finite truncations (every point of norm at most
R), plus declared asymptotic metadata: the accumulation directions of
the normalized points and, for non-discrete families, accumulation
points.  Declared metadata is trusted input; :func:`validate_spec`
sanity-checks it empirically but finite data cannot prove asymptotics.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import approx
from .kernel import (
    Direction,
    InputError,
    Vec,
    as_vec,
    canonical_direction,
    is_zero_vec,
    norm_sq,
    scalar,
)

DEFAULT_SCHEDULE: tuple[Fraction, ...] = tuple(
    Fraction(r) for r in (2, 4, 8, 16, 32))

#: default dyadic approximation bound for the irrational families
DEFAULT_PRECISION = Fraction(1, 1 << 24)

FAMILY_IDS = (
    "lattice_line",
    "hyperbola",
    "parabola",
    "klappe",
    "circle_rational",
    "exp_line",
    "strip_lattice",
)

FAMILY_SUMMARIES = {
    "lattice_line": "integer column {(-1, z)} plus the origin; cell gains "
                    "a new facet for every lattice point",
    "hyperbola": "points (e^x, e^-x)/2 on a hyperbola branch at half-integer "
                 "parameters (approximated); both axis directions are "
                 "unattained limits",
    "parabola": "points (t, (t+2)^2/4) at half-integer t, all exactly "
                "rational; the cell stabilizes to finitely many facets",
    "klappe": "points on the unit circle around (0, 1) closing in on (0, 2) "
              "(approximated, non-discrete); reciprocal hull is a triangle",
    "circle_rational": "rational points on the unit circle, densified as the "
                       "window radius grows (non-discrete)",
    "exp_line": "points (e^-x, 1) marching toward the extra generator (0, 1) "
                "(approximated, non-discrete)",
    "strip_lattice": "symmetric pairs (n, 1-1/n) and -(n, 1-1/n); the "
                     "directions positively span the plane, so cells are "
                     "bounded",
}


@dataclass(frozen=True)
class GeneratorSpec:
    """A finite point list or a parametric family, with declared
    discreteness and asymptotic data."""

    kind: str                       # "finite" | "family"
    dimension: int = 2
    points: tuple[Vec, ...] = ()
    family: str | None = None
    params: tuple[tuple[str, Fraction], ...] = ()
    discrete: bool = True
    limit_directions: tuple[Direction, ...] = ()
    accumulation_points: tuple[Vec, ...] = ()
    approx_precision: Fraction | None = None
    approximated: bool = False
    #: squared radius past which every family direction lies in the cone
    #: of the enumerated directions plus the declared limit directions;
    #: certificates that reason about all far points gate on it
    direction_stable_norm_sq: Fraction | None = None

    def label(self) -> str:
        return self.family if self.kind == "family" else "finite"


@dataclass(frozen=True)
class TruncatedGenerator:
    """All generator points with norm at most ``radius``, origin included.

    ``complete`` is True when the enumeration guarantees no omitted
    point within the radius (always true for the built-in families and
    finite lists; for approximated families it refers to the
    approximated point set).
    """

    points: tuple[Vec, ...]
    radius: Fraction
    complete: bool
    dimension: int = 2

    def __post_init__(self):
        rsq = self.radius * self.radius
        origin = tuple([Fraction(0)] * self.dimension)
        seen = set()
        found_origin = False
        for p in self.points:
            if len(p) != self.dimension:
                raise InputError("truncation mixes dimensions")
            if p in seen:
                raise InputError(f"duplicate generator point {p}")
            seen.add(p)
            if norm_sq(p) > rsq:
                raise InputError(f"point {p} exceeds the window radius")
            if p == origin:
                found_origin = True
        if not found_origin:
            raise InputError("truncation must contain the origin")

    def nonzero_points(self) -> tuple[Vec, ...]:
        return tuple(p for p in self.points if not is_zero_vec(p))


def finite_generator(points: Iterable[Sequence], dimension: int = 2,
                     limit_directions: Sequence[Direction] = ()) -> GeneratorSpec:
    """Build a finite spec; the origin is added when absent."""
    pts = []
    seen = set()
    for p in points:
        v = as_vec(p)
        if len(v) != dimension:
            raise InputError("finite generator mixes dimensions")
        if v not in seen:
            seen.add(v)
            pts.append(v)
    origin = tuple([Fraction(0)] * dimension)
    if origin not in seen:
        pts.insert(0, origin)
    pts.sort()
    return GeneratorSpec(kind="finite", dimension=dimension,
                         points=tuple(pts),
                         limit_directions=tuple(limit_directions))


def builtin_family(family_id: str,
                   approx_precision: Fraction | None = None) -> GeneratorSpec:
    """Fully populated spec for one of the built-in families."""
    if family_id not in FAMILY_IDS:
        raise InputError(f"unknown family {family_id!r}; "
                         f"known: {', '.join(FAMILY_IDS)}")
    prec = approx_precision if approx_precision is not None else DEFAULT_PRECISION
    if prec <= 0:
        raise InputError("approx_precision must be positive")
    d = lambda *c: canonical_direction(c)
    if family_id == "lattice_line":
        # already a half plane once (-1, 0) is enumerated
        return GeneratorSpec(kind="family", family=family_id, discrete=True,
                             limit_directions=(d(0, 1), d(0, -1)),
                             direction_stable_norm_sq=Fraction(1))
    if family_id == "hyperbola":
        # the declared limits span the first quadrant from the start
        return GeneratorSpec(kind="family", family=family_id, discrete=True,
                             limit_directions=(d(1, 0), d(0, 1)),
                             approx_precision=prec, approximated=True,
                             direction_stable_norm_sq=Fraction(1, 2))
    if family_id == "parabola":
        # the steepest ray through a family point needs (2, 4) enumerated
        return GeneratorSpec(kind="family", family=family_id, discrete=True,
                             limit_directions=(d(0, 1),),
                             direction_stable_norm_sq=Fraction(20))
    if family_id == "klappe":
        # the points close in on (0, 2), so the family is not discrete
        return GeneratorSpec(kind="family", family=family_id, discrete=False,
                             limit_directions=(d(0, 1),),
                             accumulation_points=(as_vec((0, 2)),),
                             approx_precision=prec, approximated=True)
    if family_id == "circle_rational":
        return GeneratorSpec(kind="family", family=family_id, discrete=False)
    if family_id == "exp_line":
        return GeneratorSpec(kind="family", family=family_id, discrete=False,
                             limit_directions=(d(0, 1),),
                             accumulation_points=(as_vec((0, 1)),),
                             approx_precision=prec, approximated=True)
    if family_id == "strip_lattice":
        # full plane once the pairs for n = 1, 2 are enumerated
        return GeneratorSpec(kind="family", family=family_id, discrete=True,
                             limit_directions=(d(1, 0), d(-1, 0)),
                             direction_stable_norm_sq=Fraction(17, 4))
    raise InputError(f"unknown family {family_id!r}")


def limit_directions(spec: GeneratorSpec) -> tuple[Direction, ...]:
    """The declared accumulation directions (empty for finite specs)."""
    if spec.kind == "finite":
        return ()
    return spec.limit_directions


# ---------------------------------------------------------------------------
# Family enumerators
# ---------------------------------------------------------------------------

def _enum_lattice_line(radius: Fraction) -> list[Vec]:
    rsq = radius * radius
    pts = []
    z = 0
    while 1 + z * z <= rsq:
        pts.append(as_vec((-1, z)))
        if z > 0:
            pts.append(as_vec((-1, -z)))
        z += 1
    return pts


def _enum_parabola(radius: Fraction) -> list[Vec]:
    pts = []
    k = -int(2 * radius) - 1
    stop = int(2 * radius) + 1
    rsq = radius * radius
    while k <= stop:
        t = Fraction(k, 2)
        p = (t, (t + 2) ** 2 / 4)
        if norm_sq(p) <= rsq:
            pts.append(as_vec(p))
        k += 1
    return pts


def _enum_strip_lattice(radius: Fraction) -> list[Vec]:
    rsq = radius * radius
    pts = []
    n = 1
    while True:
        p = (Fraction(n), 1 - Fraction(1, n))
        if norm_sq(p) > rsq:
            break
        pts.append(as_vec(p))
        pts.append(as_vec((-p[0], -p[1])))
        n += 1
    return pts


def _dyadic_bits(prec: Fraction) -> int:
    # grid fine enough that rounding stays within prec / 2
    need = (2 * prec.denominator + prec.numerator - 1) // prec.numerator
    return max(8, need.bit_length())


def _enum_hyperbola(radius: Fraction, prec: Fraction) -> list[Vec]:
    # points (e^(k/2), e^(-k/2)) / 2 for integer k, dyadic approximations
    rsq = radius * radius
    bits = _dyadic_bits(prec)
    err = prec / 4
    pts = []
    k = 0
    while True:
        a = approx.exp_power(Fraction(1, 2), k, err)
        b = approx.exp_power(Fraction(-1, 2), k, err)
        grew = False
        for x, y in ((a, b), (b, a)) if k else ((a, b),):
            p = (approx.round_dyadic(x / 2, bits),
                 approx.round_dyadic(y / 2, bits))
            if norm_sq(p) <= rsq:
                pts.append(as_vec(p))
                grew = True
        if not grew:
            break
        k += 1
    return pts


def _enum_klappe(radius: Fraction, prec: Fraction) -> list[Vec]:
    """Points on the unit circle around (0, 1), approaching (0, 2).

    The true points are 2 cos(a) (-sin a, cos a) with a = (pi/4) e^-t.
    They are approximated by exact rational points on the same circle
    through the tangent-half-angle parametrization s ~ tan(a):

        (x, y) = (-2s, 2) / (1 + s^2)

    which keeps the whole reciprocal on the line y = 1/2 exactly, as it
    is for the true family.  The per-point rounding grid refines with t
    so distinct parameters stay distinct and s stays positive.
    """
    count = int(radius)
    base_bits = _dyadic_bits(prec)
    pts = []
    pi = approx.pi_rational(Fraction(1, 1 << (base_bits + 2 * count + 16)))
    rsq = radius * radius
    for t in range(1, count + 1):
        bits = base_bits + 2 * t
        err = Fraction(1, 1 << (bits + 4))
        alpha = pi / 4 * approx.exp_power(Fraction(-1), t, err)
        s = approx.round_dyadic(approx.tan_rational(alpha, err), bits)
        if s <= 0:
            raise InputError("klappe rounding grid too coarse")
        den = 1 + s * s
        p = as_vec((-2 * s / den, 2 / den))
        if norm_sq(p) <= rsq:
            pts.append(p)
    return pts


def _enum_circle(radius: Fraction) -> list[Vec]:
    # grid density doubles with the window radius; points are exact
    if radius < 1:
        return []
    m = 1
    while 2 * m <= radius:
        m *= 2
    pts: list[Vec] = []
    seen = set()
    for j in range(-m, m + 1):
        t = Fraction(j, m)
        den = 1 + t * t
        x = (1 - t * t) / den
        y = 2 * t / den
        for p in ((x, y), (-x, y)):
            v = as_vec(p)
            if v not in seen:
                seen.add(v)
                pts.append(v)
    return pts


def _enum_exp_line(radius: Fraction, prec: Fraction) -> list[Vec]:
    if radius < 1:
        return []
    bits = _dyadic_bits(prec)
    err = prec / 4
    pts = [as_vec((0, 1))]
    rsq = radius * radius
    for x in range(1, int(radius) + 1):
        e = approx.round_dyadic(
            approx.exp_power(Fraction(-1), x, err), bits + 2 * x)
        if e <= 0:
            raise InputError("exp_line rounding grid too coarse")
        p = as_vec((e, 1))
        if norm_sq(p) <= rsq:
            pts.append(p)
    return pts


def enumerate_truncation(spec: GeneratorSpec, radius) -> TruncatedGenerator:
    """All points of the generator with norm at most ``radius``.

    The result always contains the origin; points are sorted for
    deterministic downstream output.
    """
    r = scalar(radius)
    if r <= 0:
        raise InputError("truncation radius must be positive")
    origin = tuple([Fraction(0)] * spec.dimension)
    if spec.kind == "finite":
        rsq = r * r
        if origin not in spec.points:
            raise InputError("finite generator does not contain the origin")
        pts = [p for p in spec.points if norm_sq(p) <= rsq]
        return TruncatedGenerator(points=tuple(sorted(pts)), radius=r,
                                  complete=True, dimension=spec.dimension)
    prec = spec.approx_precision or DEFAULT_PRECISION
    if spec.family == "lattice_line":
        pts = _enum_lattice_line(r)
    elif spec.family == "parabola":
        pts = _enum_parabola(r)
    elif spec.family == "strip_lattice":
        pts = _enum_strip_lattice(r)
    elif spec.family == "hyperbola":
        pts = _enum_hyperbola(r, prec)
    elif spec.family == "klappe":
        pts = _enum_klappe(r, prec)
    elif spec.family == "circle_rational":
        pts = _enum_circle(r)
    elif spec.family == "exp_line":
        pts = _enum_exp_line(r, prec)
    else:
        raise InputError(f"unknown family {spec.family!r}")
    unique = sorted(set(pts) | {origin})
    return TruncatedGenerator(points=tuple(unique), radius=r, complete=True,
                              dimension=spec.dimension)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------

def validate_spec(spec: GeneratorSpec,
                  angular_cos_sq: Fraction = Fraction(1, 2),
                  sample_radii: tuple = (16, 32)) -> list[str]:
    """Diagnostics for a spec: origin presence, discreteness consistency,
    and an empirical check that large points head toward a declared
    limit direction (within the configurable angular gap, compared via
    squared cosines so everything stays rational)."""
    notes: list[str] = []
    origin = tuple([Fraction(0)] * spec.dimension)
    if spec.kind == "finite" and origin not in spec.points:
        notes.append("origin absent")
    if spec.discrete and spec.accumulation_points:
        notes.append("inconsistent discreteness: discrete spec declares "
                     "accumulation points")
    if spec.kind == "finite":
        return notes

    r_lo, r_hi = (scalar(r) for r in sample_radii)
    try:
        inner = enumerate_truncation(spec, r_lo)
        outer = enumerate_truncation(spec, r_hi)
    except InputError as exc:
        notes.append(f"enumeration failed: {exc}")
        return notes
    inner_set = set(inner.points)
    sample = [p for p in outer.points if p not in inner_set]
    if not sample:
        return notes
    if not spec.limit_directions:
        notes.append("points beyond the sample radius but no declared "
                     "limit directions")
        return notes
    for p in sample:
        pd = canonical_direction(p)
        near = False
        for ld in spec.limit_directions:
            d = pd.dot(ld.as_vec())
            if d > 0 and d * d >= angular_cos_sq * norm_sq(pd.as_vec()) * \
                    norm_sq(ld.as_vec()):
                near = True
                break
        if not near:
            notes.append(f"direction of {p} is not near any declared "
                         "limit direction")
    return notes


# ---------------------------------------------------------------------------
# Spec files (JSON, rationals as "num/den" strings)
# ---------------------------------------------------------------------------

def _vec_to_json(v: Sequence[Fraction]) -> list[str]:
    return [str(Fraction(x)) for x in v]


def spec_to_json_dict(spec: GeneratorSpec) -> dict:
    doc: dict = {"dimension": spec.dimension, "kind": spec.kind}
    if spec.kind == "finite":
        doc["points"] = [_vec_to_json(p) for p in spec.points]
    else:
        doc["family"] = spec.family
        if spec.params:
            doc["params"] = {k: str(v) for k, v in spec.params}
    doc["discrete"] = spec.discrete
    doc["limit_directions"] = [_vec_to_json(d.as_vec())
                               for d in spec.limit_directions]
    doc["accumulation_points"] = [_vec_to_json(p)
                                  for p in spec.accumulation_points]
    if spec.approx_precision is not None:
        doc["approx_precision"] = str(spec.approx_precision)
    if spec.direction_stable_norm_sq is not None:
        doc["direction_stable_norm_sq"] = str(spec.direction_stable_norm_sq)
    return doc


def spec_from_json_dict(doc: dict) -> GeneratorSpec:
    try:
        kind = doc["kind"]
        dimension = int(doc.get("dimension", 2))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed spec document: {exc}") from exc
    if kind not in ("finite", "family"):
        raise InputError(f"kind must be 'finite' or 'family', got {kind!r}")
    if dimension < 1:
        raise InputError("dimension must be positive")

    def parse_vec(raw) -> Vec:
        v = as_vec(raw)
        if len(v) != dimension:
            raise InputError(f"point {raw!r} has wrong dimension")
        return v

    limit_dirs = tuple(canonical_direction(parse_vec(d))
                       for d in doc.get("limit_directions", []))
    acc_points = tuple(parse_vec(p)
                       for p in doc.get("accumulation_points", []))
    prec_raw = doc.get("approx_precision")
    prec = scalar(prec_raw) if prec_raw is not None else None
    stable_raw = doc.get("direction_stable_norm_sq")
    stable = scalar(stable_raw) if stable_raw is not None else None

    if kind == "finite":
        pts = tuple(sorted(parse_vec(p) for p in doc.get("points", [])))
        return GeneratorSpec(kind="finite", dimension=dimension, points=pts,
                             discrete=bool(doc.get("discrete", True)),
                             limit_directions=limit_dirs,
                             accumulation_points=acc_points,
                             approx_precision=prec,
                             direction_stable_norm_sq=stable)
    family = doc.get("family")
    if family not in FAMILY_IDS:
        raise InputError(f"unknown family {family!r}")
    base = builtin_family(family, approx_precision=prec)
    params = tuple(sorted((str(k), scalar(v))
                          for k, v in (doc.get("params") or {}).items()))
    overrides = {
        "params": params,
        "discrete": bool(doc.get("discrete", base.discrete)),
        "limit_directions": limit_dirs or base.limit_directions,
        "accumulation_points": acc_points or base.accumulation_points,
        "direction_stable_norm_sq": (stable if stable is not None
                                     else base.direction_stable_norm_sq),
    }
    return GeneratorSpec(kind="family", dimension=dimension, family=family,
                         approx_precision=base.approx_precision,
                         approximated=base.approximated, **overrides)


def load_spec(path) -> GeneratorSpec:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read spec file: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(
            f"spec file {path}: parse error at line {exc.lineno}, "
            f"column {exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise InputError("spec file must hold a JSON object")
    return spec_from_json_dict(doc)


def save_spec(spec: GeneratorSpec, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(spec_to_json_dict(spec), fh, indent=2, sort_keys=False)
        fh.write("\n")
