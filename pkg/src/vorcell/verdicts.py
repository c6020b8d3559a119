"""Verdicts and machine-checkable certificates.

A Certified verdict carries a structured witness that an independent
checker re-verifies from scratch; an Evidence verdict only carries the
per-radius trend trail.  Serialization keeps every rational exact
(``"num/den"`` strings).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .dircone import Cone2D, cone_from_json_dict, cone_to_json_dict
from .kernel import (
    Direction,
    Halfspace,
    InputError,
    Vec,
    as_vec,
    scalar,
)

CERTIFIED = "certified"
EVIDENCE = "evidence"

POLYHEDRAL = "polyhedral"
NON_POLYHEDRAL = "non_polyhedral"
BOUNDED = "bounded"
UNBOUNDED = "unbounded"
INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class SpanningCertificate:
    """Finite generator subset whose directions positively span the plane,
    so the cell is bounded no matter what lies beyond the window."""

    radius: Fraction
    points: tuple[Vec, ...]


@dataclass(frozen=True)
class SeparatorCertificate:
    """A half space through the origin containing every enumerated point
    and every declared limit direction; its polar ray recedes inside the
    cell, so the cell is unbounded."""

    normal: Direction
    radius: Fraction


@dataclass(frozen=True)
class StabilizationCertificate:
    """Window radius past which every further reciprocal point provably
    falls inside the current reciprocal hull: the closed direction
    sector capped at the inverse radius fits inside the hull facets."""

    radius: Fraction
    hull_facets: tuple[Halfspace, ...]
    sector: Cone2D


@dataclass(frozen=True)
class UnattainedLimitCertificate:
    """A declared limit direction on the boundary of the direction cone
    with no generator point on its ray: the cone is not closed, hence
    not finitely generated, and the cell of a discrete generator cannot
    be a polyhedron."""

    direction: Direction
    radius: Fraction


@dataclass(frozen=True)
class TrailRow:
    """One per-radius line of an analysis trail; unused fields stay None."""

    radius: Fraction
    point_count: int
    facet_count: int | None = None
    extreme_count: int | None = None
    cone_kind: str | None = None
    spanning: bool | None = None
    certificate_fired: bool | None = None


@dataclass(frozen=True)
class Verdict:
    status: str
    claim: str
    certificate: object | None = None
    trail: tuple[TrailRow, ...] = ()
    notes: tuple[str, ...] = ()

    def is_certified(self) -> bool:
        return self.status == CERTIFIED


# ---------------------------------------------------------------------------
# JSON
# ---------------------------------------------------------------------------

def _vec_json(v) -> list[str]:
    return [str(Fraction(x)) for x in v]


def certificate_to_json_dict(cert) -> dict:
    if isinstance(cert, SpanningCertificate):
        return {"type": "spanning", "radius": str(cert.radius),
                "points": [_vec_json(p) for p in cert.points]}
    if isinstance(cert, SeparatorCertificate):
        return {"type": "separator", "radius": str(cert.radius),
                "normal": list(cert.normal.coords)}
    if isinstance(cert, StabilizationCertificate):
        return {"type": "stabilization", "radius": str(cert.radius),
                "hull_facets": [{"normal": _vec_json(f.normal),
                                 "offset": str(f.offset)}
                                for f in cert.hull_facets],
                "sector": cone_to_json_dict(cert.sector)}
    if isinstance(cert, UnattainedLimitCertificate):
        return {"type": "unattained_limit", "radius": str(cert.radius),
                "direction": list(cert.direction.coords)}
    raise InputError(f"unknown certificate {type(cert).__name__}")


def certificate_from_json_dict(doc: dict):
    try:
        kind = doc["type"]
        radius = scalar(doc["radius"])
        if kind == "spanning":
            return SpanningCertificate(
                radius, tuple(as_vec(p) for p in doc["points"]))
        if kind == "separator":
            return SeparatorCertificate(
                Direction(tuple(int(c) for c in doc["normal"])), radius)
        if kind == "stabilization":
            facets = tuple(
                Halfspace(as_vec(f["normal"]), scalar(f["offset"]))
                for f in doc["hull_facets"])
            return StabilizationCertificate(
                radius, facets, cone_from_json_dict(doc["sector"]))
        if kind == "unattained_limit":
            return UnattainedLimitCertificate(
                Direction(tuple(int(c) for c in doc["direction"])), radius)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed certificate document: {exc}") from exc
    raise InputError(f"unknown certificate type {doc.get('type')!r}")


def trail_row_to_json_dict(row: TrailRow) -> dict:
    doc: dict = {"radius": str(row.radius), "point_count": row.point_count}
    for name in ("facet_count", "extreme_count", "cone_kind", "spanning",
                 "certificate_fired"):
        value = getattr(row, name)
        if value is not None:
            doc[name] = value
    return doc


def verdict_to_json_dict(verdict: Verdict) -> dict:
    doc: dict = {"status": verdict.status, "claim": verdict.claim}
    if verdict.certificate is not None:
        doc["certificate"] = certificate_to_json_dict(verdict.certificate)
    doc["trail"] = [trail_row_to_json_dict(r) for r in verdict.trail]
    if verdict.notes:
        doc["notes"] = list(verdict.notes)
    return doc
