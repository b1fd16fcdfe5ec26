"""Exact rational plane geometry: points, directions, labelled configurations.

Everything here is computed over `fractions.Fraction`; there are no floats and
no epsilons.  All downstream combinatorics (hulls, triangulations, path
convexity, Stokes data) reduce to the sign predicates in this module, so the
predicates are kept deliberately small and auditable.

Conventions used throughout the package:

- the plane is oriented the usual way (x right, y up); `orient(p, q, r) = +1`
  means r lies strictly to the left of the directed line p -> q;
- `rho` is rotation by +90 degrees: (dx, dy) -> (-dy, dx);
- convex hulls are returned counterclockwise, starting from the
  lexicographically smallest point (smallest x, then smallest y).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, NamedTuple


class DegenerateConfig(ValueError):
    """A configuration violates the genericity an operation requires."""


class GeometryError(ValueError):
    pass


def parse_rational(text) -> Fraction:
    """Parse "7", "-3/4" (or an int) into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    s = str(text).strip()
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise GeometryError(f"not a rational number: {text!r}") from exc


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Point(NamedTuple):
    x: Fraction
    y: Fraction


Vec = Tuple[Fraction, Fraction]


def pt(x, y) -> Point:
    return Point(parse_rational(x), parse_rational(y))


def vsub(p: Point, q: Point) -> Vec:
    # vector from q to p
    return (p[0] - q[0], p[1] - q[1])


def cross(u: Vec, v: Vec) -> Fraction:
    return u[0] * v[1] - u[1] * v[0]


def dot(u: Vec, v: Vec) -> Fraction:
    return u[0] * v[0] + u[1] * v[1]


def sign(q) -> int:
    return (q > 0) - (q < 0)


def orient(p: Point, q: Point, r: Point) -> int:
    """Orientation of the triple: +1 counterclockwise, -1 clockwise, 0 collinear."""
    return sign(cross(vsub(q, p), vsub(r, p)))


def rho(zeta: Vec) -> Vec:
    """Rotate a direction by +90 degrees: (dx, dy) -> (-dy, dx)."""
    dx, dy = zeta
    if dx == 0 and dy == 0:
        raise GeometryError("zero vector has no direction")
    return (-dy, dx)


@dataclass(frozen=True)
class Direction:
    """A nonzero direction, compared up to positive rescaling.

    Stored as the primitive integer vector on the same ray, so two Directions
    are equal iff they are positive multiples of each other.
    """

    dx: int
    dy: int

    @staticmethod
    def of(dx, dy) -> "Direction":
        fx, fy = parse_rational(dx), parse_rational(dy)
        if fx == 0 and fy == 0:
            raise GeometryError("zero vector has no direction")
        m = fx.denominator * fy.denominator
        ix, iy = int(fx * m), int(fy * m)
        g = gcd(abs(ix), abs(iy))
        return Direction(ix // g, iy // g)

    @staticmethod
    def between(p: Point, q: Point) -> "Direction":
        return Direction.of(q[0] - p[0], q[1] - p[1])

    def vec(self) -> Vec:
        return (Fraction(self.dx), Fraction(self.dy))

    def opposite(self) -> "Direction":
        return Direction(-self.dx, -self.dy)

    def __str__(self) -> str:
        return f"{self.dx},{self.dy}"


def angle_halfplane(v: Vec) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2*pi), measured from the +x axis
    if v[1] > 0 or (v[1] == 0 and v[0] > 0):
        return 0
    return 1


def angle_less(u: Vec, v: Vec) -> bool:
    """Strict counterclockwise angular order from the +x axis; parallel ties break equal."""
    hu, hv = angle_halfplane(u), angle_halfplane(v)
    if hu != hv:
        return hu < hv
    return cross(u, v) > 0


def angle_sorted(vectors: Iterable) -> list:
    """Sort items by the angle of key(item); items must be (key_vec, payload) pairs."""
    import functools

    def cmp(a, b):
        if angle_less(a[0], b[0]):
            return -1
        if angle_less(b[0], a[0]):
            return 1
        return 0

    return sorted(vectors, key=functools.cmp_to_key(cmp))


@dataclass
class PointConfig:
    """An ordered, labelled configuration of distinct rational points."""

    labels: List[str]
    coords: Dict[str, Point] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise GeometryError("duplicate labels in configuration")
        missing = [l for l in self.labels if l not in self.coords]
        if missing:
            raise GeometryError(f"labels without coordinates: {missing}")
        pts = [self.coords[l] for l in self.labels]
        if len(set(pts)) != len(pts):
            raise GeometryError("coincident points in configuration")

    @staticmethod
    def of(items: Sequence[Tuple[str, object, object]]) -> "PointConfig":
        labels = [it[0] for it in items]
        coords = {it[0]: pt(it[1], it[2]) for it in items}
        return PointConfig(labels, coords)

    def point(self, label: str) -> Point:
        return self.coords[label]

    def __len__(self) -> int:
        return len(self.labels)

    def subconfig(self, labels: Iterable[str]) -> "PointConfig":
        keep = set(labels)
        unknown = keep - set(self.labels)
        if unknown:
            raise GeometryError(f"unknown labels: {sorted(unknown)}")
        kept = [l for l in self.labels if l in keep]
        return PointConfig(kept, {l: self.coords[l] for l in kept})

    def with_point(self, label: str, p: Point, front: bool = False) -> "PointConfig":
        labels = [label] + self.labels if front else self.labels + [label]
        coords = dict(self.coords)
        coords[label] = p
        return PointConfig(labels, coords)

    # -- JSON round trip ---------------------------------------------------

    def to_obj(self) -> dict:
        return {
            "points": [
                {"label": l, "x": format_rational(self.coords[l][0]),
                 "y": format_rational(self.coords[l][1])}
                for l in self.labels
            ]
        }

    @staticmethod
    def from_obj(obj: dict) -> "PointConfig":
        try:
            items = [(e["label"], e["x"], e["y"]) for e in obj["points"]]
        except (KeyError, TypeError) as exc:
            raise GeometryError(f"malformed point configuration: {exc}") from exc
        return PointConfig.of(items)

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), sort_keys=True, indent=2)

    @staticmethod
    def from_json(text: str) -> "PointConfig":
        return PointConfig.from_obj(json.loads(text))


def convex_hull(config: PointConfig) -> List[str]:
    """Labels of the convex hull, counterclockwise from the lexicographically
    smallest point.  A fully collinear configuration yields its two extreme
    points; a single point yields itself."""
    items = sorted(((config.coords[l], l) for l in config.labels))
    if len(items) == 1:
        return [items[0][1]]
    if len(items) == 2:
        return [items[0][1], items[1][1]]

    def build(seq):
        out: List[Tuple[Point, str]] = []
        for item in seq:
            while len(out) >= 2 and orient(out[-2][0], out[-1][0], item[0]) <= 0:
                out.pop()
            out.append(item)
        return out

    lower = build(items)
    upper = build(reversed(items))
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 2:  # fully collinear: keep the two extremes
        hull = [items[0], items[-1]]
    return [l for (_, l) in hull]


def hull_points(points: Sequence[Point]) -> List[Point]:
    """Convex hull of bare points (ccw, degenerate cases as in convex_hull)."""
    cfg = PointConfig([f"p{i}" for i in range(len(points))],
                      {f"p{i}": p for i, p in enumerate(points)})
    return [cfg.coords[l] for l in convex_hull(cfg)]


def point_in_convex_polygon(p: Point, poly: Sequence[Point]) -> int:
    """2 if strictly inside the ccw polygon, 1 on the boundary, 0 outside."""
    n = len(poly)
    if n == 1:
        return 1 if p == poly[0] else 0
    if n == 2:
        return 1 if on_segment(p, poly[0], poly[1]) else 0
    best = 2
    for i in range(n):
        o = orient(poly[i], poly[(i + 1) % n], p)
        if o < 0:
            return 0
        if o == 0:
            best = 1
    return best


def on_segment(p: Point, a: Point, b: Point, strict: bool = False) -> bool:
    """Whether p lies on segment [a, b] (strictly inside if strict)."""
    if orient(a, b, p) != 0:
        return False
    lo, hi = min(a, b), max(a, b)
    if strict:
        return lo < p < hi
    return lo <= p <= hi


def segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Whether open segments (a,b) and (c,d) share an interior point.

    Shared endpoints do not count; collinear overlaps do.
    """
    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 != o2 and o3 != o4 and 0 not in (o1, o2, o3, o4):
        return True
    # collinear pieces: overlap of more than a point counts, touching does not
    if o1 == o2 == 0:
        lo1, hi1 = min(a, b), max(a, b)
        lo2, hi2 = min(c, d), max(c, d)
        return max(lo1, lo2) < min(hi1, hi2)
    # an endpoint strictly inside the other segment
    for p, (u, v) in ((c, (a, b)), (d, (a, b)), (a, (c, d)), (b, (c, d))):
        if on_segment(p, u, v, strict=True):
            return True
    return False


def polygon_area2(poly: Sequence[Point]) -> Fraction:
    """Twice the signed area of a polygon (positive if counterclockwise)."""
    s = Fraction(0)
    n = len(poly)
    for i in range(n):
        p, q = poly[i], poly[(i + 1) % n]
        s += p[0] * q[1] - q[0] * p[1]
    return s


def normvol(poly: Sequence[Point]) -> Fraction:
    """Normalized volume of a convex polygon: twice its area (1 per unit triangle)."""
    return abs(polygon_area2(poly))


@dataclass
class GenericityReport:
    ok: bool
    violations: List[tuple]

    def __bool__(self) -> bool:
        return self.ok


def check_genericity(config: PointConfig, zeta: Optional[Vec] = None) -> GenericityReport:
    """Check the standing genericity assumptions.

    Always: no three points collinear.  With a direction zeta: the projections
    <w, rho(zeta)> are pairwise distinct, equivalently no difference w_j - w_i
    is parallel to zeta.
    """
    labels = config.labels
    viol: List[tuple] = []
    n = len(labels)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                a, b, c = labels[i], labels[j], labels[k]
                if orient(config.coords[a], config.coords[b], config.coords[c]) == 0:
                    viol.append(("collinear", a, b, c))
    if zeta is not None:
        r = rho(zeta)
        for i in range(n):
            for j in range(i + 1, n):
                a, b = labels[i], labels[j]
                d = vsub(config.coords[b], config.coords[a])
                if dot(d, r) == 0:  # difference parallel to zeta <=> projection tie
                    viol.append(("zeta_parallel_difference", a, b))
    return GenericityReport(ok=not viol, violations=viol)
