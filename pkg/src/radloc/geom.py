"""Planar primitives: circles, radical lines, radical centers and residual scoring.

Every function here is pure and works on immutable values. Distances are in
meters; the "power" of a point ``p`` with respect to a circle is
``|p - center|**2 - radius**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DegenerateGeometryError, NoIntersectionError, PreconditionError

# Centers closer than this are treated as coincident.
COINCIDENT_TOL = 1e-9
# |det| <= COLLINEAR_RTOL * scale**2 counts as collinear centers.
COLLINEAR_RTOL = 1e-9


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite point coordinates ({self.x}, {self.y})")

    def __iter__(self):
        yield self.x
        yield self.y


@dataclass(frozen=True, slots=True)
class Circle:
    center: Point
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"circle radius must be positive and finite, got {self.radius}")


@dataclass(frozen=True, slots=True)
class RadicalFoot:
    """Where the radical line of two circles crosses their center line.

    ``d_o1`` is signed, measured from the first center towards the second.
    ``half_chord_sq`` is the squared half-length of the common chord; a value
    ``<= 0`` means the circles are disjoint, nested or tangent.
    """

    foot: Point
    d_o1: float
    half_chord_sq: float


@dataclass(frozen=True, slots=True)
class RadicalSegment:
    """Common chord of two intersecting circles, endpoints ``a`` and ``b``."""

    a: Point
    b: Point


def distance(p: Point, q: Point) -> float:
    return math.hypot(q.x - p.x, q.y - p.y)


def max_separation_pair(circles: Sequence[Circle]) -> tuple[int, int]:
    """Indices ``(i, j)``, ``i < j``, of the two circles whose centers are farthest apart.

    Ties go to the lexicographically smallest ``(i, j)``.
    """
    n = len(circles)
    if n < 2:
        raise PreconditionError(f"need at least 2 circles, got {n}")
    best = (0, 1)
    best_d2 = -1.0
    for i in range(n - 1):
        ci = circles[i].center
        for j in range(i + 1, n):
            cj = circles[j].center
            dx = cj.x - ci.x
            dy = cj.y - ci.y
            d2 = dx * dx + dy * dy
            if d2 > best_d2:
                best_d2 = d2
                best = (i, j)
    return best


def radical_foot(c1: Circle, c2: Circle) -> RadicalFoot:
    """Foot of the radical line of ``c1`` and ``c2`` on the line joining their centers.

    Raises :class:`DegenerateGeometryError` for coincident centers. A
    non-positive ``half_chord_sq`` is returned as data, not raised.
    """
    dx = c2.center.x - c1.center.x
    dy = c2.center.y - c1.center.y
    d = math.hypot(dx, dy)
    if d <= COINCIDENT_TOL:
        raise DegenerateGeometryError("coincident centers: radical line undefined")
    r1_sq = c1.radius * c1.radius
    d_o1 = (r1_sq - c2.radius * c2.radius + d * d) / (2.0 * d)
    t = d_o1 / d
    foot = Point(c1.center.x + t * dx, c1.center.y + t * dy)
    return RadicalFoot(foot=foot, d_o1=d_o1, half_chord_sq=r1_sq - d_o1 * d_o1)


def radical_segment(c1: Circle, c2: Circle) -> RadicalSegment:
    """Endpoints of the common chord of two properly intersecting circles.

    ``a`` is the foot offset by the half chord along the center-line direction
    rotated +90 degrees, ``b`` the opposite side. Using the unit normal keeps
    the construction defined when the chord passes through the first center.
    """
    rf = radical_foot(c1, c2)
    if rf.half_chord_sq <= 0.0:
        raise NoIntersectionError(
            f"circles do not properly intersect (half_chord_sq={rf.half_chord_sq:g})"
        )
    m = math.sqrt(rf.half_chord_sq)
    dx = c2.center.x - c1.center.x
    dy = c2.center.y - c1.center.y
    d = math.hypot(dx, dy)
    nx, ny = -dy / d, dx / d
    o = rf.foot
    return RadicalSegment(
        a=Point(o.x + m * nx, o.y + m * ny),
        b=Point(o.x - m * nx, o.y - m * ny),
    )


def radical_center(c1: Circle, c2: Circle, c3: Circle) -> Optional[Point]:
    """Common point of the three radical lines, or ``None`` if the centers are collinear.

    The linear system is solved in coordinates relative to ``c1.center``,
    which is the same system with ``k_1 = 0`` and better conditioned.
    """
    ox, oy = c1.center.x, c1.center.y
    x2, y2 = c2.center.x - ox, c2.center.y - oy
    x3, y3 = c3.center.x - ox, c3.center.y - oy
    det = x2 * y3 - x3 * y2
    scale_sq = max(x2 * x2 + y2 * y2, x3 * x3 + y3 * y3, (x3 - x2) ** 2 + (y3 - y2) ** 2)
    if abs(det) <= COLLINEAR_RTOL * scale_sq:
        return None
    r1_sq = c1.radius * c1.radius
    b1 = 0.5 * (x2 * x2 + y2 * y2 + r1_sq - c2.radius * c2.radius)
    b2 = 0.5 * (x3 * x3 + y3 * y3 + r1_sq - c3.radius * c3.radius)
    ix = (b1 * y3 - b2 * y2) / det
    iy = (x2 * b2 - x3 * b1) / det
    return Point(ox + ix, oy + iy)


def sample_segment(seg: RadicalSegment, count: int) -> list[Point]:
    """``count`` evenly spaced interior points of ``seg``, excluding both endpoints."""
    if count < 1:
        raise PreconditionError(f"number of test points must be >= 1, got {count}")
    ax, ay = seg.a.x, seg.a.y
    dx = seg.b.x - ax
    dy = seg.b.y - ay
    denom = count + 1
    return [Point(ax + l * dx / denom, ay + l * dy / denom) for l in range(1, count + 1)]


def residual(p: Point, circles: Sequence[Circle]) -> float:
    """Total distance by which ``p`` lies outside the circles; 0 inside all of them."""
    if not circles:
        raise PreconditionError("residual needs at least one circle")
    total = 0.0
    for c in circles:
        excess = math.hypot(p.x - c.center.x, p.y - c.center.y) - c.radius
        if excess > 0.0:
            total += excess
    return total
