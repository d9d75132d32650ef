"""Centroid (CA) and radical-line (RLA) position estimators.

An anchor set is a sequence of :class:`~radloc.geom.Circle`, one per
in-contact anchor, carrying the anchor position and the range the estimator
assumes for it. Order matters: it decides tie-breaks and which chord endpoint comes first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import DegenerateGeometryError, PreconditionError
from .geom import (
    Circle,
    Point,
    max_separation_pair,
    radical_center,
    radical_foot,
    radical_segment,
    residual,
    sample_segment,
)

DEFAULT_TEST_POINTS = 4

AnchorSet = Sequence[Circle]


class Method(enum.Enum):
    CA = "CA"
    RLA = "RLA"


class Branch(enum.Enum):
    CENTROID = "centroid"
    SINGLE_ANCHOR = "single_anchor"
    TWO_CIRCLE_FOOT = "two_circle_foot"
    RADICAL_CENTER = "radical_center"
    TEST_POINT = "test_point"
    CENTROID_FALLBACK = "centroid_fallback"
    PAIR_MIDPOINT_FALLBACK = "pair_midpoint_fallback"


@dataclass(frozen=True)
class Estimate:
    """A position estimate and how it was obtained.

    ``score`` is the residual of ``point`` against the full anchor set.
    ``test_point`` is the 1-based index of the chosen chord sample when
    ``branch`` is ``Branch.TEST_POINT`` and ``None`` otherwise.
    """

    point: Point
    method: Method
    branch: Branch
    score: float
    test_point: Optional[int] = None


def _check_nonempty(anchors: AnchorSet) -> None:
    if len(anchors) == 0:
        raise PreconditionError("anchor set must not be empty")


def _centroid(anchors: AnchorSet) -> Point:
    n = len(anchors)
    return Point(
        sum(c.center.x for c in anchors) / n,
        sum(c.center.y for c in anchors) / n,
    )


def _midpoint(p: Point, q: Point) -> Point:
    return Point((p.x + q.x) / 2.0, (p.y + q.y) / 2.0)


def centroid_estimate(anchors: AnchorSet) -> Estimate:
    """Arithmetic mean of the anchor positions (radii are ignored)."""
    _check_nonempty(anchors)
    point = _centroid(anchors)
    return Estimate(point, Method.CA, Branch.CENTROID, residual(point, anchors))


def _rla(anchors: AnchorSet, test_points: int) -> tuple[Point, Branch, Optional[int], Optional[float]]:
    n = len(anchors)
    if n == 1:
        return anchors[0].center, Branch.SINGLE_ANCHOR, None, None

    if n == 2:
        c1, c2 = anchors
        try:
            rf = radical_foot(c1, c2)
        except DegenerateGeometryError:
            rf = None
        # nested or disjoint circles put the foot outside at least one of them
        if rf is None or rf.half_chord_sq <= 0.0:
            return _midpoint(c1.center, c2.center), Branch.PAIR_MIDPOINT_FALLBACK, None, None
        return rf.foot, Branch.TWO_CIRCLE_FOOT, None, None

    if n == 3:
        center = radical_center(*anchors)
        if center is not None and residual(center, anchors) == 0.0:
            return center, Branch.RADICAL_CENTER, None, 0.0
        i, j = max_separation_pair(anchors)
        return (
            _midpoint(anchors[i].center, anchors[j].center),
            Branch.PAIR_MIDPOINT_FALLBACK,
            None,
            None,
        )

    i, j = max_separation_pair(anchors)
    c1, c2 = anchors[i], anchors[j]
    try:
        rf = radical_foot(c1, c2)
    except DegenerateGeometryError:
        rf = None
    if rf is None or rf.half_chord_sq <= 0.0:
        return _centroid(anchors), Branch.CENTROID_FALLBACK, None, None

    samples = sample_segment(radical_segment(c1, c2), test_points)
    scores = [residual(t, anchors) for t in samples]
    # Samples are collinear and the feasible region is convex, so the
    # zero-score samples form one contiguous run; take its middle.
    feasible = [l for l, s in enumerate(scores) if s == 0.0]
    if feasible:
        l = feasible[(len(feasible) - 1) // 2]
        return samples[l], Branch.TEST_POINT, l + 1, 0.0

    best = min(range(test_points), key=scores.__getitem__)
    c = _centroid(anchors)
    s_c = residual(c, anchors)
    if s_c < scores[best]:
        return c, Branch.CENTROID_FALLBACK, None, s_c
    return samples[best], Branch.TEST_POINT, best + 1, scores[best]


def rla_estimate(anchors: AnchorSet, test_points: int = DEFAULT_TEST_POINTS) -> Estimate:
    """Radical-line estimate, dispatching on the number of anchors.

    * 1 anchor: its position.
    * 2 anchors: foot of their radical line, or the midpoint of the centers
      when the circles do not properly intersect.
    * 3 anchors: radical center if it lies inside all three circles, otherwise
      the midpoint of the two farthest-apart centers.
    * more: ``test_points`` samples on the chord of the two farthest-apart
      anchors. If some samples have zero residual, the middle one of them
      wins (lower middle for an even count); otherwise the sample or centroid
      with the smallest residual (earlier candidate on ties, the centroid
      last). If that pair does not properly intersect, the centroid.
    """
    _check_nonempty(anchors)
    if test_points < 1:
        raise PreconditionError(f"number of test points must be >= 1, got {test_points}")
    point, branch, l, score = _rla(anchors, test_points)
    if score is None:
        score = residual(point, anchors)
    return Estimate(point, Method.RLA, branch, score, l)
