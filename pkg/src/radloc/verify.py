"""Built-in self-check suite run by ``radloc verify``."""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import geom
from .geom import Circle, Point, RadicalFoot
from .locate import centroid_estimate, rla_estimate
from .sim import ScenarioConfig, run_trial

TIME_BUDGET_S = 60.0


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _faulty_radical_foot(c1: Circle, c2: Circle) -> RadicalFoot:
    # sign of R_2^2 flipped in the d_o1 numerator
    dx = c2.center.x - c1.center.x
    dy = c2.center.y - c1.center.y
    d = math.hypot(dx, dy)
    d_o1 = (c1.radius**2 + c2.radius**2 + d * d) / (2.0 * d)
    foot = Point(c1.center.x + d_o1 / d * dx, c1.center.y + d_o1 / d * dy)
    return RadicalFoot(foot, d_o1, c1.radius**2 - d_o1**2)


def exact_power_gap(p: Point, circles) -> Fraction:
    """Spread of the powers of ``p`` over ``circles``, in exact arithmetic.

    Float evaluation loses ~eps * |p|**2 to cancellation, which swamps the
    tolerance when the point lies far from the centers.
    """
    pw = [
        (Fraction(p.x) - Fraction(c.center.x)) ** 2
        + (Fraction(p.y) - Fraction(c.center.y)) ** 2
        - Fraction(c.radius) ** 2
        for c in circles
    ]
    return max(pw) - min(pw)


def _rand_circle(rng: random.Random, rmin: float = 5.0, rmax: float = 60.0) -> Circle:
    return Circle(Point(rng.uniform(0, 100), rng.uniform(0, 100)), rng.uniform(rmin, rmax))


def _intersecting_pair(rng: random.Random) -> tuple[Circle, Circle]:
    while True:
        c1, c2 = _rand_circle(rng), _rand_circle(rng)
        d = geom.distance(c1.center, c2.center)
        if abs(c1.radius - c2.radius) + 1e-6 < d < c1.radius + c2.radius - 1e-6:
            return c1, c2


def _anchor_set(rng: random.Random, n: int) -> list[Circle]:
    return [_rand_circle(rng, 20.0, 60.0) for _ in range(n)]


def check_worked_examples(foot_fn) -> CheckResult:
    c1, c2 = Circle(Point(0, 0), 4), Circle(Point(3, 4), 3)
    rf = foot_fn(c1, c2)
    seg = geom.radical_segment(c1, c2)
    rc = geom.radical_center(Circle(Point(0, 0), 3), Circle(Point(4, 0), 3), Circle(Point(0, 4), 3))
    got = [rf.foot.x, rf.foot.y, rf.d_o1, rf.half_chord_sq, seg.a.x, seg.a.y, seg.b.x, seg.b.y, rc.x, rc.y]
    want = [1.92, 2.56, 3.2, 5.76, 0.0, 4.0, 3.84, 1.12, 2.0, 2.0]
    bad = [(g, w) for g, w in zip(got, want) if not math.isclose(g, w, rel_tol=1e-12, abs_tol=1e-12)]
    return CheckResult("worked examples", not bad, f"mismatches: {bad}" if bad else "")


def check_foot_power(foot_fn, rng: random.Random, n: int = 2000) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        c1, c2 = _rand_circle(rng), _rand_circle(rng)
        d = geom.distance(c1.center, c2.center)
        if d < 1.0:
            continue
        o = foot_fn(c1, c2).foot
        worst = max(worst, float(exact_power_gap(o, (c1, c2))) / (d * d))
    return CheckResult("radical_foot power equality", worst <= 1e-9, f"worst relative gap {worst:.3g}")


def check_segment_on_circles(rng: random.Random, n: int = 2000) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        c1, c2 = _intersecting_pair(rng)
        seg = geom.radical_segment(c1, c2)
        for p in (seg.a, seg.b):
            for c in (c1, c2):
                worst = max(worst, abs(geom.distance(p, c.center) - c.radius))
    return CheckResult("radical_segment endpoints on both circles", worst < 1e-9, f"worst {worst:.3g} m")


def check_center_power(rng: random.Random, n: int = 2000) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        cs = [_rand_circle(rng) for _ in range(3)]
        p = geom.radical_center(*cs)
        if p is None:
            continue
        scale = max(geom.distance(a.center, b.center) for a, b in ((cs[0], cs[1]), (cs[0], cs[2]), (cs[1], cs[2])))
        worst = max(worst, float(exact_power_gap(p, cs)) / scale**2)
    return CheckResult("radical_center power equality", worst <= 1e-9, f"worst relative gap {worst:.3g}")


def check_candidate_optimality(rng: random.Random, n: int = 500) -> CheckResult:
    fails = 0
    for _ in range(n):
        anchors = _anchor_set(rng, rng.randint(4, 10))
        if rla_estimate(anchors).score > centroid_estimate(anchors).score:
            fails += 1
    return CheckResult("candidate optimality", fails == 0, f"{fails}/{n} violations")


def check_zero_residual(rng: random.Random, n: int = 500) -> CheckResult:
    fails = 0
    for _ in range(n):
        anchors = _anchor_set(rng, rng.randint(2, 8))
        est = rla_estimate(anchors)
        if est.score == 0.0 and any(geom.distance(est.point, c.center) > c.radius for c in anchors):
            fails += 1
    return CheckResult("zero-residual soundness", fails == 0, f"{fails}/{n} violations")


def check_equivariance(rng: random.Random, n: int = 300) -> CheckResult:
    worst = 0.0
    for _ in range(n):
        anchors = _anchor_set(rng, rng.randint(1, 8))
        th = rng.uniform(0, 2 * math.pi)
        tx, ty = rng.uniform(-500, 500), rng.uniform(-500, 500)
        cos, sin = math.cos(th), math.sin(th)

        def move(p: Point) -> Point:
            return Point(cos * p.x - sin * p.y + tx, sin * p.x + cos * p.y + ty)

        moved = [Circle(move(c.center), c.radius) for c in anchors]
        for fn in (rla_estimate, centroid_estimate):
            a, b = move(fn(anchors).point), fn(moved).point
            worst = max(worst, geom.distance(a, b))
    return CheckResult("rigid-motion equivariance", worst < 1e-9, f"worst {worst:.3g} m")


def check_determinism() -> CheckResult:
    cfg = ScenarioConfig(num_sensors=30, num_anchors=20, num_trials=1, doi=0.1, mixed_ranges=True, master_seed=7)
    ok = run_trial(cfg, 3) == run_trial(cfg, 3)
    return CheckResult("determinism", ok)


def run_checks(inject_fault: bool = False, seed: int = 12345) -> list[CheckResult]:
    foot_fn: Callable[[Circle, Circle], RadicalFoot] = _faulty_radical_foot if inject_fault else geom.radical_foot
    rng = random.Random(seed)
    return [
        check_worked_examples(foot_fn),
        check_foot_power(foot_fn, rng),
        check_segment_on_circles(rng),
        check_center_power(rng),
        check_candidate_optimality(rng),
        check_zero_residual(rng),
        check_equivariance(rng),
        check_determinism(),
    ]


def main(inject_fault: bool = False, out=print) -> bool:
    start = time.perf_counter()
    results = run_checks(inject_fault)
    for r in results:
        out(f"[{'PASS' if r.ok else 'FAIL'}] {r.name}" + (f" ({r.detail})" if r.detail else ""))
    elapsed = time.perf_counter() - start
    if elapsed > TIME_BUDGET_S:
        out(f"warning: verify took {elapsed:.1f} s (budget {TIME_BUDGET_S:.0f} s)")
    failed = [r.name for r in results if not r.ok]
    if failed:
        out("verify FAILED: " + ", ".join(failed))
    return not failed
