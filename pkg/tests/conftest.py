import math
import random

import pytest

from radloc.geom import Circle, Point

_ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    """Record a one-line pass/fail verdict printed in the terminal summary."""

    def report(criterion, ok, detail=""):
        _ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] {criterion}" + (f": {detail}" if detail else ""))
        return ok

    return report


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_circle(rng, lo=0.0, hi=100.0, rmin=5.0, rmax=60.0):
    return Circle(Point(rng.uniform(lo, hi), rng.uniform(lo, hi)), rng.uniform(rmin, rmax))


def random_intersecting_pair(rng):
    while True:
        c1, c2 = random_circle(rng), random_circle(rng)
        d = math.dist(tuple(c1.center), tuple(c2.center))
        if abs(c1.radius - c2.radius) + 1e-6 < d < c1.radius + c2.radius - 1e-6:
            return c1, c2


def random_anchor_set(rng, n, lo=0.0, hi=100.0, rmin=20.0, rmax=60.0):
    return [random_circle(rng, lo, hi, rmin, rmax) for _ in range(n)]


def rigid_motion(rng):
    th = rng.uniform(0.0, 2.0 * math.pi)
    tx, ty = rng.uniform(-1000, 1000), rng.uniform(-1000, 1000)
    c, s = math.cos(th), math.sin(th)

    def apply(p):
        return Point(c * p.x - s * p.y + tx, s * p.x + c * p.y + ty)

    return apply


@pytest.fixture
def rng():
    return random.Random(20240515)
