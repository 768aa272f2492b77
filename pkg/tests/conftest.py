from __future__ import annotations

import random
from fractions import Fraction as F

import pytest


def random_planar_config(rng: random.Random, n_max: int = 12):
    """Small-integer planar atoms, sometimes with forced collinear triples,
    and a query point that is sometimes an atom."""
    n = rng.randint(1, n_max)
    pts = {(F(rng.randint(-6, 6)), F(rng.randint(-6, 6))) for _ in range(n)}
    pts = sorted(pts)
    if len(pts) >= 2 and rng.random() < 0.4:
        (ax, ay), (bx, by) = pts[0], pts[-1]
        t = F(rng.randint(-2, 4), 2)
        c = (ax + t * (bx - ax), ay + t * (by - ay))
        if c not in pts:
            pts.append(c)
    weights = [F(rng.randint(1, 4)) for _ in pts]
    r = rng.random()
    if r < 0.3:
        x = rng.choice(pts)
    elif r < 0.5:
        x = (F(rng.randint(-12, 12), 2), F(rng.randint(-12, 12), 2))
    else:
        x = (F(rng.randint(-60, 60), 7), F(rng.randint(-60, 60), 11))
    return pts, weights, x


@pytest.fixture
def square():
    from flagdepth.fixtures import SQUARE, empirical
    return empirical(SQUARE)


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
