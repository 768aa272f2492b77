import math
import random
from fractions import Fraction as F

import pytest

from flagdepth.fixtures import EX42, SQUARE, TRIANGLE, empirical, ex21_measure
from flagdepth.geometry import ClosedHalfspace, DimensionMismatch, FlagHalfspace, Hyperplane, flag_complement
from flagdepth.measures import (
    AtomicMeasure,
    mass_closed,
    mass_flag,
    mass_hyperplane,
    mass_open,
    restrict_to_hyperplane,
    segment_fraction,
)

EX21_OPEN = (4 * math.pi / 3 - math.sqrt(3)) / (4 * math.pi)


def test_from_points_merges_duplicates():
    m = AtomicMeasure.from_points([(0, 0), (1, 0), (0, 0)])
    assert m.atoms == ((0, 0), (1, 0))
    assert m.weights == (F(2, 3), F(1, 3))
    with pytest.raises(ValueError):
        AtomicMeasure(((0, 0), (0, 0)), (1, 1))
    with pytest.raises(DimensionMismatch):
        AtomicMeasure.from_points([(0, 0), (1, 0, 0)])


def test_closed_and_open_masses():
    tri = empirical(TRIANGLE)
    assert mass_closed(tri, ClosedHalfspace((F(1, 4), F(1, 4)), (-1, -1))).exact == F(1, 3)
    sq = empirical(SQUARE)
    assert mass_open(sq, ClosedHalfspace((0, 0), (0, 1))).exact == F(1, 2)
    assert mass_open(sq, ClosedHalfspace((5, 5), (1, 1))).exact == 0
    assert mass_closed(sq, ClosedHalfspace((-9, -9), (1, 1))).exact == 1


def test_ex21_masses():
    m = ex21_measure()
    h = ClosedHalfspace((1, 0), (1, 0))
    assert abs(mass_closed(m, h).approx - (1 + EX21_OPEN)) < 1e-12
    assert abs(mass_open(m, h).approx - EX21_OPEN) < 1e-12
    f = FlagHalfspace((1, 0), ((1, 0), (0, -1)))
    assert abs(mass_flag(m, f).approx - EX21_OPEN) < 1e-12


def test_segment_fraction_limits():
    assert segment_fraction(-3, 2) == 1.0
    assert segment_fraction(2, 2) == 0.0
    assert abs(segment_fraction(0, 2) - 0.5) < 1e-15


def test_mixture_mass_jump_only_at_atom():
    m = ex21_measure()
    base = (1, 0)
    prev = None
    for k in range(-2000, 2001):
        a = k * 1e-3
        v = mass_closed(m, ClosedHalfspace(base, (math.cos(a), math.sin(a)))).approx
        if prev is not None:
            jump = abs(v - prev)
            # the atom (1,1) sits on the boundary only at angle 0
            assert jump < 2e-3 or (k in (0, 1) and abs(jump - 1) < 2e-3)
        prev = v


def test_flag_partition_random():
    rng = random.Random(3)
    for _ in range(200):
        pts = [(F(rng.randint(-3, 3)), F(rng.randint(-3, 3)), F(rng.randint(-3, 3))) for _ in range(9)]
        m = AtomicMeasure.from_points(pts, [F(rng.randint(1, 3)) for _ in pts])
        x = rng.choice(m.atoms) if rng.random() < 0.5 else (F(rng.randint(-3, 3)), 0, 0)
        while True:
            normals = [tuple(rng.randint(-2, 2) for _ in range(3)) for _ in range(3)]
            try:
                f = FlagHalfspace(x, normals)
                break
            except ValueError:
                continue
        total = mass_flag(m, f).exact + mass_flag(m, flag_complement(f)).exact
        assert total == m.total + m.weight_at(x)
        h = f.leading
        assert mass_open(m, h).exact <= mass_flag(m, f).exact <= mass_closed(m, h).exact
        assert mass_closed(m, h).exact == mass_open(m, h).exact + mass_hyperplane(m, Hyperplane(h.base, h.normal))


def test_restrict_to_hyperplane():
    sq = empirical(SQUARE)
    r, chart = restrict_to_hyperplane(sq, Hyperplane((0, 0), (0, 1)))
    assert r.dim == 1 and r.total == F(1, 2)
    assert sorted(chart.from_chart(a) for a in r.atoms) == [(0, 0), (1, 0)]
    empty, _ = restrict_to_hyperplane(sq, Hyperplane((0, 5), (0, 1)))
    assert empty.total == 0 and len(empty) == 0

    m = empirical(EX42)
    x7, x8, x1 = m.atoms[6], m.atoms[7], m.atoms[0]
    u = (x8[0] - x7[0], x8[1] - x7[1], x8[2] - x7[2])
    v = (x1[0] - x7[0], x1[1] - x7[1], x1[2] - x7[2])
    n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    r, chart = restrict_to_hyperplane(m, Hyperplane(x7, n))
    assert r.dim == 2 and len(r) == 3 and r.total == F(3, 8)
    assert {chart.from_chart(a) for a in r.atoms} == {x1, x7, x8}


def test_restrict_on_line_gives_point_measure():
    m = AtomicMeasure.from_points([(0,), (2,)])
    r, _ = restrict_to_hyperplane(m, Hyperplane((2,), (1,)))
    assert r.dim == 0 and r.total == F(1, 2)
