import random
from fractions import Fraction as F
from math import ceil

import pytest

from flagdepth.depth import depth_sweep_2d, depth_value
from flagdepth.fixtures import (
    EX32_K0,
    EX42,
    EX42_ENDPOINTS,
    SQUARE,
    SQUARE_CENTER_PERTURBED,
    SQUARE_CENTER_WEIGHTS,
    TRIANGLE,
    empirical,
)
from flagdepth.geometry import DimensionMismatch, as_point
from flagdepth.lab import sample_points
from flagdepth.measures import AtomicMeasure
from flagdepth.regions import (
    Classification,
    depth_region,
    depth_region_2d,
    max_depth,
    median_2d,
    median_3d,
    region_contains,
)


def test_square_regions():
    sq = empirical(SQUARE)
    assert set(depth_region_2d(sq, F(1, 4)).body.vertices) == {as_point(p) for p in SQUARE}
    assert depth_region_2d(sq, F(1, 2)).body.vertices == ((F(1, 2), F(1, 2)),)
    assert depth_region_2d(sq, F(9, 10)).body.is_empty
    r = depth_region(sq, F(1, 4))
    assert region_contains(r, (F(1, 2), F(1, 2)))
    assert not region_contains(r, (5, 5))
    with pytest.raises(DimensionMismatch):
        region_contains(r, (0, 0, 0))
    with pytest.raises(ValueError):
        depth_region(sq, 0)


def test_triangle_region_ccw():
    tri = empirical(TRIANGLE)
    body = depth_region_2d(tri, F(1, 3)).body
    v = body.vertices
    area2 = sum(v[i][0] * v[(i + 1) % 3][1] - v[(i + 1) % 3][0] * v[i][1] for i in range(3))
    assert area2 > 0


def test_square_median():
    med = median_2d(empirical(SQUARE))
    assert med.alpha_star == F(1, 2)
    assert med.body.vertices == ((F(1, 2), F(1, 2)),)
    assert med.classification is Classification.NON_ATOM_POINT
    assert med.verified


def test_square_with_centre_gp_warning():
    med = median_2d(empirical(SQUARE + [(F(1, 2), F(1, 2))]))
    assert med.warnings
    assert med.classification is Classification.ATOM


def test_interior_atom_median():
    m = AtomicMeasure.from_points(SQUARE_CENTER_PERTURBED, SQUARE_CENTER_WEIGHTS)
    centre = as_point(SQUARE_CENTER_PERTURBED[-1])
    med = median_2d(m)
    assert med.classification is Classification.ATOM
    assert med.body.vertices == (centre,)
    depths = [depth_sweep_2d(m, a).value.exact for a in m.atoms]
    assert depths[-1] == med.alpha_star == F(7, 16)
    assert all(dv < med.alpha_star for dv in depths[:-1])


def test_equal_weight_five_points_full_dimensional():
    med = median_2d(empirical(SQUARE_CENTER_PERTURBED))
    assert med.classification is Classification.FULL_DIMENSIONAL
    assert med.alpha_star == F(2, 5)


def test_ex42_median_and_region():
    m = empirical(EX42)
    med = median_3d(m)
    assert med.alpha_star == F(3, 8)
    assert set(med.body.vertices) == {as_point(p) for p in EX42_ENDPOINTS}
    d28 = depth_region(m, F(2, 8))
    assert all(region_contains(d28, p) for p in EX42_ENDPOINTS)


def test_ex32_k0_median():
    med = median_3d(empirical(EX32_K0))
    assert med.classification is Classification.ATOM
    assert med.body.vertices == (as_point(EX32_K0[7]),)


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        median_3d(empirical(SQUARE))
    with pytest.raises(DimensionMismatch):
        median_2d(empirical(EX42))


def test_degenerate_inputs():
    line = AtomicMeasure.from_points([(0, 0), (1, 1), (3, 3)])
    med = median_2d(line)
    assert med.body.vertices == ((1, 1),) and med.alpha_star == F(2, 3)
    two = median_2d(empirical([(0, 0), (2, 1)]))
    assert two.classification is Classification.SEGMENT
    one = median_2d(empirical([(1, 1)]))
    assert one.classification is Classification.ATOM and one.alpha_star == 1
    flat = median_3d(empirical([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)]))
    assert flat.body.vertices == ((F(1, 2), F(1, 2), 0),)


def test_nesting_and_median_consistency():
    rng = random.Random(4)
    for trial in range(15):
        d = 2 + trial % 2
        pts = [tuple(F(rng.randint(-5, 5)) for _ in range(d)) for _ in range(rng.randint(4, 8))]
        m = AtomicMeasure.from_points(pts)
        med = (median_2d if d == 2 else median_3d)(m)
        assert med.verified
        alphas = sorted({F(k, len(m)) for k in range(1, len(m) + 1) if F(k, len(m)) <= med.alpha_star})
        bodies = [depth_region(m, a).body for a in alphas]
        for outer, inner in zip(bodies, bodies[1:]):
            assert all(outer.contains(v) for v in inner.vertices)
        for a in m.atoms:
            if depth_value(m, a) == med.alpha_star:
                assert med.body.contains(a)
        for v in med.body.vertices:
            assert depth_value(m, v) == med.alpha_star


def test_region_median_agreement_2d():
    for seed in range(10):
        m = empirical(sample_points(7, 2, seed))
        med = median_2d(m)
        assert med.body.vertices == depth_region_2d(m, med.alpha_star).body.vertices


@pytest.mark.parametrize("n,d", [(5, 2), (9, 2), (6, 3), (8, 3)])
def test_centerpoint_bound(n, d):
    for seed in range(4):
        m = empirical(sample_points(n, d, seed))
        assert max_depth(m) >= F(ceil(F(n, d + 1)), n)
