"""Datasets used by the examples, tests and the ``reproduce`` command."""
from __future__ import annotations

from fractions import Fraction as F
from math import isqrt

from .measures import AtomicMeasure, DiskMixtureMeasure

FIXTURES_VERSION = "1"

# 1/sqrt(2) to within 1e-15; the k=0 configuration is stable under such shifts
_DIGITS = 10**15
INV_SQRT2 = F(isqrt(2 * _DIGITS * _DIGITS), 2 * _DIGITS)

SQUARE = [(0, 0), (1, 0), (0, 1), (1, 1)]
TRIANGLE = [(0, 0), (1, 0), (0, 1)]

# single-point median at x8
EX32_K0 = [
    (1, 0, -INV_SQRT2),
    (-1, 0, -INV_SQRT2),
    (0, -1, INV_SQRT2),
    (0, 1, INV_SQRT2),
    (0, 1, F(-1, 4)),
    (F(1, 10), -1, F(-1, 4)),
    (F(3, 4), 0, F(1, 4)),
    (F(1, 10), F(1, 10), 0),
]
EX32_K0_NORMALS = [
    (F(-7, 10), F(-3, 10), F(-3, 5)),
    (F(-2, 5), F(-1, 10), F(9, 10)),
    (F(-1, 5), F(4, 5), F(3, 5)),
    (1, F(1, 10), 0),
]

# median is the segment x7-x8 at depth 3/8: perturbed prism plus two
# interior points whose line crosses both triangular faces
EX32_K1 = [
    (F(-1), F(-3, 5), F(-1)),
    (F(11, 10), F(-1, 2), F(-9, 10)),
    (F(1, 20), F(6, 5), F(-21, 20)),
    (F(-9, 10), F(-11, 20), F(1)),
    (F(1), F(-3, 5), F(11, 10)),
    (F(-1, 10), F(11, 10), F(19, 20)),
    (F(1, 50), F(1, 25), F(-1, 5)),
    (F(-1, 50), F(1, 50), F(1, 5)),
]

# full-dimensional median at depth 2/8: perturbed unit cube
EX32_K3 = [
    (F(1, 20), F(-1, 20), F(-9, 100)),
    (F(49, 50), F(-1, 10), F(1, 100)),
    (F(1, 50), F(9, 10), F(7, 100)),
    (F(103, 100), F(101, 100), F(1, 50)),
    (F(2, 25), F(-1, 10), F(26, 25)),
    (F(91, 100), F(-1, 20), F(109, 100)),
    (F(-1, 25), F(93, 100), F(97, 100)),
    (F(26, 25), F(101, 100), F(53, 50)),
]

EX42 = [
    (-1, F(1, 3), F(-2, 3)),
    (1, 0, -1),
    (0, F(3, 2), -1),
    (F(-1, 2), 0, 1),
    (1, 0, F(4, 3)),
    (0, 2, 1),
    (F(-1, 3), F(1, 2), -2),
    (F(1, 3), F(1, 2), 2),
]
EX42_ENDPOINTS = [(0, F(1, 2), 0), (F(3, 44), F(1, 2), F(9, 22))]

# strictly interior atom of maximal depth among five; with equal weights the
# median of five planar points in general position is full-dimensional, so
# the centre carries 1/4 and each corner 3/16
SQUARE_CENTER_PERTURBED = [(0, 0), (F(11, 10), F(1, 20)), (F(-1, 10), 1), (1, F(21, 20)), (F(13, 25), F(12, 25))]
SQUARE_CENTER_WEIGHTS = [F(3, 16)] * 4 + [F(1, 4)]


def empirical(points) -> AtomicMeasure:
    return AtomicMeasure.from_points(points)


def ex21_measure() -> DiskMixtureMeasure:
    """Unit atom at (1,1) plus the uniform probability on the radius-2 disk."""
    return DiskMixtureMeasure((0, 0), 2, 1, AtomicMeasure.from_points([(1, 1)], [1]))
