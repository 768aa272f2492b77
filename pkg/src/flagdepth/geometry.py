"""Exact points, halfspaces and flag halfspaces.

Coordinates are :class:`fractions.Fraction` tuples throughout. Directions are
never normalised, so every predicate here is homogeneous in the normal.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .linalg import rank

Scalar = Fraction
Point = tuple[Fraction, ...]


class DimensionMismatch(ValueError):
    pass


class DegenerateFlag(ValueError):
    """The normals of a flag halfspace are not linearly independent."""


def as_scalar(value) -> Fraction:
    """Parse ints, Fractions, floats (exactly) and ``"p/q"``/decimal strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def as_point(coords: Iterable) -> Point:
    return tuple(as_scalar(c) for c in coords)


def sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def _check_dims(*vectors: Sequence) -> int:
    d = len(vectors[0])
    if any(len(v) != d for v in vectors):
        raise DimensionMismatch(f"dimensions differ: {[len(v) for v in vectors]}")
    return d


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


class Side(Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class ClosedHalfspace:
    """``{y : <y - base, normal> >= 0}``."""

    base: Point
    normal: Point

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base))
        object.__setattr__(self, "normal", as_point(self.normal))
        _check_dims(self.base, self.normal)
        if not any(self.normal):
            raise ValueError("normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.base)

    def offset(self, y: Sequence[Fraction]) -> Fraction:
        _check_dims(self.base, y)
        return dot(sub(y, self.base), self.normal)


@dataclass(frozen=True)
class Hyperplane:
    """``{y : <y - base, normal> = 0}``."""

    base: Point
    normal: Point

    def __post_init__(self):
        object.__setattr__(self, "base", as_point(self.base))
        object.__setattr__(self, "normal", as_point(self.normal))
        _check_dims(self.base, self.normal)
        if not any(self.normal):
            raise ValueError("normal must be nonzero")

    @property
    def dim(self) -> int:
        return len(self.base)

    def offset(self, y: Sequence[Fraction]) -> Fraction:
        _check_dims(self.base, y)
        return dot(sub(y, self.base), self.normal)


@dataclass(frozen=True)
class FlagHalfspace:
    """``{center} ∪ G_1 ∪ ... ∪ G_d`` given by normals ``(u_d, ..., u_1)``.

    A point ``y != center`` belongs to the flag iff the first nonzero entry of
    ``(<y-x, u_d>, ..., <y-x, u_1>)`` is positive.
    """

    center: Point
    normals: tuple[Point, ...]

    def __post_init__(self):
        center = as_point(self.center)
        normals = tuple(as_point(u) for u in self.normals)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "normals", normals)
        d = len(center)
        if len(normals) != d:
            raise DegenerateFlag(f"expected {d} normals, got {len(normals)}")
        _check_dims(center, *normals)
        if rank(normals) != d:
            raise DegenerateFlag("flag normals are linearly dependent")

    @property
    def dim(self) -> int:
        return len(self.center)

    def sign_vector(self, y: Sequence[Fraction]) -> tuple[int, ...]:
        diff = sub(y, self.center)
        return tuple(_sign(dot(diff, u)) for u in self.normals)

    @property
    def leading(self) -> ClosedHalfspace:
        return ClosedHalfspace(self.center, self.normals[0])


def side_of(h: ClosedHalfspace, y: Sequence) -> Side:
    s = h.offset(as_point(y))
    if s > 0:
        return Side.INSIDE
    if s == 0:
        return Side.BOUNDARY
    return Side.OUTSIDE


def flag_contains(f: FlagHalfspace, y: Sequence) -> bool:
    y = as_point(y)
    _check_dims(f.center, y)
    for s in f.sign_vector(y):
        if s:
            return s > 0
    return True  # y == center


def flag_complement(f: FlagHalfspace) -> FlagHalfspace:
    return FlagHalfspace(f.center, tuple(tuple(-c for c in u) for u in f.normals))


def affine_dimension(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a non-empty point set."""
    if not points:
        raise ValueError("affine_dimension of an empty set")
    pts = [as_point(p) for p in points]
    _check_dims(*pts)
    p0 = pts[0]
    return rank([sub(p, p0) for p in pts[1:]])


def format_scalar(v: Fraction) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
