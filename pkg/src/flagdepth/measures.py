"""Finite measures: weighted atoms in any dimension, and the planar
uniform-disk-plus-atoms mixture.

Atomic masses are exact. Disk masses are floats; the segment formula is
well conditioned and its absolute error stays far below ``DISK_ERROR``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

from .geometry import (
    ClosedHalfspace,
    DimensionMismatch,
    FlagHalfspace,
    Hyperplane,
    Point,
    Side,
    as_point,
    as_scalar,
    dot,
    flag_contains,
    side_of,
    sub,
)
from .linalg import solve

DISK_ERROR = 1e-12


@dataclass(frozen=True)
class MassValue:
    exact: Fraction | None
    approx: float
    error_bound: float = 0.0

    @classmethod
    def of(cls, value: Fraction) -> "MassValue":
        return cls(Fraction(value), float(value))

    def __float__(self) -> float:
        return self.approx

    def __add__(self, other: "MassValue") -> "MassValue":
        exact = None if self.exact is None or other.exact is None else self.exact + other.exact
        approx = float(exact) if exact is not None else self.approx + other.approx
        return MassValue(exact, approx, self.error_bound + other.error_bound)


@dataclass(frozen=True)
class AtomicMeasure:
    """Finitely many distinct weighted atoms in ``R^dim``.

    Use :meth:`from_points` for raw input; it merges repeated atoms.
    """

    atoms: tuple[Point, ...]
    weights: tuple[Fraction, ...]
    dim: int = -1

    def __post_init__(self):
        atoms = tuple(as_point(a) for a in self.atoms)
        weights = tuple(as_scalar(w) for w in self.weights)
        dim = self.dim
        if dim < 0:
            if not atoms:
                raise ValueError("dimension of an empty measure must be given")
            dim = len(atoms[0])
        if len(atoms) != len(weights):
            raise ValueError("atoms and weights differ in length")
        if any(len(a) != dim for a in atoms):
            raise DimensionMismatch("all atoms must share one dimension")
        if any(w < 0 for w in weights):
            raise ValueError("weights must be non-negative")
        if len(set(atoms)) != len(atoms):
            raise ValueError("atoms must be distinct; use AtomicMeasure.from_points")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "weights", weights)
        object.__setattr__(self, "dim", dim)

    @classmethod
    def from_points(cls, points: Sequence[Sequence], weights: Sequence | None = None,
                    dim: int | None = None) -> "AtomicMeasure":
        """Build a measure, merging duplicates; default weights are ``1/n``."""
        pts = [as_point(p) for p in points]
        if weights is None:
            weights = [Fraction(1, len(pts))] * len(pts)
        merged: dict[Point, Fraction] = {}
        for p, w in zip(pts, weights):
            merged[p] = merged.get(p, Fraction(0)) + as_scalar(w)
        if dim is None:
            dim = len(pts[0]) if pts else -1
        return cls(tuple(merged), tuple(merged.values()), dim)

    @property
    def total(self) -> Fraction:
        return sum(self.weights, Fraction(0))

    def __len__(self) -> int:
        return len(self.atoms)

    def weight_at(self, y: Sequence) -> Fraction:
        y = as_point(y)
        for a, w in zip(self.atoms, self.weights):
            if a == y:
                return w
        return Fraction(0)


@dataclass(frozen=True)
class DiskMixtureMeasure:
    """Uniform mass ``disk_weight`` on a closed planar disk plus planar atoms."""

    disk_center: Point
    disk_radius: Fraction
    disk_weight: Fraction
    atomic: AtomicMeasure = field(default_factory=lambda: AtomicMeasure((), (), 2))

    def __post_init__(self):
        object.__setattr__(self, "disk_center", as_point(self.disk_center))
        object.__setattr__(self, "disk_radius", as_scalar(self.disk_radius))
        object.__setattr__(self, "disk_weight", as_scalar(self.disk_weight))
        if len(self.disk_center) != 2 or self.atomic.dim != 2:
            raise DimensionMismatch("disk mixtures are planar")
        if self.disk_radius <= 0 or self.disk_weight <= 0:
            raise ValueError("disk radius and weight must be positive")

    dim = 2

    @property
    def atoms(self):
        return self.atomic.atoms

    @property
    def weights(self):
        return self.atomic.weights

    @property
    def total(self) -> float:
        return float(self.disk_weight + self.atomic.total)

    def disk_mass_beyond(self, base: Sequence, normal: Sequence) -> float:
        """Disk mass of ``{y : <y - base, normal> >= 0}`` (boundary has no mass)."""
        nx, ny = (float(c) for c in normal)
        norm = math.hypot(nx, ny)
        t = float(dot(sub(base, self.disk_center), normal)) / norm
        return float(self.disk_weight) * segment_fraction(t, float(self.disk_radius))


Measure = Union[AtomicMeasure, DiskMixtureMeasure]


def segment_fraction(t: float, r: float) -> float:
    """Share of a radius-``r`` disk lying at signed distance ``>= t`` from its centre."""
    if t <= -r:
        return 1.0
    if t >= r:
        return 0.0
    area = r * r * math.acos(t / r) - t * math.sqrt(r * r - t * t)
    return area / (math.pi * r * r)


def _atomic_part(m: Measure) -> AtomicMeasure:
    return m.atomic if isinstance(m, DiskMixtureMeasure) else m


def _check(m: Measure, dim: int) -> None:
    if m.dim != dim:
        raise DimensionMismatch(f"measure has dimension {m.dim}, object has {dim}")


def _finish(m: Measure, atomic: Fraction, disk: float | None) -> MassValue:
    if disk is None:
        return MassValue.of(atomic)
    return MassValue(None, float(atomic) + disk, DISK_ERROR)


def mass_closed(m: Measure, h: ClosedHalfspace) -> MassValue:
    _check(m, h.dim)
    at = _atomic_part(m)
    atomic = sum((w for a, w in zip(at.atoms, at.weights) if side_of(h, a) is not Side.OUTSIDE),
                 Fraction(0))
    disk = m.disk_mass_beyond(h.base, h.normal) if isinstance(m, DiskMixtureMeasure) else None
    return _finish(m, atomic, disk)


def mass_open(m: Measure, h: ClosedHalfspace) -> MassValue:
    _check(m, h.dim)
    at = _atomic_part(m)
    atomic = sum((w for a, w in zip(at.atoms, at.weights) if side_of(h, a) is Side.INSIDE),
                 Fraction(0))
    disk = m.disk_mass_beyond(h.base, h.normal) if isinstance(m, DiskMixtureMeasure) else None
    return _finish(m, atomic, disk)


def mass_hyperplane(m: AtomicMeasure, p: Hyperplane) -> Fraction:
    _check(m, p.dim)
    return sum((w for a, w in zip(m.atoms, m.weights) if p.offset(a) == 0), Fraction(0))


def mass_flag(m: Measure, f: FlagHalfspace) -> MassValue:
    """Mass of a flag; a disk only charges the open leading halfspace."""
    _check(m, f.dim)
    at = _atomic_part(m)
    atomic = sum((w for a, w in zip(at.atoms, at.weights) if flag_contains(f, a)), Fraction(0))
    disk = m.disk_mass_beyond(f.center, f.normals[0]) if isinstance(m, DiskMixtureMeasure) else None
    return _finish(m, atomic, disk)


@dataclass(frozen=True)
class Chart:
    """Affine bijection between ``R^k`` and a ``k``-flat ``origin + span(basis)``."""

    origin: Point
    basis: tuple[Point, ...]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def from_chart(self, c: Sequence) -> Point:
        c = as_point(c)
        out = list(self.origin)
        for ci, b in zip(c, self.basis):
            out = [o + ci * bj for o, bj in zip(out, b)]
        return tuple(out)

    def to_chart(self, y: Sequence) -> Point:
        """Chart coordinates of a point lying on the flat."""
        y = as_point(y)
        if not self.basis:
            return ()
        diff = sub(y, self.origin)
        gram = [[dot(bi, bj) for bj in self.basis] for bi in self.basis]
        rhs = [dot(bi, diff) for bi in self.basis]
        c = tuple(solve(gram, rhs))
        if self.from_chart(c) != y:
            raise ValueError("point is not on the chart's flat")
        return c


def hyperplane_chart(p: Hyperplane) -> Chart:
    """Rational (non-orthonormal) chart of a hyperplane, based at ``p.base``."""
    n = p.normal
    j = next(i for i, c in enumerate(n) if c != 0)
    basis = []
    for i in range(len(n)):
        if i == j:
            continue
        b = [Fraction(0)] * len(n)
        b[i] = n[j]
        b[j] = -n[i]
        basis.append(tuple(b))
    return Chart(p.base, tuple(basis))


def restrict_to_hyperplane(m: AtomicMeasure, p: Hyperplane) -> tuple[AtomicMeasure, Chart]:
    """Atoms on ``p`` expressed in a chart of ``p`` (dimension ``d-1``)."""
    if not isinstance(m, AtomicMeasure):
        raise TypeError("restriction is defined for atomic measures only")
    _check(m, p.dim)
    chart = hyperplane_chart(p)
    on = [(a, w) for a, w in zip(m.atoms, m.weights) if p.offset(a) == 0]
    atoms = tuple(chart.to_chart(a) for a, _ in on)
    return AtomicMeasure(atoms, tuple(w for _, w in on), m.dim - 1), chart
