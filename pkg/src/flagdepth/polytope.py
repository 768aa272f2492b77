"""Exact convex polytopes: halfspace intersection by double description,
extreme points, and point containment.

Everything is over Python ints in homogeneous coordinates; a vertex ``y`` is
stored as the ray ``(y * t, t)`` with ``t > 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .geometry import Point, affine_dimension, as_point, sub
from .linalg import common_denominator, int_dot, primitive, rank, solve

# a.y <= b with integer a, b
Constraint = tuple[tuple[int, ...], int]


@dataclass(frozen=True)
class ConvexPolytope:
    """A bounded convex polytope given by its extreme points.

    ``halfspaces`` (``a.y <= b`` over Fractions) is kept when known, so that
    membership can be decided without a hull computation.
    """

    vertices: tuple[Point, ...]
    ambient_dim: int
    halfspaces: tuple[tuple[Point, Fraction], ...] | None = field(default=None, compare=False)

    @property
    def intrinsic_dim(self) -> int:
        return affine_dimension(self.vertices) if self.vertices else -1

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    def contains(self, y: Sequence) -> bool:
        y = as_point(y)
        if not self.vertices:
            return False
        if self.halfspaces is not None:
            return all(sum((a_i * y_i for a_i, y_i in zip(a, y)), Fraction(0)) <= b
                       for a, b in self.halfspaces)
        return in_hull(self.vertices, y)


def intersect_halfspaces(constraints: Sequence[Constraint], lo: Sequence[int],
                         hi: Sequence[int]) -> list[tuple[Point, int]]:
    """Vertices of ``{y : a.y <= b} ∩ box[lo, hi]``.

    Returns ``(vertex, tight)`` pairs where ``tight`` is a bitmask over
    ``constraints`` (box constraints are not reported).
    """
    d = len(lo)
    nbox = 2 * d
    rays: list[tuple[int, ...]] = []
    zeros: list[int] = []
    for corner in range(1 << d):
        coords = tuple(hi[j] if corner >> j & 1 else lo[j] for j in range(d))
        z = 0
        for j in range(d):
            z |= 1 << (2 * j if corner >> j & 1 else 2 * j + 1)
        rays.append(coords + (1,))
        zeros.append(z)

    for ci, (a, b) in enumerate(constraints):
        bit = 1 << (nbox + ci)
        vals = [b * r[d] - int_dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if not neg:
            for i, v in enumerate(vals):
                if v == 0:
                    zeros[i] |= bit
            continue
        if not pos and all(v < 0 for v in vals):
            return []
        new_rays, new_zeros = [], []
        for p in pos:
            zp = zeros[p]
            for q in neg:
                common = zp & zeros[q]
                if common.bit_count() < d - 1:
                    continue
                if any(i != p and i != q and zeros[i] & common == common
                       for i in range(len(rays))):
                    continue
                vp, vq = vals[p], -vals[q]
                new_rays.append(primitive([vp * y + vq * x for x, y in zip(rays[p], rays[q])]))
                new_zeros.append(common | bit)
        kept = [i for i, v in enumerate(vals) if v >= 0]
        rays = [rays[i] for i in kept] + new_rays
        zeros = [zeros[i] | (bit if vals[i] == 0 else 0) for i in kept] + new_zeros
        if not rays:
            return []

    out = []
    for r, z in zip(rays, zeros):
        t = r[d]
        out.append((tuple(Fraction(c, t) for c in r[:d]), z >> nbox))
    return out


def integer_constraint(a: Sequence[Fraction], b: Fraction) -> Constraint:
    den = common_denominator(list(a) + [b])
    return tuple(int(c * den) for c in a), int(b * den)


def _chart(points: Sequence[Point]):
    """Coordinate projection that is injective on ``aff(points)``.

    Returns ``(base, idx, back)`` where ``idx`` picks coordinates and
    ``back`` maps projected coordinates to the flat.
    """
    p0 = points[0]
    diffs = [sub(p, p0) for p in points[1:]]
    basis: list[Point] = []
    for v in diffs:
        if rank(basis + [v]) > len(basis):
            basis.append(v)
    k = len(basis)
    d = len(p0)
    for idx in combinations(range(d), k):
        sq = [[b[j] for b in basis] for j in idx]
        if rank(sq) == k:
            break
    else:  # k == 0
        idx = ()

    def back(c: Sequence[Fraction]) -> Point:
        coeff = solve([[b[j] for b in basis] for j in idx], [ci - p0[j] for ci, j in zip(c, idx)]) if k else []
        out = list(p0)
        for cf, b in zip(coeff, basis):
            out = [o + cf * bj for o, bj in zip(out, b)]
        return tuple(out)

    return p0, idx, back


def _in_simplex(simplex: Sequence[Point], y: Point) -> bool:
    k = len(simplex) - 1
    base = simplex[0]
    cols = [sub(s, base) for s in simplex[1:]]
    rows = [[c[j] for c in cols] for j in range(k)]
    lam = solve(rows, sub(y, base)[:k]) if k else []
    if lam is None:
        return False
    return all(v >= 0 for v in lam) and sum(lam, Fraction(0)) <= 1


def in_hull(points: Sequence[Point], y: Point) -> bool:
    """Exact convex-hull membership (Carathéodory over full-rank simplices)."""
    pts = list(dict.fromkeys(as_point(p) for p in points))
    y = as_point(y)
    if y in pts:
        return True
    k = affine_dimension(pts)
    if affine_dimension(pts + [y]) > k:
        return False
    _, idx, _ = _chart(pts)
    proj = [tuple(p[j] for j in idx) for p in pts]
    yp = tuple(y[j] for j in idx)
    for simplex in combinations(proj, k + 1):
        if affine_dimension(list(simplex)) == k and _in_simplex(simplex, yp):
            return True
    return False


def extreme_points(points: Sequence[Point]) -> list[Point]:
    pts = list(dict.fromkeys(as_point(p) for p in points))
    return [p for i, p in enumerate(pts) if len(pts) == 1 or not in_hull(pts[:i] + pts[i + 1:], p)]
