"""Central regions ``D_alpha``, maximum depth and the halfspace median set.

Regions are computed as ``Q_alpha``, the intersection of the closed sides
of atom-spanned hyperplanes whose open complement carries mass below
``alpha``. ``D_alpha ⊆ Q_alpha`` always holds, so once every vertex of
``Q_alpha`` is checked to have exact depth ``>= alpha`` the two coincide.
When that check fails (degenerate data) the region is rebuilt from the
vertices of the arrangement of atom-spanned hyperplanes: depth is constant
on the relatively open faces of that arrangement, so ``D_alpha`` is the hull
of the arrangement vertices of depth ``>= alpha``.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Callable, Sequence

from .depth import _angle_cmp, depth_value
from .geometry import DimensionMismatch, Point, affine_dimension, as_point, as_scalar
from .linalg import common_denominator, int_dot, int_normal, primitive, solve_int_system
from .measures import AtomicMeasure
from .polytope import ConvexPolytope, _chart, extreme_points, intersect_halfspaces

log = logging.getLogger(__name__)


class Classification(str, Enum):
    FULL_DIMENSIONAL = "FullDimensional"
    ATOM = "Atom"
    NON_ATOM_POINT = "NonAtomPoint"
    SEGMENT = "Segment"
    OTHER = "Other"


@dataclass(frozen=True)
class DepthRegion:
    alpha: Fraction
    body: ConvexPolytope


@dataclass(frozen=True)
class MedianResult:
    alpha_star: Fraction
    body: ConvexPolytope
    dimension: int
    classification: Classification
    verified: bool = True
    warnings: tuple[str, ...] = field(default=())


class _Problem:
    """A full-dimensional atomic measure in integer coordinates, plus the
    cached hyperplane family and depth evaluations."""

    def __init__(self, m: AtomicMeasure):
        self.m = m
        self.d = m.dim
        self.L = common_denominator([c for a in m.atoms for c in a])
        self.A = [tuple(int(c * self.L) for c in a) for a in m.atoms]
        self.lo = [min(a[j] for a in self.A) - 1 for j in range(self.d)]
        self.hi = [max(a[j] for a in self.A) + 1 for j in range(self.d)]
        self._depth: dict[Point, Fraction] = {}
        self.planes = self._planes()

    def _planes(self):
        planes = {}
        for combo in combinations(range(len(self.A)), self.d):
            p0 = self.A[combo[0]]
            n = int_normal([tuple(x - y for x, y in zip(self.A[c], p0)) for c in combo[1:]])
            if not any(n):
                continue
            n = primitive(n)
            c = int_dot(n, p0)
            on, pos, neg = [], Fraction(0), Fraction(0)
            for i, (a, w) in enumerate(zip(self.A, self.m.weights)):
                s = int_dot(n, a) - c
                if s > 0:
                    pos += w
                elif s < 0:
                    neg += w
                else:
                    on.append(i)
            planes.setdefault(tuple(on), (n, c, pos, neg))
        return list(planes.values())

    def depth(self, y: Point) -> Fraction:
        if y not in self._depth:
            self._depth[y] = depth_value(self.m, y)
        return self._depth[y]

    def constraints(self, keep: Callable[[Fraction], bool]):
        out = []
        for n, c, pos, neg in self.planes:
            if keep(neg):
                out.append((tuple(-v for v in n), -c))
            if keep(pos):
                out.append((n, c))
        return out

    def polytope(self, cons) -> list[Point]:
        verts = intersect_halfspaces(cons, self.lo, self.hi)
        return [tuple(v / self.L for v in p) for p, _ in verts]

    def arrangement_vertices(self, cons) -> list[Point]:
        """Vertices of the hyperplane arrangement lying inside ``cons``."""
        found = set()
        for group in combinations(self.planes, self.d):
            sol = solve_int_system([g[0] for g in group], [g[1] for g in group])
            if sol is None:
                continue
            num, den = sol
            if all(int_dot(a, num) <= b * den for a, b in cons):
                found.add(tuple(Fraction(v, den * self.L) for v in num))
        for a in self.m.atoms:
            if all(int_dot(c, [v * self.L for v in a]) <= b for c, b in cons):
                found.add(a)
        return sorted(found)

    def region(self, alpha: Fraction) -> ConvexPolytope:
        cons = self.constraints(lambda mass: mass < alpha)
        verts = self.polytope(cons)
        if all(self.depth(v) >= alpha for v in verts):
            return self._body(verts, cons)
        log.info("H-description not tight at alpha=%s; using arrangement vertices", alpha)
        cand = [v for v in self.arrangement_vertices(cons) if self.depth(v) >= alpha]
        return ConvexPolytope(tuple(extreme_points(cand)), self.d)

    def _body(self, verts, cons) -> ConvexPolytope:
        hs = tuple((tuple(Fraction(v) for v in a), Fraction(b, self.L)) for a, b in cons)
        return ConvexPolytope(tuple(verts), self.d, hs)

    def median(self) -> tuple[Fraction, ConvexPolytope]:
        best = max(self.depth(a) for a in self.m.atoms)
        last = None
        while True:
            cons = self.constraints(lambda mass: mass <= best)
            verts = self.polytope(cons)
            if not verts:
                break
            top = max(self.depth(v) for v in verts)
            if top > best:
                best, last = top, (verts, cons)
                continue
            extra = [v for v in self.arrangement_vertices(cons) if self.depth(v) > best]
            if not extra:
                break
            best, last = max(self.depth(v) for v in extra), None
        if last is not None and all(self.depth(v) == best for v in last[0]):
            return best, self._body(*last)
        return best, self.region(best)


def _reduced(m: AtomicMeasure):
    """Full-dimensional restatement of ``m`` inside its affine hull."""
    k = affine_dimension(m.atoms)
    if k == m.dim:
        return m, None
    base, idx, back = _chart(list(m.atoms))
    atoms = tuple(tuple(a[j] for j in idx) for a in m.atoms)
    return AtomicMeasure(atoms, m.weights, k), back


def _lift_body(body: ConvexPolytope, back, d: int) -> ConvexPolytope:
    if back is None:
        return body
    return ConvexPolytope(tuple(back(v) for v in body.vertices), d)


def _zero_dim(m: AtomicMeasure, alpha: Fraction) -> ConvexPolytope:
    (a,) = m.atoms
    return ConvexPolytope((a,) if alpha <= m.weights[0] else (), m.dim)


def depth_region(m: AtomicMeasure, alpha) -> DepthRegion:
    """``D_alpha`` for ``alpha > 0`` in any dimension (desk scale: ``d <= 3``)."""
    alpha = as_scalar(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive (D_alpha is unbounded otherwise)")
    red, back = _reduced(m)
    if red.dim == 0:
        return DepthRegion(alpha, _zero_dim(m, alpha))
    body = _lift_body(_Problem(red).region(alpha), back, m.dim)
    if m.dim == 2 and body.intrinsic_dim == 2:
        body = ConvexPolytope(tuple(ccw_order(body.vertices)), 2, body.halfspaces)
    return DepthRegion(alpha, body)


def depth_region_2d(m: AtomicMeasure, alpha) -> DepthRegion:
    if m.dim != 2:
        raise DimensionMismatch("depth_region_2d needs planar data")
    return depth_region(m, alpha)


def ccw_order(vertices: Sequence[Point]) -> list[Point]:
    n = len(vertices)
    cx = sum((v[0] for v in vertices), Fraction(0)) / n
    cy = sum((v[1] for v in vertices), Fraction(0)) / n
    return sorted(vertices, key=cmp_to_key(
        lambda a, b: _angle_cmp((a[0] - cx, a[1] - cy), (b[0] - cx, b[1] - cy))))


def max_depth(m: AtomicMeasure) -> Fraction:
    return _median_core(m)[0]


def _median_core(m: AtomicMeasure) -> tuple[Fraction, ConvexPolytope]:
    red, back = _reduced(m)
    if red.dim == 0:
        return m.weights[0], ConvexPolytope(m.atoms, m.dim)
    alpha, body = _Problem(red).median()
    return alpha, _lift_body(body, back, m.dim)


def region_contains(r: DepthRegion, y: Sequence) -> bool:
    y = as_point(y)
    if len(y) != r.body.ambient_dim:
        raise DimensionMismatch("point and region differ in dimension")
    return r.body.contains(y)


def classify(body: ConvexPolytope, m: AtomicMeasure) -> tuple[int, Classification]:
    dim = body.intrinsic_dim
    if dim == m.dim:
        return dim, Classification.FULL_DIMENSIONAL
    if dim == 0:
        atom = body.vertices[0] in set(m.atoms)
        return 0, Classification.ATOM if atom else Classification.NON_ATOM_POINT
    if dim == 1:
        return 1, Classification.SEGMENT
    return dim, Classification.OTHER


def _probe(m: AtomicMeasure, alpha: Fraction, body: ConvexPolytope) -> bool:
    """Relative-interior point keeps depth ``alpha``; points pushed outward lose it."""
    verts = body.vertices
    n = len(verts)
    centre = tuple(sum((v[j] for v in verts), Fraction(0)) / n for j in range(m.dim))
    if depth_value(m, centre) != alpha:
        return False
    eps = Fraction(1, 1000)
    outward = []
    if n == 1:
        for j in range(m.dim):
            for s in (1, -1):
                outward.append(tuple(c + s * eps * (i == j) for i, c in enumerate(centre)))
    else:
        outward = [tuple(v_j + eps * (v_j - c_j) for v_j, c_j in zip(v, centre)) for v in verts]
    return all(depth_value(m, p) < alpha for p in outward)


def _median(m: AtomicMeasure, d: int, verify: bool) -> MedianResult:
    if m.dim != d:
        raise DimensionMismatch(f"median_{d}d needs {d}-dimensional data")
    from .lab import check_general_position

    alpha, body = _median_core(m)
    if d == 2 and body.intrinsic_dim == 2:
        body = ConvexPolytope(tuple(ccw_order(body.vertices)), 2, body.halfspaces)
    dim, cls = classify(body, m)
    warnings = []
    gp = check_general_position(m.atoms)
    if not gp.in_general_position:
        warnings.append(f"atoms not in general position (subset {list(gp.violating_subset)})")
    if not gp.three_line_ok:
        warnings.append(f"three lines through atom pairs meet in a point (indices {list(gp.violating_sextuple)})")
    ok = _probe(m, alpha, body) if verify else True
    return MedianResult(alpha, body, dim, cls, ok, tuple(warnings))


def median_2d(m: AtomicMeasure, verify: bool = True) -> MedianResult:
    return _median(m, 2, verify)


def median_3d(m: AtomicMeasure, verify: bool = True) -> MedianResult:
    return _median(m, 3, verify)
