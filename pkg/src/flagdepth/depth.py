"""Exact halfspace depth with minimising flag-halfspace witnesses.

``exact_depth`` evaluates the boundary recursion
``D(x) = min_H mu(int H) + D(x; mu restricted to bd H)`` over the hyperplanes
through ``x`` spanned by ``d-1`` atoms. For atomic measures this finite family
is exhaustive: the optimal closed halfspace lies in an open cell of the
great-circle arrangement of directions, every such cell touches a vertex
direction (a hyperplane spanned by ``d-1`` atom offsets), and at that vertex
the recursion value never exceeds the cell value. When the atom offsets do
not span, a single hyperplane containing them all is used instead.

All arithmetic inside the recursion is on Python ints: offsets are scaled by
a common denominator (depth is invariant under positive scaling about ``x``).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from itertools import combinations
from typing import Sequence

import numpy as np

from .geometry import FlagHalfspace, Hyperplane, Point, as_point, DimensionMismatch
from .linalg import (
    IntVec,
    common_denominator,
    int_dot,
    int_normal,
    int_nullvector,
    int_rank,
    primitive,
)
from .measures import (
    DISK_ERROR,
    AtomicMeasure,
    DiskMixtureMeasure,
    MassValue,
    Measure,
    segment_fraction,
)

__all__ = [
    "TraceStep",
    "DepthResult",
    "exact_depth",
    "depth_value",
    "depth_1d",
    "depth_sweep_2d",
    "minimizing_flag",
    "sampled_depth_upper_bound",
    "mixture_depth_2d",
]


@dataclass(frozen=True)
class TraceStep:
    """One recursion level: boundary normal, mass of the open side taken, and
    the indices of atoms left on the boundary (atoms at ``x`` excluded)."""

    hyperplane: Hyperplane
    open_mass: Fraction | float
    boundary_atoms: tuple[int, ...]


@dataclass(frozen=True)
class DepthResult:
    value: MassValue
    witness_flag: FlagHalfspace
    witness_trace: tuple[TraceStep, ...]
    attained: bool | None = None


# --- integer recursion -----------------------------------------------------

_Step = tuple[IntVec, int, tuple[int, ...]]


def _neg(v: IntVec) -> IntVec:
    return tuple(-c for c in v)


def _lift(w: IntVec, n: IntVec, j: int) -> IntVec:
    """Map a chart normal back into ``n``'s orthogonal complement.

    The chart drops coordinate ``j``; the lifted vector ``u`` satisfies
    ``<v, u> = (n.n) <v without j, w>`` for every ``v`` orthogonal to ``n``.
    """
    e = w[:j] + (0,) + w[j:]
    nn = int_dot(n, n)
    en = int_dot(e, n)
    return primitive([nn * a - en * b for a, b in zip(e, n)])


def _project(items, j: int):
    return tuple((i, v[:j] + v[j + 1:]) for i, v in items)


def _descend(n: IntVec, on_items, k: int, w) -> tuple[int, list[_Step]]:
    j = next(i for i, c in enumerate(n) if c)
    val, steps = _level(_project(on_items, j), k - 1, w)
    return val, [(_lift(u, n, j), m, b) for u, m, b in steps]


def _level(items, k: int, w) -> tuple[int, list[_Step]]:
    """Depth of the origin w.r.t. nonzero integer vectors ``items`` in ``Z^k``.

    Returns the value (in scaled integer weight units) and the chain of
    normals ``u_k, ..., u_1`` with per-level open masses.
    """
    if k == 1:
        left = sum(w[i] for i, v in items if v[0] < 0)
        right = sum(w[i] for i, v in items if v[0] > 0)
        if right < left:
            return right, [((1,), right, ())]
        return left, [((-1,), left, ())]
    if not items:
        basis = [tuple(int(r == c) for c in range(k)) for r in range(k)]
        return 0, [(b, 0, ()) for b in basis]
    vecs = [v for _, v in items]
    if int_rank(vecs) < k:
        n = int_nullvector(vecs, k)
        n = min(n, _neg(n))
        val, steps = _descend(n, items, k, w)
        return val, [(n, 0, tuple(i for i, _ in items))] + steps

    planes: dict[tuple[int, ...], tuple[IntVec, int, int]] = {}
    for combo in combinations(range(len(items)), k - 1):
        n = int_normal([vecs[c] for c in combo])
        if not any(n):
            continue
        on = []
        pos = neg = 0
        for idx, (i, v) in enumerate(items):
            s = int_dot(n, v)
            if s > 0:
                pos += w[i]
            elif s < 0:
                neg += w[i]
            else:
                on.append(idx)
        key = tuple(on)
        if key not in planes:
            planes[key] = (primitive(n), pos, neg)

    best: tuple[int, IntVec] | None = None
    best_steps: list[_Step] = []
    for key, (n, pos, neg) in planes.items():
        if best is not None and min(pos, neg) > best[0]:
            continue
        on_items = [items[idx] for idx in key]
        sub_val, sub_steps = _descend(n, on_items, k, w)
        on_ids = tuple(items[idx][0] for idx in key)
        for open_mass, normal in ((pos, n), (neg, _neg(n))):
            cand = (open_mass + sub_val, normal)
            if best is None or cand < best:
                best = cand
                best_steps = [(normal, open_mass, on_ids)] + sub_steps
    return best[0], best_steps


def _scaled_problem(m: AtomicMeasure, x: Point):
    L = common_denominator([c for a in m.atoms for c in a] + list(x))
    W = common_denominator(m.weights)
    w = [int(wi * W) for wi in m.weights]
    xs = [c * L for c in x]
    items = []
    w0 = 0
    for i, a in enumerate(m.atoms):
        v = tuple(int(c * L - xc) for c, xc in zip(a, xs))
        if any(v):
            items.append((i, v))
        else:
            w0 += w[i]
    return tuple(items), w, w0, W


def _check_point(m: Measure, x) -> Point:
    x = as_point(x)
    if len(x) != m.dim:
        raise DimensionMismatch(f"point has dimension {len(x)}, measure {m.dim}")
    return x


def depth_value(m: AtomicMeasure, x: Sequence) -> Fraction:
    """Exact depth value only (no witness objects built)."""
    x = _check_point(m, x)
    items, w, w0, W = _scaled_problem(m, x)
    if m.dim == 0:
        return Fraction(w0, W)
    val, _ = _level(items, m.dim, w)
    return Fraction(val + w0, W)


def exact_depth(m: AtomicMeasure, x: Sequence) -> DepthResult:
    x = _check_point(m, x)
    if m.dim == 0:
        raise ValueError("depth in dimension 0 is the weight at the point")
    items, w, w0, W = _scaled_problem(m, x)
    val, steps = _level(items, m.dim, w)
    normals = tuple(tuple(Fraction(c) for c in u) for u, _, _ in steps)
    trace = tuple(
        TraceStep(Hyperplane(x, u), Fraction(om, W), b)
        for u, (_, om, b) in zip(normals, steps)
    )
    return DepthResult(MassValue.of(Fraction(val + w0, W)), FlagHalfspace(x, normals), trace)


def minimizing_flag(m: AtomicMeasure, x: Sequence) -> FlagHalfspace:
    return exact_depth(m, x).witness_flag


def depth_1d(m: AtomicMeasure, x: Sequence) -> DepthResult:
    """Weight at ``x`` plus the lighter open halfline."""
    x = _check_point(m, x)
    if m.dim != 1:
        raise DimensionMismatch("depth_1d needs a measure on the line")
    (x0,) = x
    at = sum((w for (a,), w in zip(m.atoms, m.weights) if a == x0), Fraction(0))
    left = sum((w for (a,), w in zip(m.atoms, m.weights) if a < x0), Fraction(0))
    right = sum((w for (a,), w in zip(m.atoms, m.weights) if a > x0), Fraction(0))
    u, lighter = ((Fraction(1),), right) if right < left else ((Fraction(-1),), left)
    flag = FlagHalfspace(x, (u,))
    return DepthResult(MassValue.of(at + lighter), flag, (TraceStep(Hyperplane(x, u), lighter, ()),))


# --- planar sweep (independent oracle) ------------------------------------


def _half(v) -> int:
    return 0 if v[1] > 0 or (v[1] == 0 and v[0] > 0) else 1


def _angle_cmp(a, b) -> int:
    ha, hb = _half(a), _half(b)
    if ha != hb:
        return ha - hb
    cr = a[0] * b[1] - a[1] * b[0]
    return -1 if cr > 0 else (1 if cr < 0 else 0)


def _critical_directions(vectors) -> list[IntVec]:
    crit = set()
    for v in vectors:
        r = primitive((-v[1], v[0]))
        crit.add(r)
        crit.add(_neg(r))
    return sorted(crit, key=cmp_to_key(_angle_cmp))


def _between(u, v) -> IntVec:
    """A direction strictly inside the counter-clockwise arc from ``u`` to ``v``."""
    if u[0] * v[1] - u[1] * v[0] > 0:
        return primitive((u[0] + v[0], u[1] + v[1]))
    return (-u[1], u[0])


def depth_sweep_2d(m: AtomicMeasure, x: Sequence) -> DepthResult:
    """Planar depth by exhaustive angular sweep over critical directions.

    Every direction orthogonal to an atom offset is critical; between two
    consecutive critical directions the closed-halfplane count is constant,
    so checking each critical direction and one direction per open arc
    covers the whole circle.
    """
    x = _check_point(m, x)
    if m.dim != 2:
        raise DimensionMismatch("depth_sweep_2d needs planar data")
    items, w, w0, W = _scaled_problem(m, x)
    vecs = [v for _, v in items]
    crit = _critical_directions(vecs)
    if not crit:
        reps = [(1, 0)]
    else:
        reps = [_between(crit[i], crit[(i + 1) % len(crit)]) for i in range(len(crit))]

    def closed(u):
        return w0 + sum(w[i] for i, v in items if v[0] * u[0] + v[1] * u[1] >= 0)

    best_val = min(closed(u) for u in crit + reps)
    rep = min(u for u in reps if closed(u) == best_val)
    normals = ((Fraction(rep[0]), Fraction(rep[1])), (Fraction(-rep[1]), Fraction(rep[0])))
    open_mass = Fraction(best_val - w0, W)
    trace = (TraceStep(Hyperplane(x, normals[0]), open_mass, ()),
             TraceStep(Hyperplane(x, normals[1]), Fraction(0), ()))
    return DepthResult(MassValue.of(Fraction(best_val, W)), FlagHalfspace(x, normals), trace)


# --- sampled upper bound ---------------------------------------------------


def _random_directions(n_dirs: int, d: int, seed) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(seed))
    dirs = rng.standard_normal((n_dirs, d))
    dirs[~dirs.any(axis=1), 0] = 1.0
    return dirs


def sampled_depth_upper_bound(m: Measure, x: Sequence, n_dirs: int, seed=0,
                              directions: np.ndarray | None = None) -> MassValue:
    """Minimum closed-halfspace mass over pseudo-random inner normals.

    Each sampled float direction is taken as the exact rational it denotes;
    inner products too close to zero for floating point are re-evaluated
    exactly, so the atomic part never undercounts.
    """
    x = _check_point(m, x)
    if n_dirs < 1:
        raise ValueError("n_dirs must be positive")
    dirs = (np.asarray(directions, dtype=float) if directions is not None
            else _random_directions(n_dirs, m.dim, seed))
    atomic = m.atomic if isinstance(m, DiskMixtureMeasure) else m
    diffs = [tuple(a_c - x_c for a_c, x_c in zip(a, x)) for a in atomic.atoms]
    wts = np.array([float(wi) for wi in atomic.weights])
    if diffs:
        D = np.array([[float(c) for c in v] for v in diffs])
        P = dirs @ D.T
        tol = 1e-9 * (np.abs(dirs) @ np.abs(D).T + 1e-300)
        inside = P >= 0
        for r, c in zip(*np.nonzero(np.abs(P) <= tol)):
            exact = sum(Fraction(float(dv)) * cv for dv, cv in zip(dirs[r], diffs[c]))
            inside[r, c] = exact >= 0
        masses = inside.astype(float) @ wts
    else:
        inside = np.zeros((len(dirs), 0), dtype=bool)
        masses = np.zeros(len(dirs))

    if isinstance(m, DiskMixtureMeasure):
        norms = np.hypot(dirs[:, 0], dirs[:, 1])
        delta = np.array([float(c) for c in (x[0] - m.disk_center[0], x[1] - m.disk_center[1])])
        t = (dirs @ delta) / norms
        r = float(m.disk_radius)
        tc = np.clip(t, -r, r)
        seg = (r * r * np.arccos(tc / r) - tc * np.sqrt(r * r - tc * tc)) / (math.pi * r * r)
        total = masses + float(m.disk_weight) * seg
        return MassValue(None, float(total.min()), DISK_ERROR)

    patterns = np.unique(inside[masses <= masses.min() + 1e-9], axis=0)
    exact = min(sum((wi for wi, ins in zip(atomic.weights, row) if ins), Fraction(0))
                for row in patterns)
    return MassValue.of(exact)


# --- disk mixture ----------------------------------------------------------


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _same_dir(a, b) -> bool:
    return _cross(a, b) == 0 and a[0] * b[0] + a[1] * b[1] > 0


def _in_closed_arc(u, v, d) -> bool:
    """Is direction ``d`` in the closed counter-clockwise arc from ``u`` to ``v``?"""
    if _same_dir(d, u) or _same_dir(d, v):
        return True
    if _cross(u, v) > 0:
        return _cross(u, d) > 0 and _cross(d, v) > 0
    return _cross(u, d) > 0


def mixture_depth_2d(m: DiskMixtureMeasure, x: Sequence) -> DepthResult:
    """Depth w.r.t. a disk-plus-atoms mixture, with a minimising flag.

    Between consecutive critical directions the atomic part of the open
    halfplane is constant and the disk part is a continuous function of the
    angle, maximised in the direction of ``x - centre``. The infimum over an
    open arc is therefore the atomic count plus the disk minimum over the
    closed arc; it is attained by a closed halfplane unless the minimum sits
    at an arc endpoint where some boundary atom falls outside the arc's side.
    """
    x = _check_point(m, x)
    L = common_denominator([c for a in m.atoms for c in a] + list(x) + list(m.disk_center))
    atoms = [tuple(int((a_c - x_c) * L) for a_c, x_c in zip(a, x)) for a in m.atoms]
    wts = list(m.weights)
    w0 = sum((wt for v, wt in zip(atoms, wts) if not any(v)), Fraction(0))
    items = [(v, wt) for v, wt in zip(atoms, wts) if any(v)]
    delta = tuple(int((x_c - c_c) * L) for x_c, c_c in zip(x, m.disk_center))
    r = float(m.disk_radius)

    def disk(u) -> float:
        t = (delta[0] * u[0] + delta[1] * u[1]) / (L * math.hypot(*u))
        return float(m.disk_weight) * segment_fraction(t, r)

    crit = _critical_directions([v for v, _ in items])
    arcs = [(crit[i], crit[(i + 1) % len(crit)]) for i in range(len(crit))] or [(None, None)]

    candidates = []
    for u, v in arcs:
        rep = (1, 0) if u is None else _between(u, v)
        cell_atoms = sum((wt for a, wt in items if a[0] * rep[0] + a[1] * rep[1] > 0), Fraction(0))
        options = []
        if not any(delta):
            options.append((disk(rep), rep, True))
        elif u is None or _in_closed_arc(u, v, delta):
            lead = primitive(delta)
            interior = u is None or not (_same_dir(lead, u) or _same_dir(lead, v))
            options.append((disk(lead), lead, interior or _endpoint_ok(lead, rep, items)))
        else:
            for e in (u, v):
                options.append((disk(e), e, _endpoint_ok(e, rep, items)))
        g = min(o[0] for o in options)
        for gv, lead, ok in options:
            if gv <= g + 1e-15:
                value = float(w0 + cell_atoms) + gv
                candidates.append((value, lead, rep, ok, cell_atoms))

    best_value = min(c[0] for c in candidates)
    winners = [c for c in candidates if c[0] <= best_value + 1e-12]
    attained = any(c[3] for c in winners)
    value, lead, rep, _, cell_atoms = min(winners, key=lambda c: (c[0], c[1]))
    b = (-lead[1], lead[0])
    if b[0] * rep[0] + b[1] * rep[1] < 0:
        b = _neg(b)
    normals = (tuple(map(Fraction, lead)), tuple(map(Fraction, b)))
    flag = FlagHalfspace(x, normals)
    on_line = [(a, wt) for a, wt in items if a[0] * lead[0] + a[1] * lead[1] == 0]
    strictly = sum((wt for a, wt in items if a[0] * lead[0] + a[1] * lead[1] > 0), Fraction(0))
    halfline = sum((wt for a, wt in on_line if a[0] * b[0] + a[1] * b[1] > 0), Fraction(0))
    trace = (TraceStep(Hyperplane(x, normals[0]), float(strictly) + disk(lead), ()),
             TraceStep(Hyperplane(x, normals[1]), halfline, ()))
    return DepthResult(MassValue(None, value, DISK_ERROR), flag, trace, attained)


def _endpoint_ok(e, rep, items) -> bool:
    """Closed halfplane at critical ``e`` loses no boundary atom versus the arc."""
    for a, _ in items:
        if a[0] * e[0] + a[1] * e[1] == 0 and a[0] * rep[0] + a[1] * rep[1] < 0:
            return False
    return True
