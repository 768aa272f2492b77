"""Checks of the worked examples against the frozen fixtures."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import fixtures as fx
from .depth import depth_value, exact_depth, mixture_depth_2d, sampled_depth_upper_bound
from .geometry import ClosedHalfspace, affine_dimension, as_point, format_scalar, side_of, Side
from .lab import check_general_position
from .measures import mass_closed, mass_flag
from .polytope import in_hull
from .regions import Classification, depth_region, median_3d

EXAMPLES = ("ex2.1", "ex3.2-k0", "ex3.2-k1", "ex3.2-k3", "ex4.2")

EX21_VALUE = 1 / 3 - math.sqrt(3) / (4 * math.pi)
EX21_VALUE_TOL = 1e-9
EX21_ATOM_TOL = 1e-9
EX21_MC_TOL = 3e-3


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class ExampleReport:
    example: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(passed), detail))

    def text(self) -> str:
        lines = [f"example {self.example}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  [{mark}] {c.name}" + (f": {c.detail}" if c.detail else ""))
        lines.append("PASSED" if self.passed else "FAILED")
        return "\n".join(lines)


def _fmt_point(p) -> str:
    return "(" + ", ".join(format_scalar(c) for c in p) + ")"


def _ex21(rep: ExampleReport, mc_samples: int = 10**6) -> None:
    m = fx.ex21_measure()
    x = (1, 0)
    res = mixture_depth_2d(m, x)
    val = res.value.approx
    rep.add("depth value", abs(val - EX21_VALUE) <= EX21_VALUE_TOL, f"{val!r} vs {EX21_VALUE!r}")
    rep.add("no minimising closed halfplane", res.attained is False, f"attained={res.attained}")
    normals = tuple(tuple(res.witness_flag.normals))
    rep.add("minimising flag normals", normals == ((1, 0), (0, -1)),
            ", ".join(_fmt_point(u) for u in normals))
    fm = mass_flag(m, res.witness_flag).approx
    rep.add("flag mass equals depth", abs(fm - val) <= 1e-9, f"{fm!r}")
    closed = mass_closed(m, ClosedHalfspace(x, (1, 0))).approx
    rep.add("closed halfplane at (1,0) carries the atom", abs(closed - val - 1) <= EX21_ATOM_TOL,
            f"{closed!r} - depth = {closed - val!r}")
    masses = [mass_closed(m, ClosedHalfspace(x, (math.cos(-1 / n), math.sin(-1 / n)))).approx
              for n in range(1, 1001)]
    mono = all(b <= a + 1e-12 for a, b in zip(masses, masses[1:]))
    rep.add("masses along v_n non-increasing", mono, f"v_1={masses[0]:.6f}")
    rep.add("masses along v_n tend to depth", all(v >= val - 1e-12 for v in masses)
            and masses[-1] - val < 1e-5, f"v_1000 - depth = {masses[-1] - val:.2e}")
    rng = np.random.Generator(np.random.Philox(2024))
    r = 2 * np.sqrt(rng.random(mc_samples))
    theta = 2 * np.pi * rng.random(mc_samples)
    mc = float(np.mean(r * np.cos(theta) > 1))
    rep.add("Monte Carlo disk part", abs(mc - EX21_VALUE) <= EX21_MC_TOL, f"{mc:.5f} from {mc_samples} samples")
    ub = sampled_depth_upper_bound(m, x, 10**4, seed=1).approx
    rep.add("sampled directions never beat the depth", ub >= val - 1e-9, f"{ub!r}")


def _probes(centre, atoms, count: int, seed: int):
    """Seeded rational probe points: half in the atoms' bounding box, half near ``centre``."""
    rng = np.random.Generator(np.random.Philox(seed))
    d = len(centre)
    lo = [float(min(a[j] for a in atoms)) for j in range(d)]
    hi = [float(max(a[j] for a in atoms)) for j in range(d)]
    out = []
    for i in range(count):
        if i % 2:
            z = rng.uniform(lo, hi)
        else:
            z = np.array([float(c) for c in centre]) + rng.uniform(-0.1, 0.1, d)
        out.append(tuple(Fraction(round(v * 10**6), 10**6) for v in z))
    return out


def _median_checks(rep, points, alpha, cls):
    gp = check_general_position(points)
    rep.add("general position", gp.in_general_position and gp.three_line_ok)
    med = median_3d(fx.empirical(points))
    rep.add("maximum depth", med.alpha_star == alpha, format_scalar(med.alpha_star))
    rep.add("median classification", med.classification == cls,
            f"{med.classification.value}, dimension {med.dimension}")
    rep.add("median self-check", med.verified)
    return med


def _ex32_k0(rep: ExampleReport, probes: int = 1000) -> None:
    pts = [as_point(p) for p in fx.EX32_K0]
    m = fx.empirical(pts)
    x8 = pts[7]
    d = exact_depth(m, x8)
    rep.add("depth of x8", d.value.exact == Fraction(3, 8), format_scalar(d.value.exact))
    for i, u in enumerate(fx.EX32_K0_NORMALS, 1):
        h = ClosedHalfspace(x8, u)
        count = sum(side_of(h, a) != Side.OUTSIDE for a in pts)
        rep.add(f"H(x8, u{i}) holds 3 atoms", count == 3, str(count))
    worst = max(depth_value(m, y) for y in _probes(x8, pts, probes, seed=32) if y != x8)
    rep.add(f"{probes} probes have depth <= 2/8", worst <= Fraction(2, 8), format_scalar(worst))
    med = _median_checks(rep, pts, Fraction(3, 8), Classification.ATOM)
    rep.add("median is x8", med.body.vertices == (x8,), ", ".join(map(_fmt_point, med.body.vertices)))


def _ex32_k1(rep: ExampleReport) -> None:
    pts = [as_point(p) for p in fx.EX32_K1]
    med = _median_checks(rep, pts, Fraction(3, 8), Classification.SEGMENT)
    rep.add("median is segment x7-x8", set(med.body.vertices) == {pts[6], pts[7]},
            ", ".join(map(_fmt_point, med.body.vertices)))


def _ex32_k3(rep: ExampleReport) -> None:
    pts = [as_point(p) for p in fx.EX32_K3]
    med = _median_checks(rep, pts, Fraction(2, 8), Classification.FULL_DIMENSIONAL)
    rep.add("median vertices", bool(med.body.vertices), f"{len(med.body.vertices)} vertices")


def _ex42(rep: ExampleReport) -> None:
    pts = [as_point(p) for p in fx.EX42]
    ends = {as_point(p) for p in fx.EX42_ENDPOINTS}
    med = _median_checks(rep, pts, Fraction(3, 8), Classification.SEGMENT)
    verts = med.body.vertices
    rep.add("segment endpoints", set(verts) == ends, ", ".join(map(_fmt_point, verts)))
    rep.add("no atoms in the median", not any(in_hull(verts, a) for a in pts))
    rep.add("median on line(x7, x8)", affine_dimension([pts[6], pts[7], *verts]) == 1)
    d28 = depth_region(fx.empirical(pts), Fraction(2, 8)).body
    rep.add("endpoints inside D_{2/8}", all(d28.contains(e) for e in ends))


_RUNNERS = {"ex2.1": _ex21, "ex3.2-k0": _ex32_k0, "ex3.2-k1": _ex32_k1,
            "ex3.2-k3": _ex32_k3, "ex4.2": _ex42}


def reproduce_example(example: str) -> ExampleReport:
    if example not in _RUNNERS:
        raise ValueError(f"unknown example {example!r}; choose from {', '.join(EXAMPLES)}")
    rep = ExampleReport(example)
    _RUNNERS[example](rep)
    return rep
