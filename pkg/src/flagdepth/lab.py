"""General-position checks, random samples and median-dimension censuses."""
from __future__ import annotations

import logging
import math
import os
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

import numpy as np

from .fixtures import FIXTURES_VERSION
from .geometry import Point, as_point
from .linalg import common_denominator, int_det, int_normal, int_rank, primitive

log = logging.getLogger(__name__)

PRECISION = 10**12


@dataclass(frozen=True)
class GeneralPositionReport:
    in_general_position: bool
    violating_subset: tuple[int, ...] | None = None
    three_line_ok: bool = True
    violating_sextuple: tuple[int, ...] | None = None


def _line_meet(p, q, r, s) -> tuple[int, ...] | None:
    """Unique common point of lines ``pq`` and ``rs`` (integer coordinates),
    as a primitive homogeneous vector with positive last entry."""
    d = len(p)
    u = [b - a for a, b in zip(p, q)]
    v = [b - a for a, b in zip(r, s)]
    w = [b - a for a, b in zip(p, r)]
    for i, j in combinations(range(d), 2):
        den = v[i] * u[j] - u[i] * v[j]
        if den:
            break
    else:
        return None
    # p + a u = r + b v with a = an / den, b = bn / den
    an = v[i] * w[j] - w[i] * v[j]
    bn = u[i] * w[j] - w[i] * u[j]
    if any(den * w[k] != an * u[k] - bn * v[k] for k in range(d)):
        return None
    if den < 0:
        den, an = -den, -an
    return primitive([den * pk + an * uk for pk, uk in zip(p, u)] + [den])


def _dependent(diffs: list[list[int]], d: int) -> bool:
    k = len(diffs)
    if k == 0:
        return False
    if k == d:
        return int_det(diffs) == 0
    if k == d - 1:
        return not any(int_normal(diffs))
    return int_rank(diffs) < k


def check_general_position(points: Sequence[Sequence]) -> GeneralPositionReport:
    """Exact test of both general-position conditions for random samples.

    (i) no ``k`` points lie in a ``(k-2)``-flat for ``k = 2..d+1``;
    (ii) for ``d >= 2`` no three lines through disjoint point pairs share a point.
    """
    pts = [as_point(p) for p in points]
    n = len(pts)
    d = len(pts[0])
    scale = common_denominator([c for p in pts for c in p])
    z = [tuple(int(c * scale) for c in p) for p in pts]
    bad = None
    if len(set(z)) < n:
        seen: dict = {}
        for i, p in enumerate(z):
            if p in seen:
                bad = (seen[p], i)
                break
            seen[p] = i
    else:
        for k in range(3, min(n, d + 1) + 1):
            bad = next((c for c in combinations(range(n), k)
                        if _dependent([[a - b for a, b in zip(z[i], z[c[0]])] for i in c[1:]], d)),
                       None)
            if bad is not None:
                break
    three_ok, sextuple = True, None
    if d >= 2 and n >= 6:
        meets: dict[tuple[int, ...], list[tuple[int, int]]] = {}
        pairs = list(combinations(range(n), 2))
        for (i, j), (k, l) in combinations(pairs, 2):
            if len({i, j, k, l}) < 4:
                continue
            pt = _line_meet(z[i], z[j], z[k], z[l])
            if pt is None:
                continue
            lines = meets.setdefault(pt, [])
            for line in ((i, j), (k, l)):
                if line not in lines:
                    lines.append(line)
        for lines in meets.values():
            for trio in combinations(lines, 3):
                idx = [i for line in trio for i in line]
                if len(set(idx)) == 6:
                    three_ok, sextuple = False, tuple(idx)
                    break
            if not three_ok:
                break
    return GeneralPositionReport(bad is None, bad, three_ok, sextuple)


def _rationalize(z: float) -> Fraction:
    return Fraction(round(z * PRECISION), PRECISION)


def _gaussians(rng: np.random.Generator, count: int) -> list[float]:
    """Box–Muller pairs from uniform draws."""
    out = []
    while len(out) < count:
        u1 = 1.0 - rng.random()
        u2 = rng.random()
        r = math.sqrt(-2.0 * math.log(u1))
        out.extend((r * math.cos(2 * math.pi * u2), r * math.sin(2 * math.pi * u2)))
    return out[:count]


def sample_points(n: int, d: int, seed: int, max_tries: int = 100) -> list[Point]:
    """Standard Gaussian sample rationalised to 1e-12, in general position.

    Uniforms come from the counter-based Philox generator keyed by ``seed``.
    A sample failing either general-position condition is redrawn.
    """
    if n < 1 or d < 1:
        raise ValueError("n and d must be positive")
    rng = np.random.Generator(np.random.Philox(seed))
    for _ in range(max_tries):
        z = _gaussians(rng, n * d)
        pts = [tuple(_rationalize(v) for v in z[i * d:(i + 1) * d]) for i in range(n)]
        gp = check_general_position(pts)
        if gp.in_general_position and gp.three_line_ok:
            return pts
    raise RuntimeError(f"no general-position sample after {max_tries} draws")


@dataclass
class CensusReport:
    n: int
    d: int
    trials: int
    seed: int
    dim_histogram: dict[int, int] = field(default_factory=dict)
    classification_histogram: dict[str, int] = field(default_factory=dict)
    alpha_histogram: dict[str, int] = field(default_factory=dict)
    violations: list[int] = field(default_factory=list)
    theorem_violations: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.theorem_violations

    def to_json(self) -> dict:
        return {
            "params": {"n": self.n, "d": self.d, "trials": self.trials, "seed": self.seed},
            "histograms": {
                "dimension": {str(k): v for k, v in sorted(self.dim_histogram.items())},
                "classification": dict(sorted(self.classification_histogram.items())),
                "alpha_star": dict(sorted(self.alpha_histogram.items())),
            },
            "violations": {
                "general_position_resampled": list(self.violations),
                "theorem": list(self.theorem_violations),
            },
            "fixtures_version": FIXTURES_VERSION,
        }


def _trial(args) -> dict:
    from .measures import AtomicMeasure
    from .regions import median_2d, median_3d

    n, d, trial_seed, verify = args
    rng = np.random.Generator(np.random.Philox(trial_seed))
    resampled = False
    for attempt in range(100):
        z = _gaussians(rng, n * d)
        pts = [tuple(_rationalize(v) for v in z[i * d:(i + 1) * d]) for i in range(n)]
        gp = check_general_position(pts)
        if gp.in_general_position and gp.three_line_ok:
            break
        resampled = True
    m = AtomicMeasure.from_points(pts)
    med = (median_2d if d == 2 else median_3d)(m, verify=verify)
    return {
        "dimension": med.dimension,
        "classification": med.classification.value,
        "alpha_star": med.alpha_star,
        "verified": med.verified,
        "resampled": resampled,
        "points": pts,
    }


def theorem_violation(n: int, d: int, dimension: int, classification: str) -> str | None:
    """Which proven statement (if any) a general-position median contradicts."""
    if n != d and d >= 2 and dimension == d - 1:
        return "median set of dimension d-1"
    if d == 2 and n != 4 and dimension == 0 and classification != "Atom":
        return "planar single-point median is not an atom"
    return None


def worker_count() -> int:
    cap = os.environ.get("FLAGDEPTH_THREADS")
    cpus = os.cpu_count() or 1
    return max(1, min(cpus, int(cap))) if cap else cpus


def dimension_census(n: int, d: int, trials: int, seed: int, verify: bool = False,
                     workers: int | None = None) -> CensusReport:
    """Median dimension histogram over ``trials`` general-position samples.

    Trial ``i`` uses the generator keyed by ``seed ^ i``, so reports do not
    depend on scheduling.
    """
    if d not in (2, 3):
        raise ValueError("census supports d in {2, 3}")
    workers = worker_count() if workers is None else workers
    jobs = [(n, d, seed ^ i, verify) for i in range(trials)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_trial, jobs, chunksize=8))
    else:
        results = [_trial(j) for j in jobs]
    report = CensusReport(n, d, trials, seed)
    dims, classes, alphas = Counter(), Counter(), Counter()
    for i, r in enumerate(results):
        dims[r["dimension"]] += 1
        classes[r["classification"]] += 1
        a = r["alpha_star"]
        alphas[f"{a.numerator}/{a.denominator}"] += 1
        if r["resampled"]:
            report.violations.append(i)
        why = theorem_violation(n, d, r["dimension"], r["classification"])
        if why or not r["verified"]:
            report.theorem_violations.append({
                "trial": i,
                "seed": seed ^ i,
                "reason": why or "median self-check failed",
                "dimension": r["dimension"],
                "classification": r["classification"],
                "points": [[str(c) for c in p] for p in r["points"]],
            })
    report.dim_histogram = dict(dims)
    report.classification_histogram = dict(classes)
    report.alpha_histogram = dict(alphas)
    return report
