"""Static SVG 1.1 pictures of planar datasets and their depth regions."""
from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .geometry import Point
from .polytope import extreme_points
from .regions import ccw_order

SIZE = 480
MARGIN = 24


def _frame(points: Sequence[Point]):
    xs = [float(p[0]) for p in points]
    ys = [float(p[1]) for p in points]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    s = (SIZE - 2 * MARGIN) / span

    def to_px(p) -> tuple[float, float]:
        return MARGIN + (float(p[0]) - x0) * s, SIZE - MARGIN - (float(p[1]) - y0) * s

    return to_px


def _poly(pts, to_px) -> str:
    return " ".join(f"{x:.3f},{y:.3f}" for x, y in map(to_px, pts))


def _shape(vertices: Sequence[Point], to_px, fill: str, stroke: str, label: str) -> str:
    if not vertices:
        return ""
    if len(vertices) == 1:
        x, y = to_px(vertices[0])
        return (f'<circle class="{label}" cx="{x:.3f}" cy="{y:.3f}" r="6" '
                f'fill="none" stroke="{stroke}" stroke-width="2"/>')
    if len(vertices) == 2:
        (xa, ya), (xb, yb) = map(to_px, vertices)
        return (f'<line class="{label}" x1="{xa:.3f}" y1="{ya:.3f}" x2="{xb:.3f}" y2="{yb:.3f}" '
                f'stroke="{stroke}" stroke-width="3"/>')
    return (f'<polygon class="{label}" points="{_poly(ccw_order(vertices), to_px)}" '
            f'fill="{fill}" stroke="{stroke}" stroke-width="1.5"/>')


def render_svg(atoms: Sequence[Point], region: Sequence[Point] = (), title: str = "") -> str:
    """Convex hull of ``atoms``, the atoms themselves, and ``region`` on top.

    ``region`` may be empty, a point, a segment or a polygon's vertices.
    """
    if any(len(p) != 2 for p in atoms):
        raise ValueError("SVG output is only available for planar data")
    to_px = _frame(list(atoms) + list(region))
    hull = extreme_points(atoms)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
    ]
    if title:
        parts.append(f"<title>{title}</title>")
    parts.append(_shape(hull, to_px, "#f2f2f2", "#888888", "hull"))
    parts.append(_shape(list(region), to_px, "#9ecae1", "#08519c", "region"))
    for p in atoms:
        x, y = to_px(p)
        parts.append(f'<circle class="atom" cx="{x:.3f}" cy="{y:.3f}" r="3" fill="#000000"/>')
    parts.append("</svg>")
    return "\n".join(p for p in parts if p) + "\n"


def write_svg(path: str | Path, atoms, region=(), title: str = "") -> None:
    Path(path).write_text(render_svg(atoms, region, title))
