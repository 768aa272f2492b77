"""CSV datasets and JSON encodings of exact results."""
from __future__ import annotations

import csv
import io
import json
from importlib import resources
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .geometry import Point, as_scalar, format_scalar
from .measures import AtomicMeasure

WEIGHT_COLUMN = "w"


class DatasetParseError(ValueError):
    pass


def _scalar(text: str, where: str) -> Fraction:
    try:
        return as_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DatasetParseError(f"{where}: cannot parse {text!r} as a number") from exc


def _is_number(text: str) -> bool:
    try:
        as_scalar(text)
    except (ValueError, ZeroDivisionError):
        return False
    return True


def parse_dataset(text: str) -> tuple[list[Point], list[Fraction] | None]:
    """Rows of decimal or ``p/q`` literals; an optional header may name a
    ``w`` weight column. Blank lines and ``#`` comments are skipped."""
    rows = [[c.strip() for c in r] for r in csv.reader(io.StringIO(text))]
    rows = [r for r in rows if r and any(r) and not r[0].startswith("#")]
    if not rows:
        raise DatasetParseError("dataset is empty")
    wcol = None
    if not all(_is_number(c) for c in rows[0]):
        header = [c.lower() for c in rows[0]]
        rows = rows[1:]
        if header.count(WEIGHT_COLUMN) > 1:
            raise DatasetParseError("more than one weight column")
        wcol = header.index(WEIGHT_COLUMN) if WEIGHT_COLUMN in header else None
        width = len(header)
    else:
        width = len(rows[0])
    if not rows:
        raise DatasetParseError("dataset has a header but no rows")
    points, weights = [], []
    for ln, row in enumerate(rows, 1):
        if len(row) != width:
            raise DatasetParseError(f"row {ln}: expected {width} fields, got {len(row)}")
        vals = [_scalar(c, f"row {ln}") for c in row]
        if wcol is not None:
            w = vals.pop(wcol)
            if w < 0:
                raise DatasetParseError(f"row {ln}: negative weight")
            weights.append(w)
        points.append(tuple(vals))
    if not points[0]:
        raise DatasetParseError("no coordinate columns")
    return points, (weights if wcol is not None else None)


def read_dataset(path: str | Path) -> AtomicMeasure:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DatasetParseError(f"cannot read {path}: {exc.strerror}") from exc
    points, weights = parse_dataset(text)
    try:
        return AtomicMeasure.from_points(points, weights)
    except ValueError as exc:
        raise DatasetParseError(str(exc)) from exc


def format_dataset(points: Sequence[Sequence], weights: Sequence | None = None) -> str:
    d = len(points[0])
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow([f"x{i + 1}" for i in range(d)] + ([WEIGHT_COLUMN] if weights is not None else []))
    for i, p in enumerate(points):
        row = [format_scalar(as_scalar(c)) for c in p]
        if weights is not None:
            row.append(format_scalar(as_scalar(weights[i])))
        writer.writerow(row)
    return out.getvalue()


def write_dataset(path: str | Path, points, weights=None) -> None:
    Path(path).write_text(format_dataset(points, weights))


def parse_point(text: str) -> Point:
    parts = [p for p in text.split(",")]
    if not text.strip() or any(not p.strip() for p in parts):
        raise DatasetParseError(f"cannot parse point {text!r}")
    return tuple(_scalar(p, "point") for p in parts)


# --- JSON encodings --------------------------------------------------------


def rational_json(v) -> dict:
    v = Fraction(v)
    return {"exact": format_scalar(v), "decimal": float(v)}


def point_json(p: Sequence) -> list[str]:
    return [format_scalar(Fraction(c)) for c in p]


def point_from_json(p: Sequence[str]) -> Point:
    return tuple(as_scalar(c) for c in p)


def load_schema(name: str) -> dict:
    """JSON schema shipped for the ``name`` result (depth, median, region, census, reproduce)."""
    return json.loads(resources.files("flagdepth").joinpath("schemas", f"{name}.schema.json").read_text())
