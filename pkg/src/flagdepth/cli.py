"""``flagdepth`` command line: depth, median, region, simulate, reproduce.

Exit codes: 0 success, 1 failed reproduction, 2 bad input, 3 dimension
mismatch, 4 theorem violation recorded by ``simulate``.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .dataio import (
    DatasetParseError,
    parse_point,
    point_json,
    rational_json,
    read_dataset,
)
from .depth import exact_depth
from .geometry import DimensionMismatch, as_scalar, format_scalar
from .lab import dimension_census
from .regions import depth_region, median_2d, median_3d
from .reproduce import EXAMPLES, reproduce_example
from .svg import write_svg

log = logging.getLogger("flagdepth")

EXIT_OK = 0
EXIT_REPRODUCE_FAILED = 1
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_THEOREM = 4


@dataclass
class RunConfig:
    subcommand: str
    input: Path | None = None
    output: Path | None = None
    alpha: Fraction | None = None
    point: tuple[Fraction, ...] | None = None
    seed: int = 0
    trials: int | None = None
    n: int | None = None
    d: int | None = None
    example: str | None = None
    emit_svg: Path | None = None


def _rational_arg(text: str) -> Fraction:
    try:
        return as_scalar(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _point_arg(text: str):
    try:
        return parse_point(text)
    except DatasetParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="flagdepth", description="Exact halfspace depth and median sets.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="subcommand", required=True)

    def data_cmd(name, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--in", dest="input", type=Path, required=True, help="dataset CSV")
        sp.add_argument("--out", dest="output", type=Path, help="write JSON result here")
        return sp

    sp = data_cmd("depth", "exact depth of one point")
    sp.add_argument("--at", dest="point", type=_point_arg, required=True, help="x1,x2[,x3]")

    sp = data_cmd("median", "maximum depth and the median set (d = 2, 3)")
    sp.add_argument("--emit-svg", type=Path, help="SVG picture (planar data only)")

    sp = data_cmd("region", "central region D_alpha")
    sp.add_argument("--alpha", type=_rational_arg, required=True, help="p/q or decimal")
    sp.add_argument("--emit-svg", type=Path)

    sp = sub.add_parser("simulate", help="median-dimension census on Gaussian samples")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--d", type=int, required=True, choices=(2, 3))
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", dest="output", type=Path)

    sp = sub.add_parser("reproduce", help="re-check a worked example")
    sp.add_argument("--example", required=True, choices=EXAMPLES)
    sp.add_argument("--out", dest="output", type=Path)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    keys = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in vars(ns).items() if k in keys and v is not None})


def _emit(cfg: RunConfig, payload: dict, summary: str | None = None) -> None:
    text = json.dumps(payload, indent=2)
    if cfg.output is not None:
        cfg.output.write_text(text + "\n")
        print(summary if summary is not None else f"wrote {cfg.output}")
    else:
        if summary:
            print(summary)
        print(text)


def _show(v) -> str:
    v = Fraction(v)
    return f"{format_scalar(v)} ({float(v):.12g})"


def cmd_depth(cfg: RunConfig) -> int:
    m = read_dataset(cfg.input)
    if len(cfg.point) != m.dim:
        raise DimensionMismatch(f"point has {len(cfg.point)} coordinates, data has {m.dim}")
    res = exact_depth(m, cfg.point)
    depth = res.value.exact
    print(f"depth {_show(depth)}")
    print("flag normals: " + "; ".join(",".join(point_json(u)) for u in res.witness_flag.normals))
    for i, st in enumerate(res.witness_trace):
        print(f"  level {i}: normal {','.join(point_json(st.hyperplane.normal))} "
              f"open mass {_show(st.open_mass)} boundary atoms {list(st.boundary_atoms)}")
    payload = {
        "point": point_json(cfg.point),
        "depth": rational_json(depth),
        "witness_flag": {"center": point_json(res.witness_flag.center),
                         "normals": [point_json(u) for u in res.witness_flag.normals]},
        "trace": [{"normal": point_json(st.hyperplane.normal),
                   "open_mass": rational_json(st.open_mass),
                   "boundary_atoms": list(st.boundary_atoms)} for st in res.witness_trace],
    }
    if cfg.output is not None:
        cfg.output.write_text(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK


def _svg(cfg: RunConfig, m, vertices, title: str) -> None:
    if cfg.emit_svg is None:
        return
    if m.dim != 2:
        log.warning("--emit-svg ignored: data is %d-dimensional", m.dim)
        return
    write_svg(cfg.emit_svg, m.atoms, vertices, title)


def cmd_median(cfg: RunConfig) -> int:
    m = read_dataset(cfg.input)
    if m.dim not in (2, 3):
        raise DimensionMismatch(f"median needs d in {{2, 3}}, data has d={m.dim}")
    med = (median_2d if m.dim == 2 else median_3d)(m)
    for w in med.warnings:
        log.warning(w)
    payload = {
        "alpha_star": rational_json(med.alpha_star),
        "vertices": [point_json(v) for v in med.body.vertices],
        "dimension": med.dimension,
        "classification": med.classification.value,
        "verified": med.verified,
        "warnings": list(med.warnings),
    }
    _svg(cfg, m, med.body.vertices, f"median, depth {format_scalar(med.alpha_star)}")
    _emit(cfg, payload, f"alpha* = {_show(med.alpha_star)}, {med.classification.value}")
    return EXIT_OK


def cmd_region(cfg: RunConfig) -> int:
    m = read_dataset(cfg.input)
    if cfg.alpha <= 0:
        raise DatasetParseError("--alpha must be positive")
    reg = depth_region(m, cfg.alpha)
    payload = {
        "alpha": rational_json(reg.alpha),
        "vertices": [point_json(v) for v in reg.body.vertices],
        "dimension": reg.body.intrinsic_dim,
    }
    _svg(cfg, m, reg.body.vertices, f"D_{format_scalar(reg.alpha)}")
    _emit(cfg, payload, f"D_{format_scalar(reg.alpha)}: {len(reg.body.vertices)} vertices")
    return EXIT_OK


def cmd_simulate(cfg: RunConfig) -> int:
    if cfg.n is None or cfg.n < 1 or cfg.trials is None or cfg.trials < 1:
        raise DatasetParseError("--n and --trials must be positive")
    rep = dimension_census(cfg.n, cfg.d, cfg.trials, cfg.seed)
    payload = rep.to_json()
    dims = ", ".join(f"{k}: {v}" for k, v in sorted(rep.dim_histogram.items()))
    _emit(cfg, payload, f"dimensions {{{dims}}}; theorem violations {len(rep.theorem_violations)}")
    return EXIT_OK if rep.ok else EXIT_THEOREM


def cmd_reproduce(cfg: RunConfig) -> int:
    rep = reproduce_example(cfg.example)
    print(rep.text())
    if cfg.output is not None:
        payload = {"example": rep.example, "passed": rep.passed,
                   "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in rep.checks]}
        cfg.output.write_text(json.dumps(payload, indent=2) + "\n")
    return EXIT_OK if rep.passed else EXIT_REPRODUCE_FAILED


COMMANDS = {"depth": cmd_depth, "median": cmd_median, "region": cmd_region,
            "simulate": cmd_simulate, "reproduce": cmd_reproduce}


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    cfg = config_from_args(ns)
    try:
        return COMMANDS[cfg.subcommand](cfg)
    except DatasetParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION


if __name__ == "__main__":
    sys.exit(main())
