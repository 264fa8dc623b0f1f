"""Command-line interface.

Exit status: 0 on success (or a solvable verdict), 2 when an inversion or
check rejects its input with certificates, 1 on malformed input or a
numerical error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import io
from .bodies import Ball, Ellipsoid, MinkowskiSum, Polytope, SupportFunction
from .christoffel2d import berg_invert, forward_polygon, forward_smooth
from .disk_forward import forward
from .errors import DiskChristoffelError, SpecError
from .inverse_solver import SolveReport, error_up_to_translation, invert, invert_density, invert_even
from .measures import CircleMeasure, check_conditions, total_mass
from .sphere_geom import CircleGrid, SphereGrid

COMMANDS = ("forward", "invert", "invert-even", "roundtrip", "check", "body2d-forward", "body2d-invert")

EXIT_OK, EXIT_ERROR, EXIT_REJECTED = 0, 1, 2


@dataclass
class JobConfig:
    """Validated command-line job."""

    command: str
    body: str | None = None
    family: str | None = None
    density: str | None = None
    measure: str | None = None
    planes: int = 128
    circle: int = 512
    tol: float = 1e-6
    out: str | None = None
    report: str | None = None
    table: str | None = None

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise SpecError(f"command: unknown command '{self.command}'")
        if self.planes < 16:
            raise SpecError(f"planes: need at least 16, got {self.planes}")
        if self.circle < 16 or self.circle % 2:
            raise SpecError(f"circle: need an even count of at least 16, got {self.circle}")
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise SpecError(f"tol: must be positive, got {self.tol}")
        sources = {
            "forward": ("body",), "roundtrip": ("body",), "body2d-forward": ("body",),
            "invert": ("family", "density"), "invert-even": ("family",), "check": ("family",),
            "body2d-invert": ("measure",),
        }[self.command]
        given = [s for s in ("body", "family", "density", "measure") if getattr(self, s) is not None]
        if len(given) != 1 or given[0] not in sources:
            names = " or ".join(f"--{s}" for s in sources)
            raise SpecError(f"input: '{self.command}' needs exactly one of {names}")


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _report_doc(rep: SolveReport) -> dict:
    doc = {
        "verdict": rep.verdict,
        "certificates": [c.as_dict() for c in rep.certificates],
        "calibration": rep.calibration,
        "tolerances": rep.tolerances,
    }
    if rep.convexity is not None:
        doc["convexity"] = {"passed": rep.convexity.passed, "worst_violation": rep.convexity.worst_violation,
                            "tol": rep.convexity.tol, "checks": rep.convexity.checks}
    if rep.self_certification:
        doc["self_certification"] = rep.self_certification
    return doc


def _grid(cfg: JobConfig, n: int) -> SphereGrid:
    return SphereGrid.uniform(n, 1 if n == 2 else cfg.planes, cfg.circle)


def _run_forward(cfg):
    K = io.load_body(cfg.body)
    res = forward(K, _grid(cfg, K.dim))
    _emit(io.family_to_json(res.family), cfg.out)
    if cfg.table is not None and res.density is not None:
        _emit(io.sphere_table(res.density.grid, res.density.q, "density"), cfg.table)
    summary = {"total_mass": total_mass(res.family), "pole_mass": list(res.pole_mass_per_pole),
               "rho_min": float(np.min(res.rho)), "rho_max": float(np.max(res.rho)),
               "smooth": res.density is not None}
    if cfg.report is not None or cfg.out is not None:
        # with the family on stdout the summary is only written to a file
        _emit(_dumps(summary), cfg.report)
    return EXIT_OK


def _finish_solve(cfg, rep):
    if rep.h is not None:
        _emit(io.sphere_table(rep.h.grid, rep.h.values, "h"), cfg.out)
    _emit(_dumps(_report_doc(rep)), cfg.report)
    return EXIT_OK if rep.solvable else EXIT_REJECTED


def _run_invert(cfg):
    if cfg.density is not None:
        rep = invert_density(io.density_from_json(Path(cfg.density).read_text()), cfg.tol)
    else:
        rep = invert(io.load_family(cfg.family), cfg.tol)
    return _finish_solve(cfg, rep)


def _run_invert_even(cfg):
    return _finish_solve(cfg, invert_even(io.load_family(cfg.family), cfg.tol))


def _run_roundtrip(cfg):
    K = io.load_body(cfg.body)
    fam = forward(K, _grid(cfg, K.dim)).family
    rep = invert(fam, cfg.tol)
    summary = {"verdict": rep.verdict, "planes": fam.grid.p, "circle": fam.grid.m,
               "certificates": [c.as_dict() for c in rep.certificates]}
    if rep.h is not None:
        summary.update(error_up_to_translation(K, rep.h))
        if cfg.out is not None:
            _emit(io.sphere_table(rep.h.grid, rep.h.values, "h"), cfg.out)
    _emit(_dumps(summary), cfg.report)
    return EXIT_OK if rep.solvable else EXIT_REJECTED


def _run_check(cfg):
    rep = check_conditions(io.load_family(cfg.family), cfg.tol)
    doc = {
        "ok": rep.ok,
        "pushforward": {"ok": rep.pushforward_ok, "modulus": rep.continuity_modulus,
                        "threshold": rep.continuity_threshold, "plane": rep.continuity_location},
        "centering": {"ok": rep.centering_ok, "worst_moment": rep.worst_moment,
                      "plane": rep.worst_moment_plane, "threshold": rep.centering_threshold,
                      "offending_planes": rep.offending_planes},
        "pole_mass": {"ok": rep.pole_ok, "mass": list(rep.pole_mass), "threshold": rep.pole_threshold},
    }
    _emit(_dumps(doc), cfg.out)
    return EXIT_OK if rep.ok else EXIT_REJECTED


def _planar_measure(K: SupportFunction, grid: CircleGrid) -> CircleMeasure:
    if K.dim != 2:
        raise SpecError(f"body: planar commands need a 2-dimensional body, got dimension {K.dim}")
    if isinstance(K, MinkowskiSum):
        mu = CircleMeasure(grid)
        for t in K.terms:
            mu = mu + _planar_measure(t, grid)
        return mu
    if isinstance(K, Polytope):
        return forward_polygon(K.vertices, grid)
    if isinstance(K, (Ball, Ellipsoid)):
        return forward_smooth(K.support(grid.frame_points()), grid)
    raise SpecError(f"body: no planar forward path for type {type(K).__name__}")


def _run_body2d_forward(cfg):
    mu = _planar_measure(io.load_body(cfg.body), CircleGrid(cfg.circle))
    _emit(io.measure2d_to_json(mu), cfg.out)
    return EXIT_OK


def _run_body2d_invert(cfg):
    mu = io.measure2d_from_json(Path(cfg.measure).read_text())
    h = berg_invert(mu, centering_tol=cfg.tol)
    _emit(io.circle_table(h, "h"), cfg.out)
    return EXIT_OK


_RUNNERS = {
    "forward": _run_forward, "invert": _run_invert, "invert-even": _run_invert_even,
    "roundtrip": _run_roundtrip, "check": _run_check,
    "body2d-forward": _run_body2d_forward, "body2d-invert": _run_body2d_invert,
}


def run(cfg: JobConfig) -> int:
    """Execute a job; returns the exit status."""
    try:
        cfg.validate()
        return _RUNNERS[cfg.command](cfg)
    except (DiskChristoffelError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="diskchristoffel",
                                     description="Forward and inverse disk area measure computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, inputs):
        for name in inputs:
            p.add_argument(f"--{name}", help=f"input {name} file (JSON)")
        p.add_argument("--planes", type=int, default=128, help="number of axial planes (n = 3)")
        p.add_argument("--circle", type=int, default=512, help="samples per great circle")
        p.add_argument("--tol", type=float, default=1e-6, help="relative tolerance of the condition checks")
        p.add_argument("--out", help="primary output file (default: stdout)")
        return p

    p = common(sub.add_parser("forward", help="family of S_1(K, D) for a body"), ["body"])
    p.add_argument("--table", help="density table for smooth bodies (azimuth polar_angle q)")
    p.add_argument("--report", help="summary with total and pole mass (default: stdout)")
    for name, inputs, hlp in (("invert", ["family", "density"], "reconstruct a body from a family or density"),
                              ("invert-even", ["family"], "reconstruct from an even family")):
        p = common(sub.add_parser(name, help=hlp), inputs)
        p.add_argument("--report", help="report document (default: stdout)")
    p = common(sub.add_parser("roundtrip", help="forward then invert a body, report the error"), ["body"])
    p.add_argument("--report", help="summary document (default: stdout)")
    common(sub.add_parser("check", help="solvability pre-checks of a family"), ["family"])
    common(sub.add_parser("body2d-forward", help="first area measure of a planar body"), ["body"])
    common(sub.add_parser("body2d-invert", help="support function from a planar measure"), ["measure"])
    return parser


def main(argv=None) -> int:
    ns = build_parser().parse_args(argv)
    cfg = JobConfig(**{k: v for k, v in vars(ns).items() if k in JobConfig.__dataclass_fields__})
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
