"""Text file formats: body specs, families, densities, circle measures, tables.

All structured documents are JSON.  Floats are written with ``repr``
precision, so every document re-parses to bit-identical arrays, and planes
are written one per line in grid order, so output is deterministic.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .bodies import (
    AxialSegment,
    Ball,
    DiskBody,
    Ellipsoid,
    MinkowskiSum,
    Polytope,
    SupportFunction,
    ZonalBody,
)
from .errors import SpecError
from .measures import CircleMeasure, DisintegratedMeasure, SphereDensity
from .sphere_geom import AxialPlane, CircleGrid, PlaneGrid, SphereGrid

__all__ = [
    "body_from_spec",
    "body_to_spec",
    "load_body",
    "family_to_json",
    "family_from_json",
    "save_family",
    "load_family",
    "density_to_json",
    "density_from_json",
    "measure2d_to_json",
    "measure2d_from_json",
    "sphere_table",
    "circle_table",
    "families_equal",
]


def _field(d, key, where):
    try:
        return d[key]
    except (KeyError, TypeError):
        raise SpecError(f"{where}: missing field '{key}'") from None


def body_from_spec(spec: dict, where: str = "body") -> SupportFunction:
    """Build a body from a nested ``{"type": ..., ...}`` description.

    Types: ``ball`` (radius, center?, dim?), ``ellipsoid`` (semi_axes,
    center?), ``polytope`` (vertices), ``disk`` (radius, dim?), ``segment``
    (half_length, dim?), ``zonal`` (coefficients, center?), ``sum`` (terms).
    """
    kind = _field(spec, "type", where)
    try:
        if kind == "ball":
            center = spec.get("center")
            dim = len(center) if center is not None else int(spec.get("dim", 3))
            return Ball(float(spec.get("radius", 1.0)), center, dim)
        if kind == "ellipsoid":
            return Ellipsoid(tuple(_field(spec, "semi_axes", where)), spec.get("center"))
        if kind == "polytope":
            return Polytope(_field(spec, "vertices", where))
        if kind == "disk":
            return DiskBody(float(spec.get("radius", 1.0)), int(spec.get("dim", 3)))
        if kind == "segment":
            return AxialSegment(float(spec.get("half_length", 1.0)), int(spec.get("dim", 3)))
        if kind == "zonal":
            center = spec.get("center")
            dim = len(center) if center is not None else int(spec.get("dim", 3))
            return ZonalBody(tuple(_field(spec, "coefficients", where)), center, dim)
        if kind == "sum":
            terms = _field(spec, "terms", where)
            return MinkowskiSum(tuple(body_from_spec(t, f"{where}.terms[{i}]") for i, t in enumerate(terms)))
    except SpecError:
        raise
    except (TypeError, ValueError) as exc:
        raise SpecError(f"{where}: {exc}") from None
    raise SpecError(f"{where}: unknown type '{kind}'")


def body_to_spec(K: SupportFunction) -> dict:
    if isinstance(K, Ball):
        return {"type": "ball", "radius": K.radius, "center": K.center.tolist()}
    if isinstance(K, Ellipsoid):
        return {"type": "ellipsoid", "semi_axes": K.semi_axes.tolist(), "center": K.center.tolist()}
    if isinstance(K, Polytope):
        return {"type": "polytope", "vertices": K.vertices.tolist()}
    if isinstance(K, DiskBody):
        return {"type": "disk", "radius": K.radius, "dim": K.dim}
    if isinstance(K, AxialSegment):
        return {"type": "segment", "half_length": K.half_length, "dim": K.dim}
    if isinstance(K, ZonalBody):
        return {"type": "zonal", "coefficients": K.coefficients.tolist(), "center": K.center.tolist()}
    if isinstance(K, MinkowskiSum):
        return {"type": "sum", "terms": [body_to_spec(t) for t in K.terms]}
    raise SpecError(f"no spec format for {type(K).__name__}")


def _read_json(path, what):
    try:
        return json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{what} file {path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_body(path) -> SupportFunction:
    return body_from_spec(_read_json(path, "body"))


def _dump_planes(header: dict, planes: list) -> str:
    head = json.dumps(header)[:-1]
    rows = ",\n".join("  " + json.dumps(p) for p in planes)
    return f'{head}, "planes": [\n{rows}\n]}}\n'


def family_to_json(fam: DisintegratedMeasure) -> str:
    """Serialize a family: one plane per line with ``w``, weight, density, atoms, rho, poles."""
    planes = []
    for j, mu in enumerate(fam.family):
        planes.append({
            "w": list(mu.grid.plane.w),
            "weight": fam.grid.planes.weights[j],
            "density": None if mu.density is None else mu.density.tolist(),
            "atoms": [[float(a), float(w)] for a, w in zip(mu.atom_angles, mu.atom_masses)],
            "rho": float(fam.rho[j]),
            "poles": [float(x) for x in fam.pole_atoms[j]],
        })
    return _dump_planes({"format": "disk-family", "version": 1, "dim": fam.n, "circle": fam.grid.m}, planes)


def _grid_from_doc(doc, what):
    if doc.get("format") != what:
        raise SpecError(f"format: expected '{what}', got {doc.get('format')!r}")
    m = int(_field(doc, "circle", what))
    rows = _field(doc, "planes", what)
    if not rows:
        raise SpecError(f"{what}.planes: empty")
    try:
        planes = tuple(AxialPlane(tuple(_field(r, "w", f"{what}.planes[{i}]"))) for i, r in enumerate(rows))
        weights = tuple(float(r.get("weight", 1.0 / len(rows))) for r in rows)
        grid = SphereGrid(PlaneGrid(planes, weights), m)
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(f"{what}.planes: {exc}") from None
    if "dim" in doc and int(doc["dim"]) != grid.n:
        raise SpecError(f"dim: {doc['dim']} does not match the plane vectors")
    return grid, rows


def family_from_json(text: str) -> DisintegratedMeasure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"family: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    grid, rows = _grid_from_doc(doc, "disk-family")
    fam, rho, poles = [], [], []
    for j, r in enumerate(rows):
        where = f"disk-family.planes[{j}]"
        atoms = np.asarray(r.get("atoms", []), dtype=float).reshape(-1, 2)
        try:
            fam.append(CircleMeasure(grid.circle(j), r.get("density"), atoms[:, 0], atoms[:, 1]))
        except ValueError as exc:
            raise SpecError(f"{where}: {exc}") from None
        rho.append(float(_field(r, "rho", where)))
        poles.append([float(x) for x in r.get("poles", [0.0, 0.0])])
    try:
        return DisintegratedMeasure(grid, tuple(fam), np.array(rho), np.array(poles))
    except ValueError as exc:
        raise SpecError(f"disk-family: {exc}") from None


def save_family(fam: DisintegratedMeasure, path) -> None:
    Path(path).write_text(family_to_json(fam))


def load_family(path) -> DisintegratedMeasure:
    return family_from_json(Path(path).read_text())


def density_to_json(q: SphereDensity) -> str:
    planes = [{"w": list(E.w), "weight": wt, "q": q.q[j].tolist()}
              for j, (E, wt) in enumerate(zip(q.grid.planes.planes, q.grid.planes.weights))]
    return _dump_planes({"format": "sphere-density", "version": 1, "dim": q.grid.n, "circle": q.grid.m}, planes)


def density_from_json(text: str) -> SphereDensity:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"density: invalid JSON ({exc.msg})") from None
    grid, rows = _grid_from_doc(doc, "sphere-density")
    try:
        return SphereDensity(grid, [_field(r, "q", f"sphere-density.planes[{j}]") for j, r in enumerate(rows)])
    except SpecError:
        raise
    except ValueError as exc:
        raise SpecError(f"sphere-density: {exc}") from None


def measure2d_to_json(mu: CircleMeasure) -> str:
    doc = {"format": "circle-measure", "version": 1, "circle": mu.grid.m,
           "density": None if mu.density is None else mu.density.tolist(),
           "atoms": [[float(a), float(w)] for a, w in zip(mu.atom_angles, mu.atom_masses)]}
    return json.dumps(doc) + "\n"


def measure2d_from_json(text: str) -> CircleMeasure:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"measure: invalid JSON ({exc.msg})") from None
    if doc.get("format") != "circle-measure":
        raise SpecError(f"format: expected 'circle-measure', got {doc.get('format')!r}")
    atoms = np.asarray(doc.get("atoms", []), dtype=float).reshape(-1, 2)
    try:
        return CircleMeasure(CircleGrid(int(_field(doc, "circle", "measure"))), doc.get("density"),
                             atoms[:, 0], atoms[:, 1])
    except ValueError as exc:
        raise SpecError(f"measure: {exc}") from None


def sphere_table(grid: SphereGrid, values, header: str = "value") -> str:
    """Rows ``azimuth polar_angle value`` for every sample of the product grid.

    A sample at circle angle ``theta > pi`` on the plane of azimuth ``phi``
    is the direction with azimuth ``phi + pi`` and polar angle
    ``2 pi - theta``.  For ``n = 2`` the rows are ``angle value``.
    """
    V = np.asarray(values, dtype=float)
    th = grid.angles
    lines = []
    if grid.n == 2:
        lines.append(f"# angle {header}")
        lines.extend(f"{t!r} {v!r}" for t, v in zip(th.tolist(), V[0].tolist()))
        return "\n".join(lines) + "\n"
    lines.append(f"# azimuth polar_angle {header}")
    for j, phi in enumerate(grid.planes.azimuths.tolist()):
        for k, t in enumerate(th.tolist()):
            if t < math.pi:
                az, pol = phi, t
            else:
                az, pol = (phi + math.pi) % (2.0 * math.pi), 2.0 * math.pi - t
            lines.append(f"{az!r} {pol!r} {float(V[j, k])!r}")
    return "\n".join(lines) + "\n"


def circle_table(values, header: str = "value") -> str:
    V = np.asarray(values, dtype=float)
    th = CircleGrid(V.size).angles
    return "\n".join([f"# angle {header}"] + [f"{t!r} {v!r}" for t, v in zip(th.tolist(), V.tolist())]) + "\n"


def families_equal(a: DisintegratedMeasure, b: DisintegratedMeasure) -> bool:
    """Exact equality of two families (grid, densities, atoms, rho, poles)."""
    if a.grid != b.grid:
        return False
    for mu, nu in zip(a.family, b.family):
        if (mu.density is None) != (nu.density is None):
            return False
        if mu.density is not None and not np.array_equal(mu.density, nu.density):
            return False
        if not (np.array_equal(mu.atom_angles, nu.atom_angles) and np.array_equal(mu.atom_masses, nu.atom_masses)):
            return False
    return bool(np.array_equal(a.rho, b.rho) and np.array_equal(a.pole_atoms, b.pole_atoms))
