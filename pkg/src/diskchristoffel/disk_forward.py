"""The forward operator ``K -> S_1(K, D; .)`` as a plane-indexed family.

For every axial plane ``E`` the conditional measure is
``mu_E = (kappa_{n-1}/2) S_1^E(K|E, .)`` and the pushforward density is
``rho(E) = kappa_{n-1} V_1(K|E)``.  Smooth bodies go through the discrete
``h'' + h`` of their sampled support function; polytopes, axial disks and
axial segments go through exact polygon projections.  Minkowski sums are
handled by additivity in ``K``.  Normals of ``K|E`` at ``±e_n`` are kept apart
as declared pole atoms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._planar import polygon_edges
from .bodies import (
    Ball,
    Ellipsoid,
    MinkowskiSum,
    Sampled,
    SupportFunction,
    ZonalBody,
    _frame_vertices,
    pole_faces,
)
from .christoffel2d import curvature_density
from .errors import NegativeCurvature, UnsupportedBody, UnsupportedDimension, UnsupportedVariant
from .measures import (
    CircleMeasure,
    DisintegratedMeasure,
    SphereDensity,
    family_to_density,
)
from .sphere_geom import SphereGrid, ball_volume

__all__ = [
    "ForwardResult",
    "forward",
    "forward_density",
    "pole_mass",
    "mixed_volume_oracle",
    "mixed_volume",
]

#: atoms closer than this (radians) to a pole are routed to the pole masses
POLE_ANGLE_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class ForwardResult:
    """Family of ``S_1(K, D)`` plus, for smooth bodies, its density on the sphere."""

    family: DisintegratedMeasure
    density: SphereDensity | None
    pole_mass_per_pole: tuple

    @property
    def rho(self) -> np.ndarray:
        return self.family.rho


def _smooth_values(K, grid):
    if isinstance(K, Sampled) and K.grid == grid:
        return K.values
    return K.support(grid.points())


def _smooth_part(K, grid, scale):
    h = _smooth_values(K, grid)
    D = curvature_density(h, axis=1)
    tol = 10.0 * grid.step ** 2 * max(float(np.max(np.abs(h))), 1e-300)
    worst = float(np.min(D))
    if worst < -tol:
        j, k = np.unravel_index(int(np.argmin(D)), D.shape)
        raise NegativeCurvature(f"h'' + h = {worst:.3e} on plane {j}, sample {k}")
    return scale * np.where(D < 0.0, 0.0, D)


def _polygon_part(K, grid, scale):
    """Per-plane (angles, masses) off the poles and (north, south) pole atoms."""
    atoms, poles = [], np.zeros((grid.p, 2))
    for j, E in enumerate(grid.planes.planes):
        hull = _frame_vertices(K, E)
        if len(hull) < 2:
            atoms.append((np.empty(0), np.empty(0)))
            continue
        ang, lengths = polygon_edges(hull)
        masses = scale * lengths
        d_north = np.abs(np.angle(np.exp(1j * ang)))
        d_south = np.abs(np.angle(np.exp(1j * (ang - math.pi))))
        north, south = d_north <= POLE_ANGLE_TOL, d_south <= POLE_ANGLE_TOL
        poles[j] = masses[north].sum(), masses[south].sum()
        keep = ~(north | south)
        atoms.append((ang[keep], masses[keep]))
    return atoms, poles


def _is_smooth(K):
    return isinstance(K, (Ball, Ellipsoid, ZonalBody, Sampled))


def forward(K: SupportFunction, grid: SphereGrid) -> ForwardResult:
    """Disintegrated family of ``S_1(K, D; .)`` on the planes of ``grid``.

    Parameters
    ----------
    K : SupportFunction
        Any body variant of dimension ``grid.n``.
    grid : SphereGrid
        Plane rule and circle sample count.

    Raises
    ------
    UnsupportedDimension
        Unless ``n`` is 2 or 3.
    NegativeCurvature
        If a sampled support function has clearly negative ``h'' + h``.
    """
    n = grid.n
    if n not in (2, 3):
        raise UnsupportedDimension(f"forward is implemented for n in (2, 3), got {n}")
    if K.dim != n:
        raise ValueError(f"body of dimension {K.dim} on a grid of dimension {n}")
    scale = 0.5 * ball_volume(n - 1)
    terms = K.terms if isinstance(K, MinkowskiSum) else (K,)
    dens = None
    atoms = [[[], []] for _ in range(grid.p)]
    poles = np.zeros((grid.p, 2))
    for t in terms:
        if _is_smooth(t):
            part = _smooth_part(t, grid, scale)
            dens = part if dens is None else dens + part
        elif t.polygonal:
            at, pl = _polygon_part(t, grid, scale)
            for j, (a, w) in enumerate(at):
                atoms[j][0].append(a)
                atoms[j][1].append(w)
            poles += pl
        else:
            raise UnsupportedVariant(f"no forward path for {type(t).__name__}")
    family = []
    for j in range(grid.p):
        a = np.concatenate(atoms[j][0]) if atoms[j][0] else np.empty(0)
        w = np.concatenate(atoms[j][1]) if atoms[j][1] else np.empty(0)
        family.append(CircleMeasure(grid.circle(j), None if dens is None else dens[j], a, w))
    fam = DisintegratedMeasure.from_measures(grid, family, poles)
    q = None if fam.has_atoms or np.any(poles > 0) else family_to_density(fam)
    return ForwardResult(fam, q, fam.pole_mass())


def forward_density(K: SupportFunction, grid: SphereGrid) -> SphereDensity:
    """Density ``q`` of ``S_1(K, D; .)`` with respect to ``du`` (smooth bodies).

    Raises :class:`~diskchristoffel.errors.AtomsPresent` for bodies whose
    measure has atoms.
    """
    return family_to_density(forward(K, grid).family)


def pole_mass(K: SupportFunction) -> tuple[float, float]:
    """``S_1(K, D; {e_n})`` and ``S_1(K, D; {-e_n})``.

    The mass at ``±e_n`` is the mixed volume, inside ``e_n^perp``, of the face
    ``F(K, ±e_n)`` with ``n - 2`` copies of the disk, which equals
    ``kappa_{n-2}/(n-1) V_1(F)``; the factor is 1 for ``n`` in (2, 3).
    """
    n = K.dim
    factor = ball_volume(n - 2) / (n - 1)
    north, south = pole_faces(K)
    return factor * north, factor * south


def _meridian(K):
    """Support function along a meridian, with any axial translation removed."""
    if isinstance(K, MinkowskiSum):
        parts = [_meridian(t) for t in K.terms]
        return lambda th: sum(f(th) for f in parts)
    if isinstance(K, Ball):
        ok = True
    elif isinstance(K, Ellipsoid):
        a = K.semi_axes
        ok = a.size == 3 and abs(a[0] - a[1]) <= 1e-14 * a[0]
    else:
        ok = isinstance(K, ZonalBody)
    if not ok or K.dim != 3:
        raise UnsupportedBody("the oracle needs a smooth body of revolution about e_3")
    c = K.center

    def h(th):
        u = np.stack([np.sin(th), np.zeros_like(th), np.cos(th)], axis=-1)
        return K.support(u) - u @ c

    return h


def mixed_volume_oracle(K: SupportFunction, nodes: int = 200, step: float = 1e-3) -> float:
    """Total mass of ``S_1(K, D)`` for a smooth body of revolution in ``R^3``.

    Integrates ``h_D = sin(theta)`` against the area measure density
    ``(1/2)(Delta_S h + 2h)``, which for a zonal ``h`` reduces to
    ``h'' + cot(theta) h' + 2h`` in the polar angle.  Derivatives use five-point
    differences, the polar integral Gauss-Legendre quadrature.
    """
    h = _meridian(K)
    x, wts = np.polynomial.legendre.leggauss(nodes)
    th = 0.5 * math.pi * (x + 1.0)
    wts = 0.5 * math.pi * wts
    s = step
    f = [h(th + k * s) for k in (-2, -1, 0, 1, 2)]
    d1 = (f[0] - 8.0 * f[1] + 8.0 * f[3] - f[4]) / (12.0 * s)
    d2 = (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * s * s)
    density = 0.5 * (d2 + d1 / np.tan(th) + 2.0 * f[2])
    return float(2.0 * math.pi * np.sum(wts * np.sin(th) ** 2 * density))


def mixed_volume(A: SupportFunction, B, grid: SphereGrid | None = None) -> float:
    """``V(A, B, D^{[n-2]}) = (1/n) int h_A dS_1(B, D)``.

    ``B`` is a body (then ``grid`` is required) or a precomputed
    :class:`ForwardResult` / :class:`DisintegratedMeasure`; pole atoms count.
    """
    if isinstance(B, ForwardResult):
        fam = B.family
    elif isinstance(B, DisintegratedMeasure):
        fam = B
    else:
        if grid is None:
            raise ValueError("a grid is needed to forward B")
        fam = forward(B, grid).family
    return fam.integrate(A.support) / fam.n
