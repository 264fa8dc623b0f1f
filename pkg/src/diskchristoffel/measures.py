"""Measures on circles and plane-indexed families of them.

A measure on ``S^{n-1}`` without mass at ``±e_n`` is handled through its
disintegration along the axial planes: one :class:`CircleMeasure` per plane of
a :class:`~diskchristoffel.sphere_geom.PlaneGrid`, together with the density
``rho`` of the pushforward to the Grassmannian.  Families produced from convex
bodies may additionally carry declared per-plane pole masses; those are kept
apart from the circle measures, which never hold atoms at the poles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AtomsPresent, PoleInput, UnsupportedDimension
from .sphere_geom import (
    CircleGrid,
    SphereGrid,
    axis,
    embed,
    integrate_circle,
    integrate_grassmannian,
    sphere_area,
)

__all__ = [
    "CircleMeasure",
    "SphereDensity",
    "DisintegratedMeasure",
    "ConditionReport",
    "total_mass",
    "first_moment",
    "sphere_first_moment",
    "even_defect",
    "density_to_family",
    "family_to_density",
    "check_conditions",
    "check_pushforward",
    "rotate_family",
    "family_distance",
]

_TWO_PI = 2.0 * math.pi
_ANGLE_TOL = 1e-12


def _merge_atoms(angles, masses):
    angles = np.asarray(angles, dtype=float).ravel() % _TWO_PI
    masses = np.asarray(masses, dtype=float).ravel()
    if angles.shape != masses.shape:
        raise ValueError("atom angles and masses differ in length")
    keep = masses != 0.0
    angles, masses = angles[keep], masses[keep]
    if np.any(masses < 0):
        raise ValueError("atom masses must be positive")
    if angles.size == 0:
        return np.empty(0), np.empty(0)
    order = np.argsort(angles, kind="stable")
    angles, masses = angles[order], masses[order]
    out_a, out_m = [angles[0]], [masses[0]]
    for a, w in zip(angles[1:], masses[1:]):
        if a - out_a[-1] <= _ANGLE_TOL:
            out_m[-1] += w
        else:
            out_a.append(a)
            out_m.append(w)
    if len(out_a) > 1 and out_a[0] + _TWO_PI - out_a[-1] <= _ANGLE_TOL:
        out_m[0] += out_m.pop()
        out_a.pop()
    return np.array(out_a), np.array(out_m)


@dataclass(frozen=True, eq=False)
class CircleMeasure:
    """Density samples on a circle grid plus finitely many atoms.

    Parameters
    ----------
    grid : CircleGrid or None
        Grid carrying the density samples.  If its plane is set, atoms at the
        poles (angles 0 and pi) are refused.
    density : ndarray or None
        Non-negative density samples (``None`` means zero density).
    atom_angles, atom_masses : array_like
        Atom locations in ``[0, 2 pi)`` and their positive masses.
    """

    grid: CircleGrid | None
    density: np.ndarray | None = None
    atom_angles: np.ndarray = field(default_factory=lambda: np.empty(0))
    atom_masses: np.ndarray = field(default_factory=lambda: np.empty(0))

    def __post_init__(self):
        if self.density is not None:
            if self.grid is None:
                raise ValueError("a density needs a grid")
            d = np.array(self.density, dtype=float)
            if d.shape != (self.grid.m,):
                raise ValueError(f"density has shape {d.shape}, grid has {self.grid.m} samples")
            if not np.all(np.isfinite(d)):
                raise ValueError("density samples must be finite")
            scale = max(1.0, float(np.max(np.abs(d))))
            if np.min(d) < -1e-12 * scale:
                raise ValueError("density samples must be non-negative")
            d.setflags(write=False)
            object.__setattr__(self, "density", d)
        a, w = _merge_atoms(self.atom_angles, self.atom_masses)
        if self.grid is not None and self.grid.plane is not None and a.size:
            dist = np.minimum(np.abs(np.angle(np.exp(1j * a))), np.abs(np.angle(np.exp(1j * (a - math.pi)))))
            if np.min(dist) <= _ANGLE_TOL:
                raise PoleInput("circle measures in axial planes cannot have atoms at the poles")
        a.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "atom_angles", a)
        object.__setattr__(self, "atom_masses", w)

    @property
    def has_atoms(self) -> bool:
        return self.atom_masses.size > 0

    def density_or_zero(self) -> np.ndarray:
        if self.density is None:
            if self.grid is None:
                raise ValueError("measure has no grid")
            return np.zeros(self.grid.m)
        return self.density

    def total_mass(self) -> float:
        mass = math.fsum(self.atom_masses)
        if self.density is not None:
            mass += integrate_circle(self.density)
        return float(mass)

    def first_moment(self) -> np.ndarray:
        """``int v dmu(v)`` in frame coordinates ``(e_n, w)``."""
        mom = np.array([np.dot(self.atom_masses, np.cos(self.atom_angles)),
                        np.dot(self.atom_masses, np.sin(self.atom_angles))])
        if self.density is not None:
            fp = self.grid.frame_points()
            mom = mom + integrate_circle(self.density[:, None] * fp, axis=0)
        return mom

    def scaled(self, c: float) -> "CircleMeasure":
        if c < 0:
            raise ValueError("scale factor must be non-negative")
        d = None if self.density is None else c * self.density
        return CircleMeasure(self.grid, d, self.atom_angles, c * self.atom_masses)

    def __add__(self, other: "CircleMeasure") -> "CircleMeasure":
        grid = self.grid or other.grid
        if self.grid is not None and other.grid is not None and self.grid.m != other.grid.m:
            raise ValueError("cannot add measures on different grids")
        if self.density is None and other.density is None:
            d = None
        else:
            d = self.density_or_zero() if self.density is not None else 0.0
            d = d + (other.density if other.density is not None else 0.0)
        return CircleMeasure(grid, d,
                             np.concatenate([self.atom_angles, other.atom_angles]),
                             np.concatenate([self.atom_masses, other.atom_masses]))

    def reflected(self) -> "CircleMeasure":
        """Image under the antipodal map ``v -> -v``."""
        d = None
        if self.density is not None:
            d = np.roll(self.density, self.grid.m // 2)
        return CircleMeasure(self.grid, d, self.atom_angles + math.pi, self.atom_masses)


def total_mass(mu) -> float:
    """Total mass of a circle measure, or of a family (including declared pole mass)."""
    if isinstance(mu, CircleMeasure):
        return mu.total_mass()
    if isinstance(mu, DisintegratedMeasure):
        return integrate_grassmannian(mu.rho, mu.grid.planes)
    raise TypeError(f"unsupported measure type {type(mu).__name__}")


def first_moment(mu: CircleMeasure) -> np.ndarray:
    return mu.first_moment()


def even_defect(mu: CircleMeasure) -> float:
    """Largest discrepancy between ``mu`` and its antipodal image."""
    r = mu.reflected()
    defect = 0.0
    if mu.density is not None:
        defect = float(np.max(np.abs(mu.density - r.density)))
    if mu.atom_masses.size != r.atom_masses.size:
        return max(defect, float(np.max(np.concatenate([mu.atom_masses, r.atom_masses]))))
    if mu.atom_masses.size:
        da = np.abs(np.angle(np.exp(1j * (mu.atom_angles - r.atom_angles))))
        if np.max(da) > 1e-9:
            return max(defect, float(np.max(mu.atom_masses)))
        defect = max(defect, float(np.max(np.abs(mu.atom_masses - r.atom_masses))))
    return defect


@dataclass(frozen=True, eq=False)
class SphereDensity:
    """Samples of a non-negative density ``q`` on a product grid, shape ``(p, m)``."""

    grid: SphereGrid
    q: np.ndarray

    def __post_init__(self):
        q = np.array(self.q, dtype=float)
        if q.shape != (self.grid.p, self.grid.m):
            raise ValueError(f"q has shape {q.shape}, expected {(self.grid.p, self.grid.m)}")
        if not np.all(np.isfinite(q)):
            raise ValueError("density samples must be finite")
        if np.min(q) < -1e-12 * max(1.0, float(np.max(np.abs(q)))):
            raise ValueError("density must be non-negative")
        q.setflags(write=False)
        object.__setattr__(self, "q", q)


@dataclass(frozen=True, eq=False)
class DisintegratedMeasure:
    """Plane-indexed family ``{mu_E}`` with pushforward density ``rho``.

    ``pole_atoms[j] = (north, south)`` records mass that the plane ``E_j``
    assigns to ``e_n`` and ``-e_n``; it is declared separately so that every
    ``mu_E`` lives off the poles.  ``rho[j]`` is the full mass seen by plane
    ``E_j``, i.e. ``total_mass(mu_E) + north + south``.
    """

    grid: SphereGrid
    family: tuple
    rho: np.ndarray
    pole_atoms: np.ndarray | None = None

    def __post_init__(self):
        fam = tuple(self.family)
        if len(fam) != self.grid.p:
            raise ValueError("need one circle measure per plane")
        for j, mu in enumerate(fam):
            if mu.grid is None or mu.grid.m != self.grid.m:
                raise ValueError(f"plane {j}: circle grid does not match")
        rho = np.array(self.rho, dtype=float).ravel()
        if rho.shape != (self.grid.p,):
            raise ValueError("rho needs one value per plane")
        poles = (np.zeros((self.grid.p, 2)) if self.pole_atoms is None
                 else np.array(self.pole_atoms, dtype=float).reshape(self.grid.p, 2))
        if np.any(poles < 0):
            raise ValueError("pole masses must be non-negative")
        masses = np.array([mu.total_mass() for mu in fam]) + poles.sum(axis=1)
        scale = max(1.0, float(np.max(np.abs(rho))))
        if np.max(np.abs(masses - rho)) > 1e-10 * scale:
            raise ValueError("rho disagrees with the per-plane total masses")
        rho.setflags(write=False)
        poles.setflags(write=False)
        object.__setattr__(self, "family", fam)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "pole_atoms", poles)

    @classmethod
    def from_measures(cls, grid: SphereGrid, family, pole_atoms=None) -> "DisintegratedMeasure":
        """Build a family, computing ``rho`` from the measures."""
        family = tuple(family)
        poles = np.zeros((grid.p, 2)) if pole_atoms is None else np.asarray(pole_atoms, dtype=float)
        rho = np.array([mu.total_mass() for mu in family]) + poles.sum(axis=1)
        return cls(grid, family, rho, poles)

    @property
    def n(self) -> int:
        return self.grid.n

    @property
    def has_atoms(self) -> bool:
        return any(mu.has_atoms for mu in self.family)

    def pole_mass(self) -> tuple[float, float]:
        """Sphere-level mass at ``(e_n, -e_n)``."""
        pm = integrate_grassmannian(self.pole_atoms, self.grid.planes)
        return float(pm[0]), float(pm[1])

    def scaled(self, c: float) -> "DisintegratedMeasure":
        return DisintegratedMeasure(self.grid, tuple(mu.scaled(c) for mu in self.family),
                                    c * self.rho, c * self.pole_atoms)

    def __add__(self, other: "DisintegratedMeasure") -> "DisintegratedMeasure":
        if other.grid != self.grid:
            raise ValueError("families live on different grids")
        fam = tuple(a + b for a, b in zip(self.family, other.family))
        return DisintegratedMeasure(self.grid, fam, self.rho + other.rho, self.pole_atoms + other.pole_atoms)

    def integrate(self, f) -> float:
        """``int f dmu`` for ``f`` evaluated on directions of shape ``(..., n)``."""
        total = np.zeros(self.grid.p)
        pts = self.grid.points()
        e = axis(self.n)
        for j, mu in enumerate(self.family):
            E = mu.grid.plane
            s = 0.0
            if mu.density is not None:
                s += integrate_circle(mu.density * f(pts[j]))
            if mu.has_atoms:
                s += float(np.dot(mu.atom_masses, f(embed(mu.atom_angles, E))))
            north, south = self.pole_atoms[j]
            if north:
                s += north * float(f(e))
            if south:
                s += south * float(f(-e))
            total[j] = s
        return integrate_grassmannian(total, self.grid.planes)


def sphere_first_moment(fam: DisintegratedMeasure, include_poles: bool = True) -> np.ndarray:
    """``int u dmu(u)`` as an n-vector, assembled plane by plane."""
    W = fam.grid.planes.w_matrix()
    e = axis(fam.n)
    per_plane = np.empty((fam.grid.p, fam.n))
    for j, mu in enumerate(fam.family):
        a, b = mu.first_moment()
        if include_poles:
            a = a + fam.pole_atoms[j, 0] - fam.pole_atoms[j, 1]
        per_plane[j] = a * e + b * W[j]
    return integrate_grassmannian(per_plane, fam.grid.planes)


def density_to_family(q: SphereDensity) -> DisintegratedMeasure:
    """Disintegrate ``q(u) du`` along the axial planes.

    Each plane receives the density ``(omega_{n-1}/2) q(v) sin^{n-2}(theta_v)``
    and ``rho`` is its circle integral.
    """
    grid = q.grid
    if grid.n not in (2, 3):
        raise UnsupportedDimension("density disintegration is implemented for n in (2, 3)")
    dens = 0.5 * sphere_area(grid.n - 1) * q.q * grid.polar_weight()[None, :]
    fam = tuple(CircleMeasure(grid.circle(j), dens[j]) for j in range(grid.p))
    return DisintegratedMeasure(grid, fam, integrate_circle(dens, axis=1))


def family_to_density(fam: DisintegratedMeasure) -> SphereDensity:
    """Inverse of :func:`density_to_family` for atom-free families."""
    if fam.has_atoms or np.any(fam.pole_atoms > 0):
        raise AtomsPresent("family has atoms; it has no density")
    grid = fam.grid
    weight = 0.5 * sphere_area(grid.n - 1) * grid.polar_weight()
    dens = np.array([mu.density_or_zero() for mu in fam.family])
    return SphereDensity(grid, dens / weight[None, :])


@dataclass
class ConditionReport:
    """Outcome of the solvability pre-checks on a family.

    ``pushforward_ok`` concerns continuity of ``rho`` across adjacent planes,
    ``centering_ok`` the per-plane first moments, ``pole_ok`` the declared
    mass at ``±e_n``.
    """

    pushforward_ok: bool
    continuity_modulus: float
    continuity_threshold: float
    continuity_location: int
    centering_ok: bool
    worst_moment: float
    worst_moment_plane: int
    centering_threshold: float
    pole_mass: tuple
    pole_ok: bool
    pole_threshold: float
    plane_moments: np.ndarray
    offending_planes: list

    @property
    def ok(self) -> bool:
        return self.pushforward_ok and self.centering_ok and self.pole_ok


def check_pushforward(rho, tol: float = 1e-6, lipschitz_bound: float = 3.0):
    """Discrete continuity test for the pushforward density over a periodic plane order.

    Returns ``(ok, modulus, threshold, location)`` where ``modulus`` is the
    largest jump between neighbouring planes.  The jump is accepted if it is
    below ``tol * scale`` or below ``lipschitz_bound * (pi / p) * scale``, the
    largest step a Lipschitz density of relative slope ``lipschitz_bound``
    could make.
    """
    rho = np.asarray(rho, dtype=float)
    p = rho.size
    scale = float(np.max(np.abs(rho))) if p else 0.0
    if p < 2 or scale == 0.0:
        return True, 0.0, 0.0, 0
    jumps = np.abs(np.roll(rho, -1) - rho)
    loc = int(np.argmax(jumps))
    modulus = float(jumps[loc])
    threshold = scale * max(tol, lipschitz_bound * math.pi / p)
    return modulus <= threshold, modulus, threshold, loc


def check_conditions(fam: DisintegratedMeasure, tol: float = 1e-6,
                     lipschitz_bound: float = 3.0) -> ConditionReport:
    """Check continuity of the pushforward, per-plane centering and pole mass.

    Thresholds are relative: ``tol`` times the total mass of the family (or
    the largest value of ``rho`` for the continuity test).  The pole-mass
    threshold is ``tol`` itself for families of total mass at least 1.
    """
    ok_push, modulus, c_thr, c_loc = check_pushforward(fam.rho, tol, lipschitz_bound)
    moments = np.array([mu.first_moment() for mu in fam.family])
    norms = np.linalg.norm(moments, axis=1)
    mass = total_mass(fam)
    scale = max(mass, float(np.max(fam.rho)) if fam.rho.size else 0.0)
    m_thr = tol * scale
    worst = int(np.argmax(norms))
    offending = [int(j) for j in np.nonzero(norms > m_thr)[0]]
    pm = fam.pole_mass()
    # pole mass must vanish: the threshold is absolute unless the whole measure is small
    p_thr = tol * min(1.0, scale) if scale > 0 else tol
    return ConditionReport(
        pushforward_ok=ok_push,
        continuity_modulus=modulus,
        continuity_threshold=c_thr,
        continuity_location=c_loc,
        centering_ok=not offending,
        worst_moment=float(norms[worst]),
        worst_moment_plane=worst,
        centering_threshold=m_thr,
        pole_mass=pm,
        pole_ok=max(pm) <= p_thr,
        pole_threshold=p_thr,
        plane_moments=moments,
        offending_planes=offending,
    )


def rotate_family(fam: DisintegratedMeasure, shift: int) -> DisintegratedMeasure:
    """Family of the measure rotated about ``e_3`` by ``shift * pi / p``.

    Only defined for the uniform plane rule in ``R^3``.  Planes that wrap
    around the canonical window swap ``w`` for ``-w``, which reverses their
    circle orientation.
    """
    grid = fam.grid
    if grid.n != 3:
        raise UnsupportedDimension("axial rotations need n = 3")
    p, m = grid.p, grid.m
    new = [None] * p
    rho = np.empty(p)
    poles = np.empty((p, 2))
    for j, mu in enumerate(fam.family):
        turns, target = divmod(j + shift, p)
        flip = turns % 2 == 1
        d = mu.density
        ang = mu.atom_angles
        if flip:
            d = None if d is None else d[::-1].copy()
            ang = (-ang) % _TWO_PI
        new[target] = CircleMeasure(grid.circle(target), d, ang, mu.atom_masses)
        rho[target] = fam.rho[j]
        poles[target] = fam.pole_atoms[j]
    return DisintegratedMeasure(grid, tuple(new), rho, poles)


def family_distance(a: DisintegratedMeasure, b: DisintegratedMeasure) -> dict:
    """Componentwise sup distances between two families on the same grid."""
    if a.grid != b.grid:
        raise ValueError("families live on different grids")
    dens = 0.0
    atoms = 0.0
    for mu, nu in zip(a.family, b.family):
        dens = max(dens, float(np.max(np.abs(mu.density_or_zero() - nu.density_or_zero()))))
        if mu.atom_masses.size != nu.atom_masses.size:
            atoms = math.inf
            continue
        if mu.atom_masses.size:
            da = np.abs(np.angle(np.exp(1j * (mu.atom_angles - nu.atom_angles))))
            atoms = max(atoms, float(np.max(da)), float(np.max(np.abs(mu.atom_masses - nu.atom_masses))))
    return {
        "density": dens,
        "atoms": atoms,
        "rho": float(np.max(np.abs(a.rho - b.rho))),
        "poles": float(np.max(np.abs(a.pole_atoms - b.pole_atoms))),
    }
