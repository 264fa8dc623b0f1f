"""Directions, axial planes and the quadrature rules built on them.

Every axial plane ``E`` contains the axis ``e_n`` and is described by a unit
vector ``w`` orthogonal to ``e_n``.  A point of the great circle ``S^1(E)`` is
written ``v(theta) = cos(theta) e_n + sin(theta) w``, so ``theta`` is the polar
angle of ``v`` when ``theta`` lies in ``[0, pi]`` and ``2 pi`` minus the polar
angle otherwise.

Circle grids are offset by half a step, which keeps the poles ``theta = 0`` and
``theta = pi`` strictly between sample points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import PoleInput, UnsupportedDimension

__all__ = [
    "ball_volume",
    "sphere_area",
    "DimensionConstants",
    "UnitVector",
    "AxialPlane",
    "CircleGrid",
    "PlaneGrid",
    "SphereGrid",
    "axis",
    "embed",
    "plane_of",
    "polar_angle",
    "circle_angle",
    "integrate_circle",
    "integrate_grassmannian",
    "integrate_sphere_cylindrical",
]

_UNIT_TOL = 1e-12


def ball_volume(k: int) -> float:
    """Volume ``kappa_k`` of the k-dimensional unit ball."""
    return math.pi ** (k / 2.0) / math.gamma(k / 2.0 + 1.0)


def sphere_area(k: int) -> float:
    """Surface area ``omega_k = k kappa_k`` of the unit sphere in ``R^k``."""
    return k * ball_volume(k)


@dataclass(frozen=True)
class DimensionConstants:
    """Ball volumes and sphere areas up to dimension ``n``.

    ``kappa[k]`` is the volume of the k-ball and ``omega[k]`` the area of
    ``S^{k-1}``; both tuples are indexed by ``k`` directly (``omega[0] = 0``).
    """

    n: int
    kappa: tuple = field(init=False)
    omega: tuple = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "kappa", tuple(ball_volume(k) for k in range(self.n + 1)))
        object.__setattr__(self, "omega", tuple(sphere_area(k) for k in range(self.n + 1)))


def axis(n: int) -> np.ndarray:
    """The axis vector ``e_n``."""
    e = np.zeros(n)
    e[-1] = 1.0
    return e


@dataclass(frozen=True)
class UnitVector:
    coords: tuple

    def __post_init__(self):
        c = tuple(float(x) for x in np.asarray(self.coords, dtype=float).ravel())
        norm = math.sqrt(sum(x * x for x in c))
        if abs(norm - 1.0) > _UNIT_TOL:
            raise ValueError(f"not a unit vector (norm {norm!r})")
        object.__setattr__(self, "coords", c)

    @classmethod
    def normalized(cls, x) -> "UnitVector":
        x = np.asarray(x, dtype=float)
        return cls(tuple(x / np.linalg.norm(x)))

    @property
    def n(self) -> int:
        return len(self.coords)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.coords, dtype=dtype)


def _canonical_sign(w: np.ndarray) -> np.ndarray:
    for x in w:
        if abs(x) > _UNIT_TOL:
            return w if x > 0 else -w
    return w


@dataclass(frozen=True)
class AxialPlane:
    """The 2-plane ``e_n v w``; ``w`` and ``-w`` name the same plane.

    The stored representative has its first non-negligible coordinate
    positive.
    """

    w: tuple

    def __post_init__(self):
        w = np.asarray(self.w, dtype=float).ravel()
        if w.size < 2:
            raise UnsupportedDimension("axial planes need n >= 2")
        if abs(w[-1]) > _UNIT_TOL:
            raise ValueError("w must be orthogonal to e_n")
        if abs(np.linalg.norm(w) - 1.0) > _UNIT_TOL:
            raise ValueError("w must be a unit vector")
        w = w.copy()
        w[-1] = 0.0
        object.__setattr__(self, "w", tuple(float(x) for x in _canonical_sign(w)))

    @classmethod
    def from_azimuth(cls, phi: float) -> "AxialPlane":
        """Plane in ``R^3`` through ``e_3`` and ``(cos phi, sin phi, 0)``."""
        return cls((math.cos(phi), math.sin(phi), 0.0))

    @property
    def n(self) -> int:
        return len(self.w)

    @property
    def w_array(self) -> np.ndarray:
        return np.asarray(self.w)

    @property
    def azimuth(self) -> float:
        """Azimuth of the canonical ``w`` in ``(-pi/2, pi/2]`` (n = 3)."""
        return math.atan2(self.w[1], self.w[0])


def embed(theta, E: AxialPlane) -> np.ndarray:
    """Point(s) ``cos(theta) e_n + sin(theta) w`` of ``S^1(E)``."""
    theta = np.asarray(theta, dtype=float)
    return np.cos(theta)[..., None] * axis(E.n) + np.sin(theta)[..., None] * E.w_array


def polar_angle(u) -> np.ndarray | float:
    """Angle between ``u`` and ``e_n``, in ``[0, pi]``."""
    u = np.asarray(u, dtype=float)
    c = u[..., -1] / np.linalg.norm(u, axis=-1)
    out = np.arccos(np.clip(c, -1.0, 1.0))
    return float(out) if out.ndim == 0 else out


def plane_of(u, pole_tol: float = 1e-9) -> AxialPlane:
    """The unique axial plane containing ``u``."""
    u = np.asarray(u, dtype=float)
    r = u.copy()
    r[-1] = 0.0
    norm = np.linalg.norm(r)
    if norm <= pole_tol:
        raise PoleInput(f"direction {u.tolist()} is within {pole_tol} of the axis")
    return AxialPlane(tuple(r / norm))


def circle_angle(u, E: AxialPlane) -> np.ndarray | float:
    """Angle ``theta`` in ``[0, 2 pi)`` of ``u`` inside the frame of ``E``."""
    u = np.asarray(u, dtype=float)
    t = np.arctan2(u @ E.w_array, u[..., -1]) % (2.0 * math.pi)
    return float(t) if np.ndim(t) == 0 else t


@dataclass(frozen=True)
class CircleGrid:
    """``m`` equally spaced, half-step offset angles on ``S^1(E)``.

    ``plane`` may be ``None`` for an abstract planar frame (2D problems that
    are not embedded in ``R^n``).
    """

    m: int
    plane: AxialPlane | None = None

    def __post_init__(self):
        if self.m < 4 or self.m % 2:
            raise ValueError("circle grids need an even sample count m >= 4")

    @property
    def step(self) -> float:
        return 2.0 * math.pi / self.m

    @property
    def angles(self) -> np.ndarray:
        return (np.arange(self.m) + 0.5) * self.step

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.m, self.step)

    def frame_points(self) -> np.ndarray:
        """``(cos theta, sin theta)`` in the planar frame ``(e_n, w)``."""
        t = self.angles
        return np.stack([np.cos(t), np.sin(t)], axis=-1)

    def points(self) -> np.ndarray:
        if self.plane is None:
            raise ValueError("abstract circle grid has no embedding")
        return embed(self.angles, self.plane)


@dataclass(frozen=True)
class PlaneGrid:
    """A finite probability rule on ``Gr_2(R^n, e_n)``."""

    planes: tuple
    weights: tuple

    def __post_init__(self):
        if len(self.planes) != len(self.weights) or not self.planes:
            raise ValueError("need one weight per plane")
        if any(wt < 0 for wt in self.weights):
            raise ValueError("plane weights must be non-negative")
        if abs(math.fsum(self.weights) - 1.0) > 1e-12:
            raise ValueError("plane weights must sum to 1")
        dims = {E.n for E in self.planes}
        if len(dims) != 1:
            raise ValueError("planes of different dimensions")

    @classmethod
    def uniform(cls, n: int, p: int = 1) -> "PlaneGrid":
        """The invariant rule: one plane for n = 2, p equally spaced azimuths for n = 3.

        For n = 3 the azimuths are ``j pi / p`` reduced to the canonical window
        ``(-pi/2, pi/2]`` and listed in increasing order.
        """
        if n == 2:
            return cls((AxialPlane((1.0, 0.0)),), (1.0,))
        if n == 3:
            if p < 1:
                raise ValueError("need at least one plane")
            az = -0.5 * math.pi + (np.arange(p) + 1.0) * math.pi / p
            planes = tuple(AxialPlane((math.cos(a), math.sin(a), 0.0)) for a in az)
            return cls(planes, tuple([1.0 / p] * p))
        raise UnsupportedDimension(f"plane quadrature is implemented for n in (2, 3), got {n}")

    @property
    def n(self) -> int:
        return self.planes[0].n

    @property
    def p(self) -> int:
        return len(self.planes)

    @property
    def weight_array(self) -> np.ndarray:
        return np.asarray(self.weights)

    @property
    def azimuths(self) -> np.ndarray:
        return np.array([E.azimuth for E in self.planes])

    def w_matrix(self) -> np.ndarray:
        return np.array([E.w for E in self.planes])


@dataclass(frozen=True)
class SphereGrid:
    """Product of a plane rule and an ``m``-point circle grid on each plane."""

    planes: PlaneGrid
    m: int

    def __post_init__(self):
        CircleGrid(self.m)

    @classmethod
    def uniform(cls, n: int, p: int, m: int) -> "SphereGrid":
        return cls(PlaneGrid.uniform(n, p), m)

    @property
    def n(self) -> int:
        return self.planes.n

    @property
    def p(self) -> int:
        return self.planes.p

    @property
    def step(self) -> float:
        return 2.0 * math.pi / self.m

    @property
    def angles(self) -> np.ndarray:
        return CircleGrid(self.m).angles

    def circle(self, j: int) -> CircleGrid:
        return CircleGrid(self.m, self.planes.planes[j])

    def points(self) -> np.ndarray:
        """All sample directions, shape ``(p, m, n)``."""
        t = self.angles
        W = self.planes.w_matrix()
        return (np.cos(t)[None, :, None] * axis(self.n)[None, None, :]
                + np.sin(t)[None, :, None] * W[:, None, :])

    def polar_weight(self) -> np.ndarray:
        """``sin^{n-2}`` of the polar angle at each circle sample."""
        return np.abs(np.sin(self.angles)) ** (self.n - 2)

    def cylinder_weights(self) -> np.ndarray:
        """Weights ``(p, m)`` of the cylinder-coordinate rule for ``int_{S^{n-1}}``."""
        c = 0.5 * sphere_area(self.n - 1)
        return c * self.planes.weight_array[:, None] * (self.polar_weight() * self.step)[None, :]


def integrate_circle(samples, axis: int = -1) -> np.ndarray | float:
    """Periodic rectangle rule on the uniform circle grid along ``axis``."""
    samples = np.asarray(samples, dtype=float)
    m = samples.shape[axis]
    out = np.sum(samples, axis=axis) * (2.0 * math.pi / m)
    return float(out) if np.ndim(out) == 0 else out


def integrate_grassmannian(values, planes: PlaneGrid) -> np.ndarray | float:
    """Weighted average over the planes (first axis of ``values``)."""
    values = np.asarray(values, dtype=float)
    out = np.tensordot(planes.weight_array, values, axes=(0, 0))
    return float(out) if np.ndim(out) == 0 else out


def integrate_sphere_cylindrical(q, grid: SphereGrid) -> np.ndarray | float:
    """``int_{S^{n-1}} q du`` from samples ``q[j, k, ...]`` on the product grid.

    Realizes ``(omega_{n-1}/2) E_E int_{S^1(E)} q(v) sin^{n-2}(theta_v) dv``;
    trailing axes of ``q`` (e.g. vector components) are integrated separately.
    """
    q = np.asarray(q, dtype=float)
    out = np.tensordot(grid.cylinder_weights(), q, axes=([0, 1], [0, 1]))
    return float(out) if np.ndim(out) == 0 else out
