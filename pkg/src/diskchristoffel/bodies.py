"""Convex bodies given by their support functions.

Every body exposes ``support(x)``, the positively 1-homogeneous extension of
its support function, evaluated row-wise on arrays of shape ``(..., n)``.
Analytic variants evaluate exactly; :class:`Sampled` interpolates values on a
product grid (plane x circle).  Polygonal projections are available exactly
for polytopes, axial disks and axial segments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from numpy.polynomial import legendre

from ._planar import convex_hull_2d, polygon_perimeter
from .christoffel2d import curvature_density
from .errors import UnsupportedDimension, UnsupportedVariant
from .sphere_geom import (
    AxialPlane,
    CircleGrid,
    SphereGrid,
    ball_volume,
    circle_angle,
    embed,
    integrate_circle,
    integrate_sphere_cylindrical,
    polar_angle,
)

__all__ = [
    "SupportFunction",
    "Ball",
    "Ellipsoid",
    "Polytope",
    "DiskBody",
    "AxialSegment",
    "ZonalBody",
    "MinkowskiSum",
    "Sampled",
    "PlanarBody",
    "ConvexityReport",
    "support",
    "sample",
    "project",
    "steiner_point",
    "planar_v1",
    "pole_faces",
    "pole_values",
    "pole_slack",
    "translate",
    "dilate",
    "rotate_about_axis",
    "cube",
    "cylinder",
    "check_support_function",
]


def _vec(c, n):
    return np.zeros(n) if c is None else np.asarray(c, dtype=float).ravel()


class SupportFunction:
    """Common interface of all body variants."""

    dim: int
    #: exact polygonal projections onto axial planes are available
    polygonal: bool = False
    smooth: bool = False

    def support(self, x) -> np.ndarray:
        raise NotImplementedError

    def __add__(self, other: "SupportFunction") -> "MinkowskiSum":
        return MinkowskiSum((self, other))


@dataclass(frozen=True, eq=False)
class Ball(SupportFunction):
    radius: float = 1.0
    center: np.ndarray | None = None
    dim: int = 3
    smooth = True

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        c = _vec(self.center, self.dim)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "dim", c.size)

    def support(self, x):
        x = np.asarray(x, dtype=float)
        return self.radius * np.linalg.norm(x, axis=-1) + x @ self.center


@dataclass(frozen=True, eq=False)
class Ellipsoid(SupportFunction):
    """Axis-aligned ellipsoid with the given semi-axes."""

    semi_axes: tuple
    center: np.ndarray | None = None
    smooth = True

    def __post_init__(self):
        a = np.asarray(self.semi_axes, dtype=float).ravel()
        if np.any(a <= 0):
            raise ValueError("semi-axes must be positive")
        object.__setattr__(self, "semi_axes", a)
        object.__setattr__(self, "center", _vec(self.center, a.size))

    @property
    def dim(self):
        return self.semi_axes.size

    def support(self, x):
        x = np.asarray(x, dtype=float)
        return np.sqrt(np.sum((self.semi_axes * x) ** 2, axis=-1)) + x @ self.center


@dataclass(frozen=True, eq=False)
class Polytope(SupportFunction):
    vertices: np.ndarray
    polygonal = True

    def __post_init__(self):
        v = np.atleast_2d(np.asarray(self.vertices, dtype=float))
        if v.shape[0] < 1:
            raise ValueError("a polytope needs at least one vertex")
        object.__setattr__(self, "vertices", v)

    @property
    def dim(self):
        return self.vertices.shape[1]

    def support(self, x):
        x = np.asarray(x, dtype=float)
        return np.max(x @ self.vertices.T, axis=-1)


@dataclass(frozen=True, eq=False)
class DiskBody(SupportFunction):
    """``radius * D``, the centered (n-1)-ball in ``e_n^perp``."""

    radius: float = 1.0
    dim: int = 3
    polygonal = True

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("radius must be positive")

    def support(self, x):
        x = np.asarray(x, dtype=float)
        return self.radius * np.linalg.norm(x[..., :-1], axis=-1)


@dataclass(frozen=True, eq=False)
class AxialSegment(SupportFunction):
    """The segment ``[-l e_n, l e_n]``."""

    half_length: float = 1.0
    dim: int = 3
    polygonal = True

    def __post_init__(self):
        if self.half_length <= 0:
            raise ValueError("half_length must be positive")

    def support(self, x):
        x = np.asarray(x, dtype=float)
        return self.half_length * np.abs(x[..., -1])


@dataclass(frozen=True, eq=False)
class ZonalBody(SupportFunction):
    """Body of revolution about ``e_n`` with ``h(u) = sum_k c_k P_k(<u, e_n>)``.

    ``P_k`` are Legendre polynomials.  Convexity is the caller's concern; for
    small higher coefficients relative to ``c_0`` the body is smooth and
    strictly convex.
    """

    coefficients: tuple
    center: np.ndarray | None = None
    dim: int = 3
    smooth = True

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=float).ravel()
        if c.size == 0 or c[0] <= 0:
            raise ValueError("need a positive constant coefficient")
        object.__setattr__(self, "coefficients", c)
        cen = _vec(self.center, self.dim)
        object.__setattr__(self, "center", cen)
        object.__setattr__(self, "dim", cen.size)

    def support(self, x):
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        with np.errstate(invalid="ignore", divide="ignore"):
            t = np.where(r > 0, x[..., -1] / np.where(r > 0, r, 1.0), 0.0)
        return r * legendre.legval(t, self.coefficients) + x @ self.center


@dataclass(frozen=True, eq=False)
class MinkowskiSum(SupportFunction):
    terms: tuple

    def __post_init__(self):
        flat = []
        for t in self.terms:
            flat.extend(t.terms if isinstance(t, MinkowskiSum) else [t])
        if not flat:
            raise ValueError("empty Minkowski sum")
        if len({t.dim for t in flat}) != 1:
            raise ValueError("summands live in different dimensions")
        object.__setattr__(self, "terms", tuple(flat))

    @property
    def dim(self):
        return self.terms[0].dim

    @property
    def polygonal(self):
        return all(t.polygonal for t in self.terms)

    @property
    def smooth(self):
        return any(t.smooth for t in self.terms) and all(t.smooth or t.polygonal for t in self.terms)

    def support(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros(x.shape[:-1])
        for t in self.terms:
            out = out + t.support(x)
        return out


def pole_values(values) -> tuple[np.ndarray, np.ndarray]:
    """Per-plane values at ``e_n`` and ``-e_n`` extrapolated from the samples.

    Each side of a pole is extrapolated from its three nearest samples (at
    distances ``s/2, 3s/2, 5s/2``) with the quadratic rule
    ``(15 f_1 - 10 f_2 + 3 f_3) / 8``, and the two sides are averaged.  The
    one-sided rules stay accurate when ``h`` has a corner at the pole, as it
    does whenever the body has a face with normal ``±e_n``.
    """
    V = np.atleast_2d(np.asarray(values, dtype=float))
    m = V.shape[1]
    h = m // 2

    def side(idx):
        f = V[:, np.asarray(idx) % m]
        return (15.0 * f[:, 0] - 10.0 * f[:, 1] + 3.0 * f[:, 2]) / 8.0

    north = 0.5 * (side([0, 1, 2]) + side([-1, -2, -3]))
    south = 0.5 * (side([h, h + 1, h + 2]) + side([h - 1, h - 2, h - 3]))
    return north, south


def pole_slack(values) -> tuple[np.ndarray, np.ndarray]:
    """Per-plane error allowance for :func:`pole_values` at ``e_n`` and ``-e_n``.

    Twice the largest raw second difference among the six samples around the
    pole.  It is ``O(s^2)`` for smooth ``h`` and of the size of the
    extrapolation error when ``h`` has a corner within a few samples of the
    pole (an edge normal next to ``±e_n``).
    """
    V = np.atleast_2d(np.asarray(values, dtype=float))
    m = V.shape[1]

    def window(c):
        idx = (c + np.arange(-3, 3)) % m
        f = V[:, idx]
        return 2.0 * np.max(np.abs(f[:, :-2] - 2.0 * f[:, 1:-1] + f[:, 2:]), axis=1)

    return window(0), window(m // 2)


@dataclass(frozen=True, eq=False)
class Sampled(SupportFunction):
    """Support function given by values ``(p, m)`` on a product grid.

    Off-grid directions are interpolated bilinearly in (azimuth, polar angle)
    on the half-meridians of the grid, with the poles filled in by
    :func:`pole_values`.
    """

    grid: SphereGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.grid.p, self.grid.m):
            raise ValueError(f"values have shape {v.shape}, expected {(self.grid.p, self.grid.m)}")
        if not np.all(np.isfinite(v)):
            raise ValueError("sampled values must be finite")
        if self.grid.n not in (2, 3):
            raise UnsupportedDimension("sampled bodies are implemented for n in (2, 3)")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def dim(self):
        return self.grid.n

    @cached_property
    def _table(self):
        """Half-meridian table: azimuth nodes, polar nodes, values, shape (2p+1, m/2+2)."""
        V = self.values
        p, m = V.shape
        h = m // 2
        az = self.grid.planes.azimuths
        if np.any(np.diff(az) <= 0) or az[-1] - az[0] >= math.pi:
            raise UnsupportedVariant("plane azimuths must be increasing within a half turn")
        alpha = np.concatenate([az, az + math.pi, [az[0] + 2.0 * math.pi]])
        north, south = pole_values(V)
        wts = self.grid.planes.weight_array
        n_val, s_val = float(wts @ north), float(wts @ south)
        rings = np.vstack([V[:, :h], V[:, ::-1][:, :h]])
        rings = np.vstack([rings, rings[:1]])
        T = np.empty((2 * p + 1, h + 2))
        T[:, 0] = n_val
        T[:, -1] = s_val
        T[:, 1:-1] = rings
        polar = np.concatenate([[0.0], self.grid.angles[:h], [math.pi]])
        return alpha, polar, T

    @cached_property
    def _slack_table(self):
        """Local bilinear-interpolation error bound at every table node."""
        alpha, polar, T = self._table
        V = self.values
        p, m = V.shape
        h = m // 2
        d_theta = np.abs(np.roll(V, 1, axis=1) - 2.0 * V + np.roll(V, -1, axis=1))
        dth = np.vstack([d_theta[:, :h], d_theta[:, ::-1][:, :h]])
        core = T[:-1, 1:-1]
        d_alpha = np.abs(np.roll(core, 1, axis=0) - 2.0 * core + np.roll(core, -1, axis=0))
        B = 0.5 * (dth + d_alpha)
        B = np.vstack([B, B[:1]])
        S = np.empty_like(T)
        S[:, 1:-1] = B
        S[:, 0] = np.max(B[:, 0])
        S[:, -1] = np.max(B[:, -1])
        return S

    def _locate(self, x):
        alpha, polar, _ = self._table
        x = np.asarray(x, dtype=float)
        a = (np.arctan2(x[..., 1], x[..., 0]) - alpha[0]) % (2.0 * math.pi) + alpha[0]
        i = np.clip(np.searchsorted(alpha, a, side="right") - 1, 0, alpha.size - 2)
        ta = (a - alpha[i]) / (alpha[i + 1] - alpha[i])
        th = polar_angle(x)
        k = np.clip(np.searchsorted(polar, th, side="right") - 1, 0, polar.size - 2)
        tt = (th - polar[k]) / (polar[k + 1] - polar[k])
        return i, ta, k, tt

    @staticmethod
    def _bilinear(T, i, ta, k, tt):
        return ((1 - ta) * (1 - tt) * T[i, k] + ta * (1 - tt) * T[i + 1, k]
                + (1 - ta) * tt * T[i, k + 1] + ta * tt * T[i + 1, k + 1])

    def support(self, x):
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        if self.grid.n == 2:
            E = self.grid.planes.planes[0]
            theta = circle_angle(x, E)
            row = self.values[0]
            t = np.concatenate([self.grid.angles - 2 * math.pi, self.grid.angles, self.grid.angles + 2 * math.pi])
            return r * np.interp(theta, t, np.concatenate([row, row, row]))
        i, ta, k, tt = self._locate(x)
        return r * self._bilinear(self._table[2], i, ta, k, tt)

    def interpolation_slack(self, x) -> np.ndarray:
        """Bound on the interpolation error at ``x`` (times ``|x|``)."""
        x = np.asarray(x, dtype=float)
        r = np.linalg.norm(x, axis=-1)
        if self.grid.n == 2:
            return np.zeros(r.shape)
        i, _, k, _ = self._locate(x)
        S = self._slack_table
        return r * np.maximum.reduce([S[i, k], S[i + 1, k], S[i, k + 1], S[i + 1, k + 1]])


def support(K: SupportFunction, u) -> np.ndarray | float:
    out = K.support(np.asarray(u, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def sample(K: SupportFunction, grid: SphereGrid) -> Sampled:
    return Sampled(grid, K.support(grid.points()))


@dataclass(frozen=True, eq=False)
class PlanarBody:
    """Projection of a body onto an axial plane.

    ``values`` are support values on ``grid``; ``polygon`` holds exact
    vertices (frame coordinates ``(e_n, w)``, counter-clockwise) when known.
    """

    grid: CircleGrid
    values: np.ndarray
    polygon: np.ndarray | None = None

    @property
    def is_polygon(self) -> bool:
        return self.polygon is not None


def _frame_vertices(K, E: AxialPlane):
    """Polygon (frame coordinates) of ``K|E`` for polygonal variants."""
    if isinstance(K, Polytope):
        V = K.vertices
        pts = np.stack([V[:, -1], V @ E.w_array], axis=-1)
    elif isinstance(K, DiskBody):
        pts = np.array([[0.0, -K.radius], [0.0, K.radius]])
    elif isinstance(K, AxialSegment):
        pts = np.array([[-K.half_length, 0.0], [K.half_length, 0.0]])
    elif isinstance(K, MinkowskiSum) and K.polygonal:
        pts = np.zeros((1, 2))
        for t in K.terms:
            q = _frame_vertices(t, E)
            pts = (pts[:, None, :] + q[None, :, :]).reshape(-1, 2)
            pts = convex_hull_2d(pts)
        return pts
    else:
        raise UnsupportedVariant(f"{type(K).__name__} has no exact polygonal projection")
    return convex_hull_2d(pts)


def project(K: SupportFunction, E, m: int | None = None) -> PlanarBody:
    """``K|E``: support values on the circle of ``E`` (and exact polygon if available).

    ``E`` is an :class:`AxialPlane` (then ``m`` is required) or a
    :class:`CircleGrid` carrying its plane.
    """
    grid = E if isinstance(E, CircleGrid) else CircleGrid(m, E)
    if grid.plane is None:
        raise ValueError("projection needs an axial plane")
    if isinstance(K, Sampled) and grid.m == K.grid.m and grid.plane in K.grid.planes.planes:
        values = K.values[K.grid.planes.planes.index(grid.plane)].copy()
    else:
        values = K.support(grid.points())
    poly = _frame_vertices(K, grid.plane) if K.polygonal else None
    return PlanarBody(grid, values, poly)


def steiner_point(K: SupportFunction, grid: SphereGrid) -> np.ndarray:
    """``(1/kappa_n) int h_K(u) u du`` by the cylinder-coordinate rule."""
    pts = grid.points()
    h = K.support(pts)
    return integrate_sphere_cylindrical(h[..., None] * pts, grid) / ball_volume(grid.n)


def planar_v1(L: PlanarBody) -> float:
    """First intrinsic volume (half the perimeter) of a planar body."""
    if L.is_polygon:
        V = L.polygon
        if len(V) == 1:
            return 0.0
        return 0.5 * polygon_perimeter(V)
    return 0.5 * integrate_circle(L.values)


def _face_v1(points: np.ndarray) -> float:
    """V_1 of conv(points) inside ``e_n^perp``, points given with n-1 coordinates."""
    if points.shape[1] == 1:
        return float(np.max(points) - np.min(points))
    if points.shape[1] == 2:
        hull = convex_hull_2d(points)
        return 0.0 if len(hull) == 1 else 0.5 * polygon_perimeter(hull)
    raise UnsupportedDimension("faces are handled for n in (2, 3)")


def pole_faces(K: SupportFunction) -> tuple[float, float]:
    """``(V_1(F(K, e_n)), V_1(F(K, -e_n)))``, exact per variant."""
    if isinstance(K, (Ball, Ellipsoid, ZonalBody, AxialSegment)):
        return 0.0, 0.0
    if isinstance(K, DiskBody):
        n = K.dim
        v1 = K.radius * (n - 1) * ball_volume(n - 1) / ball_volume(n - 2)
        return v1, v1
    if isinstance(K, Polytope):
        V = K.vertices
        z = V[:, -1]
        tol = 1e-12 * max(1.0, float(np.max(np.abs(V))))
        top = V[z >= z.max() - tol, :-1]
        bottom = V[z <= z.min() + tol, :-1]
        return _face_v1(top), _face_v1(bottom)
    if isinstance(K, MinkowskiSum):
        faces = [pole_faces(t) for t in K.terms]
        return math.fsum(f[0] for f in faces), math.fsum(f[1] for f in faces)
    raise UnsupportedVariant(f"pole faces are not available for {type(K).__name__}")


def translate(K: SupportFunction, x) -> SupportFunction:
    """``K + x``."""
    x = np.asarray(x, dtype=float)
    if isinstance(K, Ball):
        return Ball(K.radius, K.center + x)
    if isinstance(K, Ellipsoid):
        return Ellipsoid(K.semi_axes, K.center + x)
    if isinstance(K, ZonalBody):
        return ZonalBody(K.coefficients, K.center + x)
    if isinstance(K, Polytope):
        return Polytope(K.vertices + x)
    if isinstance(K, Sampled):
        raise UnsupportedVariant("translate sampled bodies by adding a linear function")
    return MinkowskiSum((K, Polytope(x[None, :])))


def dilate(K: SupportFunction, lam: float) -> SupportFunction:
    """``lam * K`` for ``lam > 0``."""
    if lam <= 0:
        raise ValueError("dilation factor must be positive")
    if isinstance(K, Ball):
        return Ball(lam * K.radius, lam * K.center)
    if isinstance(K, Ellipsoid):
        return Ellipsoid(lam * K.semi_axes, lam * K.center)
    if isinstance(K, ZonalBody):
        return ZonalBody(lam * K.coefficients, lam * K.center)
    if isinstance(K, Polytope):
        return Polytope(lam * K.vertices)
    if isinstance(K, DiskBody):
        return DiskBody(lam * K.radius, K.dim)
    if isinstance(K, AxialSegment):
        return AxialSegment(lam * K.half_length, K.dim)
    if isinstance(K, MinkowskiSum):
        return MinkowskiSum(tuple(dilate(t, lam) for t in K.terms))
    if isinstance(K, Sampled):
        return Sampled(K.grid, lam * K.values)
    raise UnsupportedVariant(type(K).__name__)


def _rot(psi):
    c, s = math.cos(psi), math.sin(psi)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def rotate_about_axis(K: SupportFunction, psi: float) -> SupportFunction:
    """Rotation of a body in ``R^3`` about ``e_3`` by ``psi``."""
    if K.dim != 3:
        raise UnsupportedDimension("axial rotations need n = 3")
    R = _rot(psi)
    if isinstance(K, Ball):
        return Ball(K.radius, R @ K.center)
    if isinstance(K, ZonalBody):
        return ZonalBody(K.coefficients, R @ K.center)
    if isinstance(K, Polytope):
        return Polytope(K.vertices @ R.T)
    if isinstance(K, (DiskBody, AxialSegment)):
        return K
    if isinstance(K, Ellipsoid):
        a = K.semi_axes
        if abs(a[0] - a[1]) <= 1e-15 * a[0]:
            return Ellipsoid(a, R @ K.center)
        raise UnsupportedVariant("only ellipsoids of revolution can be rotated")
    if isinstance(K, MinkowskiSum):
        return MinkowskiSum(tuple(rotate_about_axis(t, psi) for t in K.terms))
    raise UnsupportedVariant(type(K).__name__)


def cube(half_side: float = 1.0) -> Polytope:
    s = half_side
    V = np.array([[x, y, z] for x in (-s, s) for y in (-s, s) for z in (-s, s)])
    return Polytope(V)


def cylinder(radius: float = 1.0, half_height: float = 1.0) -> MinkowskiSum:
    return MinkowskiSum((DiskBody(radius), AxialSegment(half_height)))


@dataclass
class ConvexityReport:
    """Result of :func:`check_support_function`.

    ``worst_violation`` is the largest excess over all checks (negative or
    zero when nothing is violated); the verdict fails iff it exceeds ``tol``.
    """

    passed: bool
    worst_violation: float
    tol: float
    witness: dict | None
    checks: dict = field(default_factory=dict)


def _pair_sample(n_pairs, seed, min_angle):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((n_pairs, 3))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    t = rng.standard_normal((n_pairs, 3))
    t -= np.sum(t * x, axis=1, keepdims=True) * x
    t /= np.linalg.norm(t, axis=1, keepdims=True)
    beta = np.exp(rng.uniform(math.log(min_angle), math.log(0.5 * math.pi), n_pairs))
    y = np.cos(beta)[:, None] * x + np.sin(beta)[:, None] * t
    return x, y


def check_support_function(h: Sampled, tol: float | None = None, n_pairs: int = 100_000,
                           seed: int = 0) -> ConvexityReport:
    """Necessary-condition battery for a sampled support function.

    (a) ``h'' + h >= -tol`` along every axial great circle (discrete, exact for
        sampled support functions); (b) ``H(x + y) <= H(x) + H(y) + tol`` on a
        deterministic pseudo-random set of pairs, allowing for the local
        interpolation error bound; (c) the per-plane limits at ``±e_n`` agree
        within ``tol`` beyond their extrapolation allowance (:func:`pole_slack`).  ``tol`` defaults to ``10 (2 pi/m)^2 max|h|``.
    """
    V = h.values
    m = h.grid.m
    scale = float(np.max(np.abs(V)))
    if tol is None:
        tol = 10.0 * (2.0 * math.pi / m) ** 2 * max(scale, 1e-300)
    checks = {}
    witnesses = {}

    D = curvature_density(V, axis=1)
    j, k = np.unravel_index(int(np.argmin(D)), D.shape)
    checks["second_difference"] = float(-D[j, k])
    witnesses["second_difference"] = {"check": "second_difference", "plane": int(j), "sample": int(k),
                                      "angle": float(h.grid.angles[k]), "value": float(D[j, k])}

    if h.grid.n == 3:
        x, y = _pair_sample(n_pairs, seed, min_angle=0.5 * h.grid.step)
        s = x + y
        excess = (h.support(s) - h.support(x) - h.support(y)
                  - h.interpolation_slack(s) - h.interpolation_slack(x) - h.interpolation_slack(y))
        i = int(np.argmax(excess))
        checks["sublinearity"] = float(excess[i])
        witnesses["sublinearity"] = {"check": "sublinearity", "x": x[i].tolist(), "y": y[i].tolist(),
                                     "excess": float(excess[i])}

        north, south = pole_values(V)
        slack_n, slack_s = pole_slack(V)
        best = None
        for which, vals, sl in (("north", north, slack_n), ("south", south, slack_s)):
            hi, lo = int(np.argmax(vals - sl)), int(np.argmin(vals + sl))
            excess = float((vals[hi] - sl[hi]) - (vals[lo] + sl[lo]))
            if best is None or excess > best[0]:
                best = (excess, which, lo, hi, vals, sl)
        excess, which, lo, hi, vals, sl = best
        checks["pole_continuity"] = excess
        witnesses["pole_continuity"] = {"check": "pole_continuity", "pole": which, "planes": [lo, hi],
                                        "values": [float(vals[lo]), float(vals[hi])],
                                        "slack": [float(sl[lo]), float(sl[hi])]}

    name = max(checks, key=checks.get)
    worst = checks[name]
    passed = worst <= tol
    return ConvexityReport(passed, worst, tol, None if passed else witnesses[name], checks)
