"""The planar Christoffel problem: first area measures and Berg inversion.

Angles refer to the planar frame ``v(theta) = (cos theta, sin theta)``.  On a
uniform circle grid the first area measure of a body with support function
``h`` has density ``h'' + h``; Berg's kernel

    g(t) = sqrt(1 - t^2) (pi - arccos t) + c t

inverts this operator on centered measures.  With normalization ``1/(2 pi)``
the uniform measure ``d theta`` is mapped to the constant ``1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._planar import convex_hull_2d, polygon_edges
from .errors import DegenerateInput, NegativeCurvature, NotCentered, NotEven
from .measures import CircleMeasure, even_defect
from .sphere_geom import CircleGrid, integrate_circle

__all__ = [
    "BergKernel",
    "curvature_density",
    "forward_smooth",
    "forward_polygon",
    "berg_invert",
    "berg_invert_many",
    "even_invert",
    "even_invert_many",
    "even_kernel_angular",
    "even_kernel_angular_derivative",
    "steiner_2d",
    "remove_linear_part",
]

_TWO_PI = 2.0 * math.pi


def _wrap(x):
    """Angles reduced to ``[-pi, pi]``."""
    return np.angle(np.exp(1j * np.asarray(x, dtype=float)))


@dataclass(frozen=True)
class BergKernel:
    normalization: float = 1.0 / _TWO_PI
    c_coefficient: float = 0.0

    def __call__(self, t):
        """``g_2(t)`` with the argument clamped to ``[-1, 1]``."""
        t = np.clip(np.asarray(t, dtype=float), -1.0, 1.0)
        return np.sqrt(1.0 - t * t) * (math.pi - np.arccos(t)) + self.c_coefficient * t

    def angular(self, x):
        """``g_2(cos x)`` evaluated stably from the angle ``x``."""
        x = np.abs(_wrap(x))
        return np.sin(x) * (math.pi - x) + self.c_coefficient * np.cos(x)

    def angular_derivative(self, x):
        """``d/dx g_2(cos x)``; one-sided limits ``±pi`` at ``x = ±0``."""
        x = _wrap(x)
        a = np.abs(x)
        return np.sign(x) * (np.cos(a) * (math.pi - a) - np.sin(a)) - self.c_coefficient * np.sin(x)

    def calibration_error(self, m: int = 4096) -> float:
        """Sup deviation from 1 when inverting the uniform measure."""
        grid = CircleGrid(m)
        h = berg_invert(CircleMeasure(grid, np.ones(m)), self)
        return float(np.max(np.abs(h - 1.0)))


def curvature_density(h, axis: int = -1) -> np.ndarray:
    """Discrete ``h'' + h`` on a uniform periodic grid.

    The central second difference is divided by ``2 - 2 cos(step)`` rather
    than ``step**2``.  This keeps second-order accuracy, annihilates linear
    functions ``a cos + b sin`` exactly, and makes the result non-negative for
    every sampled support function: ``h(t+s) + h(t-s) >= 2 cos(s) h(t)`` is
    sublinearity applied to ``v(t+s) + v(t-s) = 2 cos(s) v(t)``.
    """
    h = np.asarray(h, dtype=float)
    m = h.shape[axis]
    c = math.cos(_TWO_PI / m)
    return (np.roll(h, 1, axis=axis) + np.roll(h, -1, axis=axis) - 2.0 * c * h) / (2.0 - 2.0 * c)


def forward_smooth(h, grid: CircleGrid | None = None, tol: float | None = None) -> CircleMeasure:
    """First area measure of the planar body with sampled support function ``h``.

    Raises
    ------
    NegativeCurvature
        If the discrete density drops below ``-tol`` (default
        ``10 (2 pi/m)^2 max|h|``).  Values in ``[-tol, 0)`` are set to zero.
    """
    h = np.asarray(h, dtype=float)
    m = h.size
    if m < 16:
        raise ValueError("forward_smooth needs at least 16 samples")
    grid = grid or CircleGrid(m)
    if tol is None:
        tol = 10.0 * (_TWO_PI / m) ** 2 * max(float(np.max(np.abs(h))), 1e-300)
    d = curvature_density(h)
    worst = float(np.min(d))
    if worst < -tol:
        k = int(np.argmin(d))
        raise NegativeCurvature(f"h'' + h = {worst:.3e} at sample {k}: not a support function")
    return CircleMeasure(grid, np.where(d < 0.0, 0.0, d))


def forward_polygon(vertices, grid: CircleGrid | None = None) -> CircleMeasure:
    """Edge-length atoms at the outer normals of a convex polygon (or segment)."""
    hull = convex_hull_2d(vertices)
    if len(hull) < 2:
        raise DegenerateInput("a polygon needs at least two distinct vertices")
    angles, lengths = polygon_edges(hull)
    return CircleMeasure(grid, None, angles, lengths)


def steiner_2d(h, axis: int = -1) -> np.ndarray:
    """``(1/pi) int h(theta) (cos theta, sin theta) d theta`` from grid samples."""
    h = np.moveaxis(np.asarray(h, dtype=float), axis, -1)
    fp = CircleGrid(h.shape[-1]).frame_points()
    return integrate_circle(h[..., None] * fp, axis=-2) / math.pi


def remove_linear_part(h, axis: int = -1) -> np.ndarray:
    """Subtract ``<s, v(theta)>`` where ``s`` is the Steiner point of the samples."""
    h = np.moveaxis(np.asarray(h, dtype=float), axis, -1)
    s = steiner_2d(h)
    fp = CircleGrid(h.shape[-1]).frame_points()
    return np.moveaxis(h - s @ fp.T, -1, axis)


def _kernel_row(kernel_angular, m: int) -> np.ndarray:
    d = np.arange(m) * (_TWO_PI / m)
    return kernel_angular(d)


def _circulant_apply(row, D):
    """``y[..., i] = sum_k row[(i - k) % m] D[..., k]``."""
    m = row.size
    return np.fft.irfft(np.fft.rfft(row) * np.fft.rfft(D, axis=-1), n=m, axis=-1)


def _atoms_part(kernel_angular, theta, angles, masses):
    if not len(masses):
        return np.zeros_like(theta)
    return kernel_angular(theta[:, None] - np.asarray(angles)[None, :]) @ np.asarray(masses)


def berg_invert_many(densities, atoms, m: int, kernel: BergKernel | None = None) -> np.ndarray:
    """Vectorized Berg inversion of ``p`` centered measures on one circle grid.

    Parameters
    ----------
    densities : array, shape (p, m)
        Density samples (zeros where a measure has no density).
    atoms : sequence of (angles, masses)
        Atom data per measure.

    Returns
    -------
    H : array, shape (p, m)
        ``normalization * int g(<u, v>) mu(dv)`` at the grid angles, with the
        linear part of the density contribution removed.

    Notes
    -----
    The kernel has a derivative jump of ``2 pi`` at ``u = v``, which sits on a
    grid node; the trapezoid rule is corrected by ``step^2/12 * 2 pi f(u)``,
    leaving an ``O(step^4)`` quadrature error.  Atoms are summed exactly.
    """
    kernel = kernel or BergKernel()
    D = np.asarray(densities, dtype=float).reshape(-1, m)
    step = _TWO_PI / m
    theta = (np.arange(m) + 0.5) * step
    # the linear c-term integrates to zero against centered measures
    ang = BergKernel(kernel.normalization, 0.0).angular
    H = step * _circulant_apply(_kernel_row(ang, m), D)
    H += (step * step / 12.0) * _TWO_PI * D
    H = kernel.normalization * remove_linear_part(H)
    for j, (a, w) in enumerate(atoms):
        H[j] += kernel.normalization * _atoms_part(ang, theta, a, w)
    return H


def berg_invert(mu: CircleMeasure, kernel: BergKernel | None = None, grid: CircleGrid | None = None,
                centering_tol: float = 1e-8) -> np.ndarray:
    """Support function samples of the centered body whose area measure is ``mu``.

    ``grid`` defaults to the grid of ``mu``.  The first moment of ``mu`` must not
    exceed ``centering_tol`` times its mass.
    """
    grid = grid or mu.grid
    if grid is None:
        raise ValueError("no output grid")
    if mu.grid is not None and mu.density is not None and mu.grid.m != grid.m:
        raise ValueError("output grid must match the density grid")
    mass = mu.total_mass()
    mom = float(np.linalg.norm(mu.first_moment()))
    if mom > centering_tol * max(mass, 1e-300):
        raise NotCentered(f"first moment {mom:.3e} exceeds {centering_tol:g} x mass {mass:.3e}")
    dens = mu.density_or_zero() if mu.density is not None else np.zeros(grid.m)
    return berg_invert_many(dens[None, :], [(mu.atom_angles, mu.atom_masses)], grid.m, kernel)[0]


def even_kernel_angular(x):
    """``sqrt(1 - cos^2 x) = |sin x|``."""
    return np.abs(np.sin(x))


def even_kernel_angular_derivative(x):
    return np.sign(np.sin(x)) * np.cos(x)


def even_invert_many(densities, atoms, m: int, normalization: float = 0.25) -> np.ndarray:
    """``normalization * int |sin(theta - t)| mu(dt)`` for even measures.

    With the default ``1/4`` this is the even part of :func:`berg_invert_many`
    (``g(t) + g(-t) = pi sqrt(1 - t^2)``).  The kernel has corners at ``u = v``
    and ``u = -v``, both grid nodes, and both are corrected.
    """
    D = np.asarray(densities, dtype=float).reshape(-1, m)
    step = _TWO_PI / m
    theta = (np.arange(m) + 0.5) * step

    ang = even_kernel_angular
    H = step * _circulant_apply(_kernel_row(ang, m), D)
    H += (step * step / 12.0) * 2.0 * (D + np.roll(D, m // 2, axis=-1))
    H = normalization * H
    for j, (a, w) in enumerate(atoms):
        H[j] += normalization * _atoms_part(ang, theta, a, w)
    return H


def even_invert(mu: CircleMeasure, grid: CircleGrid | None = None, even_tol: float = 1e-8) -> np.ndarray:
    grid = grid or mu.grid
    defect = even_defect(mu)
    scale = max(mu.total_mass(), 1e-300)
    if defect > even_tol * scale:
        raise NotEven(f"antipodal defect {defect:.3e} exceeds {even_tol:g} x mass")
    dens = mu.density_or_zero() if mu.density is not None else np.zeros(grid.m)
    return even_invert_many(dens[None, :], [(mu.atom_angles, mu.atom_masses)], grid.m)[0]
