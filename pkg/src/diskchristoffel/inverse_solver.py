"""Reconstruct a convex body from its disk area measure, or certify that none exists.

Pipeline for a family ``{mu_E}``:

1. solvability pre-checks (continuity of ``rho``, per-plane centering, no
   mass at the poles);
2. per-plane Berg inversion of ``(2/kappa_{n-1}) mu_E``, i.e.
   ``H(u) = 1/(pi kappa_{n-1}) int g(<u, v>) mu_E(dv)``;
3. the axial widths ``H_E(e_n) + H_E(-e_n)`` must agree across planes;
4. each ``H_E`` is the support function of ``K|E`` minus the linear function
   of the planar Steiner point ``s(K|E)``.  These per-plane points are *not*
   the projections of one vector in general, so they are restored from the
   data (:func:`restore_linear_parts`): matching the pole values fixes the
   ``e_n`` components, matching the tangential slopes at the poles fixes the
   ``w`` components.  Without pole mass a valid ``h`` is differentiable at
   ``±e_n``, so its pole slope is linear in ``w`` (certificate
   ``pole_consistency`` otherwise);
5. the assembled ``h`` must pass the convexity battery;
6. re-forwarding ``h`` must reproduce the input (self-certification).

The result is unique up to one global translation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bodies import ConvexityReport, Sampled, SupportFunction, check_support_function, pole_values
from .christoffel2d import (
    BergKernel,
    berg_invert_many,
    even_invert_many,
    even_kernel_angular,
    even_kernel_angular_derivative,
)
from .disk_forward import forward, mixed_volume
from .errors import NotEven, UnsupportedDimension
from .measures import (
    DisintegratedMeasure,
    SphereDensity,
    check_conditions,
    density_to_family,
    even_defect,
    family_distance,
    total_mass,
)
from .sphere_geom import ball_volume

__all__ = [
    "Certificate",
    "SolveReport",
    "UniquenessReport",
    "invert",
    "invert_even",
    "invert_density",
    "uniqueness_check",
    "discretization_tolerance",
    "self_certification_error",
    "error_up_to_translation",
    "restore_linear_parts",
    "AtomPart",
    "atom_part",
    "pole_data",
    "family_atom_part",
]


@dataclass
class Certificate:
    """A violated condition: ``condition`` id, where it was observed, by how much."""

    condition: str
    location: dict
    magnitude: float
    threshold: float

    def as_dict(self) -> dict:
        return {"condition": self.condition, "location": self.location,
                "magnitude": self.magnitude, "threshold": self.threshold}


@dataclass
class SolveReport:
    """Outcome of an inversion.

    ``h`` is set iff ``verdict == "solvable"``.  ``candidate`` keeps the
    assembled per-plane inversion whenever it was computed, so rejected runs
    can still be inspected.  ``calibration`` records the constants used.
    """

    verdict: str
    h: Sampled | None
    certificates: list
    calibration: dict
    tolerances: dict
    candidate: Sampled | None = None
    convexity: ConvexityReport | None = None
    self_certification: dict = field(default_factory=dict)

    @property
    def solvable(self) -> bool:
        return self.verdict == "solvable"

    def certificate(self, condition: str) -> Certificate | None:
        for c in self.certificates:
            if c.condition == condition:
                return c
        return None


def discretization_tolerance(m: int) -> float:
    """Relative tolerance ``10 (2 pi/m)^2`` tied to the circle resolution."""
    return 10.0 * (2.0 * math.pi / m) ** 2


def _check_dim(fam):
    if fam.n not in (2, 3):
        raise UnsupportedDimension(f"inversion is implemented for n in (2, 3), got {fam.n}")


def _precheck(fam, tol):
    cond = check_conditions(fam, tol)
    certs = []
    if not cond.pushforward_ok:
        j = cond.continuity_location
        certs.append(Certificate("pushforward", {"plane": j, "next_plane": (j + 1) % fam.grid.p},
                                 cond.continuity_modulus, cond.continuity_threshold))
    if not cond.pole_ok:
        north, south = cond.pole_mass
        certs.append(Certificate("pole_mass", {"pole": "north" if north >= south else "south"},
                                 max(north, south), cond.pole_threshold))
    if not cond.centering_ok:
        certs.append(Certificate("centering", {"plane": cond.worst_moment_plane},
                                 cond.worst_moment, cond.centering_threshold))
    return cond, certs


def _scaled_inputs(fam, factor):
    dens = np.array([mu.density_or_zero() for mu in fam.family]) * factor
    atoms = [(mu.atom_angles, factor * mu.atom_masses) for mu in fam.family]
    return dens, atoms


def self_certification_error(fam: DisintegratedMeasure, H: Sampled,
                             kernel: BergKernel | None = None) -> dict:
    """Distance between ``fam`` and the forward family of ``H``.

    Two relative errors: the sup difference of the Berg transforms (a weak
    norm in which atoms and their discretized images are comparable) over
    ``max|H|``, and the sup difference of ``rho`` over ``max rho``.
    """
    kernel = kernel or BergKernel()
    factor = 2.0 / ball_volume(fam.n - 1)
    re = forward(H, fam.grid).family
    d0, a0 = _scaled_inputs(fam, factor)
    d1, a1 = _scaled_inputs(re, factor)
    m = fam.grid.m
    B0 = berg_invert_many(d0, a0, m, kernel)
    B1 = berg_invert_many(d1, a1, m, kernel)
    weak = float(np.max(np.abs(B1 - B0))) / max(float(np.max(np.abs(H.values))), 1e-300)
    rho = float(np.max(np.abs(re.rho - fam.rho))) / max(float(np.max(fam.rho)), 1e-300)
    return {"weak": weak, "rho": rho, "error": max(weak, rho)}


def _pole_slopes(H: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-plane ``d/dtheta`` at ``theta = 0`` and ``theta = pi`` (central differences)."""
    m = H.shape[1]
    dt = 2.0 * math.pi / m
    return (H[:, 0] - H[:, -1]) / dt, (H[:, m // 2] - H[:, m // 2 - 1]) / dt


@dataclass(frozen=True, eq=False)
class AtomPart:
    """Exact contribution of the atoms to the per-plane inversions.

    Atoms are the only source of kinks in ``H``; evaluating their part in
    closed form at the poles keeps the pole values and slopes second order
    even when an edge normal lies a fraction of a grid step from ``±e_n``.

    Attributes
    ----------
    values : ndarray, shape (p, m)
        Atom part on the circle grid.
    poles : ndarray, shape (p, 2)
        Atom part at ``theta = 0`` and ``theta = pi``.
    slopes : ndarray, shape (p, 2)
        Its ``d/dtheta`` there.
    """

    values: np.ndarray
    poles: np.ndarray
    slopes: np.ndarray


def atom_part(atoms, m: int, even: bool = False, normalization: float | None = None) -> AtomPart:
    """Atom part of :func:`berg_invert_many` (or the even kernel) for ``atoms`` per plane."""
    if even:
        ang, der = even_kernel_angular, even_kernel_angular_derivative
        norm = 0.25 if normalization is None else normalization
    else:
        k = BergKernel(normalization or BergKernel().normalization, 0.0)
        ang, der, norm = k.angular, k.angular_derivative, k.normalization
    p = len(atoms)
    theta = (np.arange(m) + 0.5) * (2.0 * math.pi / m)
    poles_at = np.array([0.0, math.pi])
    values, poles, slopes = np.zeros((p, m)), np.zeros((p, 2)), np.zeros((p, 2))
    for j, (a, w) in enumerate(atoms):
        if not len(w):
            continue
        a, w = np.asarray(a, dtype=float), np.asarray(w, dtype=float)
        values[j] = norm * (ang(theta[:, None] - a[None, :]) @ w)
        poles[j] = norm * (ang(poles_at[:, None] - a[None, :]) @ w)
        slopes[j] = norm * (der(poles_at[:, None] - a[None, :]) @ w)
    return AtomPart(values, poles, slopes)


def family_atom_part(fam: DisintegratedMeasure, even: bool = False,
                     kernel: BergKernel | None = None) -> AtomPart | None:
    """:class:`AtomPart` of the per-plane inversion of ``fam``; ``None`` without atoms."""
    if not fam.has_atoms:
        return None
    _, atoms = _scaled_inputs(fam, 2.0 / ball_volume(fam.n - 1))
    if even:
        return atom_part(atoms, fam.grid.m, even=True)
    return atom_part(atoms, fam.grid.m, normalization=(kernel or BergKernel()).normalization)


def pole_data(H: np.ndarray, atoms: AtomPart | None = None):
    """Per-plane values and ``d/dtheta`` of ``H`` at ``theta = 0`` and ``pi``.

    The smooth part ``H - atoms.values`` is extrapolated one-sidedly
    (values) and differenced across the pole (slopes); the atom part is
    added exactly.  Returns ``(north, south, slope_north, slope_south)``.
    """
    smooth = H if atoms is None else H - atoms.values
    north, south = pole_values(smooth)
    d0, dpi = _pole_slopes(smooth)
    if atoms is not None:
        north, south = north + atoms.poles[:, 0], south + atoms.poles[:, 1]
        d0, dpi = d0 + atoms.slopes[:, 0], dpi + atoms.slopes[:, 1]
    return north, south, d0, dpi


def restore_linear_parts(H: np.ndarray, grid, atoms: AtomPart | None = None) -> tuple[np.ndarray, dict]:
    """Add to every plane the linear function that makes the planes fit together.

    On plane ``E`` the correction is ``a_E cos(theta) + b_E sin(theta)`` with
    ``a_E = -(H_E(e_n) - H_E(-e_n))/2`` and ``b_E = -(H_E'(0) - H_E'(pi))/2``
    (see :func:`pole_data`).  The corrected planes then share their pole
    values (half the axial width) and pole slopes ``(H_E'(0) + H_E'(pi))/2``.

    Returns
    -------
    h : ndarray
        Corrected samples, same shape as ``H``.
    info : dict
        ``a``, ``b`` per plane, the common pole ``slope`` per plane, and the
        least-squares residual of that slope against ``z . w_E`` with the
        fitted ``z`` (``slope_residual``, ``slope_plane``, ``z``).
    """
    th = grid.angles
    cos, sin = np.cos(th)[None, :], np.sin(th)[None, :]
    # the pole extrapolation of cos and the discrete pole slope of sin, so that
    # the corrected planes match exactly under the same discrete operators
    c0 = float(pole_values(cos)[0][0])
    s0 = float(_pole_slopes(sin)[0][0])
    north, south, d0, dpi = pole_data(H, atoms)
    a = -0.5 * (north - south) / c0
    b = -0.5 * (d0 - dpi) / s0
    h = H + a[:, None] * cos + b[:, None] * sin
    slope = 0.5 * (d0 + dpi)
    W = np.array([E.w_array[:-1] for E in grid.planes.planes])
    z, *_ = np.linalg.lstsq(W, slope, rcond=None)
    res = slope - W @ z
    j = int(np.argmax(np.abs(res)))
    return h, {"a": a, "b": b, "slope": slope, "z": z,
               "slope_residual": float(abs(res[j])), "slope_plane": j}


def _finish(fam, H, atoms, certs, calibration, tolerances, battery_tol, kernel, certify):
    grid = fam.grid
    scale = max(float(np.max(np.abs(H))), 1e-300)
    thr = battery_tol * scale
    if grid.n == 3 and grid.p > 1:
        north, south, _, _ = pole_data(H, atoms)
        widths = north + south
        spread = float(np.ptp(widths))
        if spread > thr:
            lo, hi = int(np.argmin(widths)), int(np.argmax(widths))
            certs.append(Certificate("axial_width",
                                     {"planes": [lo, hi], "widths": [float(widths[lo]), float(widths[hi])]},
                                     spread, thr))
        H, info = restore_linear_parts(H, grid, atoms)
        calibration = dict(calibration, linear_parts="restored from pole values and pole slopes")
        if info["slope_residual"] > thr:
            j = info["slope_plane"]
            certs.append(Certificate("pole_consistency",
                                     {"plane": j, "slope": float(info["slope"][j]),
                                      "fitted": float(grid.planes.planes[j].w_array[:-1] @ info["z"])},
                                     info["slope_residual"], thr))
    cand = Sampled(grid, H)
    conv = check_support_function(cand, tol=thr)
    if not conv.passed:
        certs.append(Certificate("convexity", conv.witness, conv.worst_violation, conv.tol))
    report = SolveReport("rejected", None, certs, calibration, tolerances, cand, conv)
    if certs:
        return report
    if certify:
        sc = self_certification_error(fam, cand, kernel)
        sc["threshold"] = tolerances["self_certification"]
        report.self_certification = sc
        if sc["error"] > sc["threshold"]:
            certs.append(Certificate("self_certification", {"norm": "berg" if sc["weak"] >= sc["rho"] else "rho"},
                                     sc["error"], sc["threshold"]))
            return report
    report.verdict = "solvable"
    report.h = cand
    return report


def _tolerances(fam, tol, battery_tol):
    battery = discretization_tolerance(fam.grid.m) if battery_tol is None else battery_tol
    return battery, {"conditions": tol, "battery": battery, "self_certification": 10.0 * battery}


def invert(fam: DisintegratedMeasure, tol: float = 1e-6, battery_tol: float | None = None,
           kernel: BergKernel | None = None, certify: bool = True) -> SolveReport:
    """Solve ``S_1(K, D; .) = mu`` for a family, or reject it with certificates.

    Parameters
    ----------
    fam : DisintegratedMeasure
        The measure, disintegrated along the axial planes.
    tol : float
        Relative tolerance of the pre-checks (times the total mass).
    battery_tol : float, optional
        Relative tolerance of the pole and convexity checks, default
        ``10 (2 pi/m)^2``; the self-certification threshold is ten times it.
    certify : bool
        Re-forward the reconstruction and compare with ``fam``.

    Returns
    -------
    SolveReport
        ``verdict`` is ``"solvable"`` with the reconstructed support function
        in ``h``, or ``"rejected"`` with at least one certificate.  A family
        that is not centered is rejected before any inversion is attempted.
    """
    _check_dim(fam)
    kernel = kernel or BergKernel()
    battery, tolerances = _tolerances(fam, tol, battery_tol)
    kappa = ball_volume(fam.n - 1)
    calibration = {"kernel": "berg", "normalization": kernel.normalization,
                   "plane_scale": 2.0 / kappa, "constant": 1.0 / (math.pi * kappa)}
    cond, certs = _precheck(fam, tol)
    if not cond.centering_ok:
        return SolveReport("rejected", None, certs, calibration, tolerances)
    dens, atoms = _scaled_inputs(fam, 2.0 / kappa)
    H = berg_invert_many(dens, atoms, fam.grid.m, kernel)
    part = family_atom_part(fam, kernel=kernel)
    return _finish(fam, H, part, certs, calibration, tolerances, battery, kernel, certify)


def invert_even(fam: DisintegratedMeasure, tol: float = 1e-6, battery_tol: float | None = None,
                even_tol: float = 1e-8, certify: bool = True) -> SolveReport:
    """Inversion for families that are even under ``v -> -v`` on every plane.

    Uses ``H(u) = 1/(2 kappa_{n-1}) int sqrt(1 - <u, v>^2) mu_E(dv)``.

    Raises
    ------
    NotEven
        If some ``mu_E`` differs from its reflection by more than
        ``even_tol`` times the total mass.
    """
    _check_dim(fam)
    scale = max(total_mass(fam), 1e-300)
    for j, mu in enumerate(fam.family):
        d = even_defect(mu)
        if d > even_tol * scale:
            raise NotEven(f"plane {j}: antipodal defect {d:.3e} exceeds {even_tol:g} x mass")
    battery, tolerances = _tolerances(fam, tol, battery_tol)
    kappa = ball_volume(fam.n - 1)
    calibration = {"kernel": "even", "normalization": 0.25, "plane_scale": 2.0 / kappa,
                   "constant": 1.0 / (2.0 * kappa)}
    cond, certs = _precheck(fam, tol)
    dens, atoms = _scaled_inputs(fam, 2.0 / kappa)
    H = even_invert_many(dens, atoms, fam.grid.m)
    part = family_atom_part(fam, even=True)
    return _finish(fam, H, part, certs, calibration, tolerances, battery, None, certify)


def invert_density(q: SphereDensity, tol: float = 1e-6, **kwargs) -> SolveReport:
    """:func:`invert` applied to the disintegration of ``q(u) du``."""
    return invert(density_to_family(q), tol, **kwargs)


@dataclass
class UniquenessReport:
    vkk: float
    vkl: float
    vll: float
    margin: float
    relative_margin: float
    equality: bool
    families_coincide: bool
    distance: dict


def uniqueness_check(K: SupportFunction, L: SupportFunction, grid, tol: float = 1e-8) -> UniquenessReport:
    """Compare ``K`` and ``L`` through the mixed volumes ``V(., ., D^{[n-2]})``.

    ``margin = V(K,L)^2 - V(K,K) V(L,L)`` is non-negative (Minkowski's
    quadratic inequality).  ``equality`` is ``|margin| <= tol V(K,L)^2``;
    ``families_coincide`` compares the forward families sup-wise, relative to
    the larger total mass.
    """
    fk = forward(K, grid)
    fl = forward(L, grid)
    vkk = mixed_volume(K, fk)
    vll = mixed_volume(L, fl)
    vkl = mixed_volume(L, fk)
    margin = vkl * vkl - vkk * vll
    rel = margin / max(vkl * vkl, 1e-300)
    dist = family_distance(fk.family, fl.family)
    scale = max(total_mass(fk.family), total_mass(fl.family), 1e-300)
    coincide = max(dist.values()) <= tol * scale
    return UniquenessReport(vkk, vkl, vll, margin, rel, abs(rel) <= tol, coincide, dist)


def error_up_to_translation(K: SupportFunction, h: Sampled) -> dict:
    """Sup error of ``h`` against ``h_{K - v}`` for the least-squares best ``v``.

    Returns the fitted ``v``, the absolute sup error and that error relative
    to ``max |h_K|`` on the grid.
    """
    pts = h.grid.points().reshape(-1, h.grid.n)
    hk = K.support(pts)
    d = hk - h.values.ravel()
    v, *_ = np.linalg.lstsq(pts, d, rcond=None)
    err = float(np.max(np.abs(d - pts @ v)))
    return {"translation": v.tolist(), "sup_error": err,
            "relative_error": err / max(float(np.max(np.abs(hk))), 1e-300)}
