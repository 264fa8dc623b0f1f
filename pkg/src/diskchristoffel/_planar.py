"""Exact planar polygon helpers (frame coordinates ``(e_n, w)``)."""

from __future__ import annotations

import math

import numpy as np

_TWO_PI = 2.0 * math.pi


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points, tol: float = 1e-12) -> np.ndarray:
    """Vertices of the convex hull in counter-clockwise order.

    Monotone chain; collinear and duplicate points are dropped.  Degenerate
    inputs come back as one vertex (a point) or two (a segment).
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    scale = max(1.0, float(np.max(np.abs(pts)))) if pts.size else 1.0
    uniq = sorted({(float(x), float(y)) for x, y in pts})
    # merge near-duplicates that differ by rounding only
    merged = []
    for q in uniq:
        if merged and abs(q[0] - merged[-1][0]) <= tol * scale and abs(q[1] - merged[-1][1]) <= tol * scale:
            continue
        merged.append(q)
    if len(merged) <= 2:
        return np.array(merged)
    eps = tol * scale * scale
    lower, upper = [], []
    for q in merged:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], q) <= eps:
            lower.pop()
        lower.append(q)
    for q in reversed(merged):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], q) <= eps:
            upper.pop()
        upper.append(q)
    hull = lower[:-1] + upper[:-1]
    return np.array(hull)


def polygon_edges(vertices):
    """Outer normal angles in ``[0, 2 pi)`` and edge lengths of a CCW polygon.

    A two-vertex polygon is a segment and yields both sides.
    """
    V = np.asarray(vertices, dtype=float)
    if len(V) < 2:
        return np.empty(0), np.empty(0)
    d = np.roll(V, -1, axis=0) - V
    if len(V) == 2:
        d = d[:1]
        d = np.vstack([d, -d])
    lengths = np.hypot(d[:, 0], d[:, 1])
    # outer normal of a CCW edge: direction rotated by -90 degrees
    angles = np.arctan2(-d[:, 0], d[:, 1]) % _TWO_PI
    return angles, lengths


def polygon_support(vertices, directions) -> np.ndarray:
    V = np.asarray(vertices, dtype=float)
    return np.max(np.asarray(directions, dtype=float) @ V.T, axis=-1)


def polygon_perimeter(vertices) -> float:
    _, lengths = polygon_edges(vertices)
    return float(math.fsum(lengths))


def polygon_steiner_point(vertices) -> np.ndarray:
    """Steiner point: vertices weighted by their normal-cone angles over ``2 pi``."""
    V = np.asarray(vertices, dtype=float)
    if len(V) == 1:
        return V[0].copy()
    angles, _ = polygon_edges(V)
    if len(V) == 2:
        return V.mean(axis=0)
    # vertex i sits between edge i-1 (normal angles[i-1]) and edge i
    ext = (angles - np.roll(angles, 1)) % _TWO_PI
    return (ext[:, None] * V).sum(axis=0) / _TWO_PI
