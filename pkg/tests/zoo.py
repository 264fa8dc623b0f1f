"""Shared test bodies."""

import numpy as np

from diskchristoffel.bodies import (
    AxialSegment,
    Ball,
    DiskBody,
    Ellipsoid,
    MinkowskiSum,
    Polytope,
    SupportFunction,
    ZonalBody,
    cube,
    cylinder,
)

X0 = np.array([0.3, -0.2, 0.7])
RNG_POLY = Polytope(np.random.default_rng(7).standard_normal((15, 3)))
OCTAHEDRON = Polytope([[0, 0, 1], [0, 0, -1], [1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0]])
#: smooth, strictly convex, not centrally symmetric body of revolution
ZONAL = ZonalBody((1.0, 0.0, 0.1, 0.05))

ANALYTIC = {
    "ball": Ball(),
    "ball_x0": Ball(1.0, X0),
    "ellipsoid": Ellipsoid((1.0, 1.0, 2.0)),
    "ellipsoid_123": Ellipsoid((1.0, 2.0, 3.0), center=(0.1, 0.0, -0.2)),
    "cube": cube(),
    "random_polytope": RNG_POLY,
    "disk": DiskBody(1.3),
    "segment": AxialSegment(0.8),
    "cylinder": cylinder(),
    "zonal": ZONAL,
    "ball_plus_cube": MinkowskiSum((Ball(0.5), cube(0.5))),
}

SMOOTH_SOLVABLE = {
    "ball": Ball(),
    "ball_x0": Ball(1.0, X0),
    "ellipsoid": Ellipsoid((1.0, 1.0, 2.0)),
    "zonal": ZONAL,
}


class NonConvexKink(SupportFunction):
    """``1 - 0.5 |u_1|`` extended 1-homogeneously; not sublinear."""

    dim = 3

    def support(self, x):
        x = np.asarray(x, dtype=float)
        return np.linalg.norm(x, axis=-1) - 0.5 * np.abs(x[..., 0])


class AzimuthalKink(SupportFunction):
    """Convex on every axial circle, but the equatorial section is not convex."""

    dim = 3

    def support(self, x):
        x = np.asarray(x, dtype=float)
        r = np.hypot(x[..., 0], x[..., 1])
        return np.abs(x[..., 2]) + r - 0.3 * np.abs(x[..., 1])


def spliced_family(grid):
    """Planes alternately taken from the unit ball and from Ellipsoid(1, 1, 2)."""
    from diskchristoffel.disk_forward import forward
    from diskchristoffel.measures import DisintegratedMeasure

    fa = forward(Ball(), grid).family
    fb = forward(Ellipsoid((1.0, 1.0, 2.0)), grid).family
    fam = [(fa if j % 2 == 0 else fb).family[j] for j in range(grid.p)]
    return DisintegratedMeasure.from_measures(grid, fam)


def rotated_pieces_family(grid, K, psi=0.3):
    """Planes alternately from ``K`` and from ``K`` rotated about e_3 by ``psi``.

    Every plane is a valid planar measure with the same axial width, but the
    pieces do not fit together into one body.
    """
    from diskchristoffel.bodies import rotate_about_axis
    from diskchristoffel.disk_forward import forward
    from diskchristoffel.measures import DisintegratedMeasure

    fams = [forward(K, grid).family, forward(rotate_about_axis(K, psi), grid).family]
    fam = [fams[j % 2].family[j] for j in range(grid.p)]
    poles = [fams[j % 2].pole_atoms[j] for j in range(grid.p)]
    return DisintegratedMeasure.from_measures(grid, fam, poles)
