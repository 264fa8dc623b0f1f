"""Measures that are not disk area measures, and how they are rejected.

Every rejection carries a certificate: which condition failed, where, by how
much, and the threshold it was compared against.
"""

import json

import numpy as np

from diskchristoffel.bodies import (
    Ball,
    Ellipsoid,
    Polytope,
    SupportFunction,
    check_support_function,
    cube,
    rotate_about_axis,
    sample,
)
from diskchristoffel.disk_forward import forward
from diskchristoffel.inverse_solver import invert
from diskchristoffel.measures import CircleMeasure, DisintegratedMeasure
from diskchristoffel.sphere_geom import SphereGrid


def show(title, rep):
    print(f"{title}: {rep.verdict}")
    for c in rep.certificates:
        print("   " + json.dumps(c.as_dict(), default=float))


def main():
    grid = SphereGrid.uniform(3, 64, 256)
    ball, ell = forward(Ball(), grid).family, forward(Ellipsoid((1, 1, 2)), grid).family

    spliced = [(ball if j % 2 == 0 else ell).family[j] for j in range(grid.p)]
    show("1. planes alternately from the ball and from Ellipsoid(1,1,2)",
         invert(DisintegratedMeasure.from_measures(grid, spliced)))

    show("2. the cube (square faces at the poles carry mass)", invert(forward(cube(), grid).family))

    mus = list(ball.family)
    mus[5] = mus[5] + CircleMeasure(grid.circle(5), None, [1.0], [0.5])
    show("3. one plane with an extra point mass (not centered)", invert(DisintegratedMeasure.from_measures(grid, mus)))

    P = Polytope(np.random.default_rng(7).standard_normal((15, 3)))
    fams = [forward(P, grid).family, forward(rotate_about_axis(P, 0.3), grid).family]
    pieces = [fams[j % 2].family[j] for j in range(grid.p)]
    show("4. planes alternately from a polytope and a rotated copy (pieces do not fit)",
         invert(DisintegratedMeasure.from_measures(grid, pieces)))

    class Kinked(SupportFunction):
        dim = 3

        def support(self, x):
            return np.linalg.norm(x, axis=-1) - 0.5 * np.abs(x[..., 0])

    rep = check_support_function(sample(Kinked(), grid))
    print("5. the function |x| - 0.5 |x_1| is not a support function:")
    print("   " + json.dumps(rep.witness))


if __name__ == "__main__":
    main()
