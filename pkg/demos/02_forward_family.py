"""The disk area measure of a body in R^3 as a family over axial planes.

Each plane E through the e3 axis sees the projection K|E, a planar convex
body.  The disk area measure restricted to E is a multiple of the planar
first area measure of K|E, and its total mass on E is a multiple of the
perimeter of K|E.  Faces of K orthogonal to e3 put mass on the poles.
"""

import math

from diskchristoffel.bodies import Ball, Ellipsoid, cube, cylinder
from diskchristoffel.disk_forward import forward, mixed_volume_oracle, pole_mass
from diskchristoffel.measures import total_mass
from diskchristoffel.sphere_geom import SphereGrid
from demo_bodies import ZONAL


def describe(name, K, grid):
    res = forward(K, grid)
    fam = res.family
    atoms = sum(mu.atom_masses.size for mu in fam.family)
    kind = "density" if res.density is not None else f"{atoms} edge atoms"
    print(f"   {name:18s} total mass {total_mass(fam):10.6f}  rho in [{fam.rho.min():.5f}, {fam.rho.max():.5f}]"
          f"  pole mass {res.pole_mass_per_pole[0]:.5f}/{res.pole_mass_per_pole[1]:.5f}  ({kind})")


def main():
    grid = SphereGrid.uniform(3, 64, 512)
    print(f"Forward families on {grid.p} axial planes x {grid.m} circle samples:")
    for name, K in (("unit ball", Ball()), ("Ellipsoid(1,1,2)", Ellipsoid((1, 1, 2))),
                    ("Ellipsoid(1,2,3)", Ellipsoid((1, 2, 3))), ("zonal body", ZONAL),
                    ("cube", cube()), ("cylinder", cylinder())):
        describe(name, K, grid)

    print("\nIndependent check of the total mass for bodies of revolution:")
    for name, K in (("unit ball", Ball()), ("Ellipsoid(1,1,2)", Ellipsoid((1, 1, 2))), ("zonal body", ZONAL)):
        fwd = total_mass(forward(K, SphereGrid.uniform(3, 8, 4096)).family)
        print(f"   {name:18s} forward {fwd:.10f}   meridian quadrature {mixed_volume_oracle(K):.10f}")
    print(f"   (the unit ball has mass pi^2 = {math.pi ** 2:.10f})")

    print("\nPole masses from the faces at +-e3:")
    for name, K in (("cube", cube()), ("cylinder", cylinder())):
        print(f"   {name:18s} {pole_mass(K)}")


if __name__ == "__main__":
    main()
