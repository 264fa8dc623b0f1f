"""A smooth body of revolution that is not centrally symmetric, shared by the demos."""

from diskchristoffel.bodies import ZonalBody

#: support function |x| * (1 + 0.1 P_2 + 0.05 P_3)(x_3/|x|)
ZONAL = ZonalBody((1.0, 0.0, 0.1, 0.05))
