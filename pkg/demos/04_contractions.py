# coding: utf-8

# # Holomorphic maps do not increase the distance
#
# Two test maps of the bidisk: a product of Mobius maps in each coordinate,
# and (z1, z2) -> (z1 z2, 0) into the row ball, measured there with the
# Poincare-Bergman distance.

import numpy as np

from polyball import delta_h_scalar, poincare_bergman_ball
from polyball.sampling import polydisk_point
from polyball.verify import mobius_product_map, product_map

rng = np.random.default_rng(8)

worst_mob, worst_prod = -np.inf, -np.inf
for _ in range(500):
    z, w = polydisk_point(rng, 2, 0.95), polydisk_point(rng, 2, 0.95)
    f = mobius_product_map(*polydisk_point(rng, 3, 0.9))
    base = delta_h_scalar(z, w)
    worst_mob = max(worst_mob, delta_h_scalar(f(z), f(w)) - base)
    worst_prod = max(worst_prod, poincare_bergman_ball(product_map(z), product_map(w)) - base)
print("largest increase, Mobius products:", worst_mob)
print("largest increase, (z1 z2, 0):     ", worst_prod)

# The growth bound at the origin:
# (1 + |f(z)|) / (1 - |f(z)|) <= prod (1 + |z_i|) / (1 - |z_i|).

z = polydisk_point(rng, 2, 0.999)
fz = np.linalg.norm(product_map(z))
print((1 + fz) / (1 - fz), "<=", np.prod([(1 + abs(v)) / (1 - abs(v)) for v in z]))
