# coding: utf-8

# # Distances between matrix points
#
# Away from scalars there is no closed form. We check what must hold anyway:
# the triangle inequality, invariance under automorphisms, and agreement
# between the metric and the smallest Poisson domination constant.

import numpy as np

from polyball import (OperatorTuple, build_fock_model, d_p, delta_p, minimal_domination_constant,
                      permute, unitary_twist)
from polyball.metrics import comparison_bounds
from polyball.sampling import (commuting_normal_tuple, nilpotent_tuple, random_unitary,
                               rescale_to_gauge)

rng = np.random.default_rng(3)

# Three points of the (2,1) polyball with d = 2: one ball factor with two
# generators and one disk factor.

A = rescale_to_gauge(commuting_normal_tuple(rng, (2, 1), 2), 0.7)
B = rescale_to_gauge(nilpotent_tuple(rng, (2, 1), 2), 0.6)
C = OperatorTuple.zeros((2, 1), 2)
m = build_fock_model((2, 1), 3)


def dist(X, Y):
    return delta_p(X, Y, model=m, extrapolate=False).value


print("d(A,B) + d(B,C) - d(A,C) =", dist(A, B) + dist(B, C) - dist(A, C))

# A unitary mixing the two generators of the ball factor changes nothing.

U = [random_unitary(rng, 2), random_unitary(rng, 1)]
print("twist drift", dist(unitary_twist(U, A), unitary_twist(U, B)) - dist(A, B))


# ## Domination constant
#
# The smallest c with P(rB)/c <= P(rA) <= c P(rB) over the r grid, found by
# bisection, is exp(delta_p) at the same truncation.

c = minimal_domination_constant(A, B, m)
print("bisection", c, " exp(delta_p)", np.exp(dist(A, B)))


# ## The auxiliary metric
#
# d_p is the largest gap ||P(rA) - P(rB)||; it grows with r.

rep = d_p(A, B, model=m, extrapolate=False)
print("per r:", np.round(rep.ladder[0]["per_r"], 5))
print(comparison_bounds(A, B, m))

# Permuting two disk factors is also an automorphism.

A = rescale_to_gauge(commuting_normal_tuple(rng, (1, 1), 2), 0.5)
B = rescale_to_gauge(nilpotent_tuple(rng, (1, 1), 2), 0.5)
m = build_fock_model((1, 1), 4)
print("swap drift", dist(permute((2, 1), A), permute((2, 1), B)) - dist(A, B))
