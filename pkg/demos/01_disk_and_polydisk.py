# coding: utf-8

# # Distances on the disk and the bidisk
#
# The Poisson metric `delta_p` is computed from Cauchy kernels on a truncated
# Fock space. For scalar points of the disk it should reproduce the
# Poincare distance, and on the polydisk the sum of the coordinate distances.

import numpy as np

from polyball import OperatorTuple, delta_h_polydisk, delta_h_scalar, delta_p, kobayashi_polydisk


def pt(*z):
    return OperatorTuple.from_scalars([[v] for v in z])


# ## One variable
#
# Half log of (1 + rho) / (1 - rho), with rho the pseudo-hyperbolic distance.

z, w = 0.5 + 0.2j, -0.3 + 0.1j
rho = abs((z - w) / (1 - np.conj(z) * w))
exact = 0.5 * np.log((1 + rho) / (1 - rho))

rep = delta_p(pt(z), pt(w))
print("delta_p       ", rep.value)
print("closed form   ", exact)
print("error         ", abs(rep.value - exact), " estimate", rep.error_estimate)

# Each truncation gives a lower bound. The tail shrinks like 1/L^2, which is
# why the report fits a series in 1/(L+2) over the whole ladder instead of
# trusting the largest L.

for row in rep.ladder[::2]:
    print(f"  L={row['L'][0]:4d}  raw={row['value']:.10f}  gap={exact - row['value']:.2e}")


# ## Two variables
#
# On the bidisk the metric splits as a sum over coordinates, while the
# Kobayashi distance keeps only the largest coordinate.

z, w = np.array([0.5, 0.3j]), np.array([0.0, -0.4])
print("delta_h (operator form)", delta_h_polydisk(pt(*z), pt(*w)).value)
print("delta_h (closed form)  ", delta_h_scalar(z, w))
print("kobayashi              ", kobayashi_polydisk(z, w))
