# coding: utf-8

# # Kernels on a truncated Fock space
#
# A point X of the polyball is a tuple of commuting d x d matrices. Its
# Berezin, Cauchy and Poisson kernels live on (Fock space) x C^d.

import numpy as np

from polyball import (OperatorTuple, berezin_kernel, berezin_transform, build_fock_model,
                      cauchy_kernel, defect, harnack_bound_check, minkowski_gauge,
                      poisson_kernel)
from polyball.sampling import commuting_normal_tuple, nilpotent_tuple, rescale_to_gauge

rng = np.random.default_rng(0)

# ## The Fock model
#
# Basis words are sorted by length, then lexicographically. `S` prepends a
# letter, `R` appends one, and both kill the top degree.

m = build_fock_model((2,), 2)
print(m.labels())
print(m.S(1, 2, dense=True).astype(int))


# ## Berezin kernel of a nilpotent point
#
# Products of three entries vanish, so truncating at L = 3 loses nothing and
# K is an exact isometry.

X = rescale_to_gauge(nilpotent_tuple(rng, (2, 1), 3), 0.8)
m = build_fock_model(X.shape, 3)
K = berezin_kernel(X, m)
print("||K*K - I||  ", np.abs(K.conj().T @ K - np.eye(X.d)).max())
print("defect eigs  ", np.linalg.eigvalsh(defect(X)))

# The transform of S_1 S_1^* gives back X_1 X_1^*.

S = m.S(1, 1, dense=True)
print(np.abs(berezin_transform(X, m, S @ S.T) - X[1, 1] @ X[1, 1].conj().T).max())


# ## Poisson kernel and the Harnack sandwich
#
# P = C*C lies between ((1-g)/(1+g))^k and ((1+g)/(1-g))^k times the
# identity, g being the Minkowski gauge.

X = rescale_to_gauge(commuting_normal_tuple(rng, (1, 1), 2), 0.6)
m = build_fock_model(X.shape, 8)
C = cauchy_kernel(X, m)
P = poisson_kernel(X, m)
print("||P - C*C|| ", np.abs(P - C.conj().T @ C).max())
g = minkowski_gauge(X)
w = np.linalg.eigvalsh(P)
print(f"gauge {g:.3f}: spectrum in [{w.min():.4f}, {w.max():.4f}],"
      f" bounds [{((1 - g) / (1 + g)) ** 2:.4f}, {((1 + g) / (1 - g)) ** 2:.4f}]")
print(harnack_bound_check(lambda Y: poisson_kernel(Y, m), X))
