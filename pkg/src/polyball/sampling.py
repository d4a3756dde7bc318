"""
Seeded generators of test points: scalars in the disk, commuting normal
tuples, nilpotent tuples and random unitaries.

Every function takes a ``numpy.random.Generator`` so suites are reproducible
from one seed.
"""

import numpy as np
from scipy.stats import unitary_group

from .domain import OperatorTuple, minkowski_gauge
from .fock import PolyballShape

__all__ = [
    "disk_point",
    "polydisk_point",
    "scalar_tuple",
    "commuting_normal_tuple",
    "nilpotent_tuple",
    "random_unitary",
    "rescale_to_gauge",
]


def disk_point(rng, rmax=1.0):
    """Uniform point of the disk of radius ``rmax``."""
    return complex(rmax * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform()))


def polydisk_point(rng, k, rmax=1.0):
    return np.array([disk_point(rng, rmax) for _ in range(k)])


def _ball_row(rng, n, rmax):
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return rmax * rng.uniform() ** (1.0 / (2 * n)) * v / np.linalg.norm(v)


def scalar_tuple(rng, shape, rmax=0.8):
    """Scalar tuple with each row uniform in the ball of radius ``rmax``."""
    shape = shape if isinstance(shape, PolyballShape) else PolyballShape(shape)
    return OperatorTuple.from_scalars([_ball_row(rng, n, rmax) for n in shape.n])


def random_unitary(rng, n):
    if n == 1:
        return np.array([[np.exp(2j * np.pi * rng.uniform())]])
    return unitary_group.rvs(n, random_state=rng)


def commuting_normal_tuple(rng, shape, d, rmax=0.8):
    """``X_{i,j} = V diag(x_{i,j}) V^*`` with one random unitary ``V``.

    Each eigenvalue slot carries an independent scalar point, so the tuple
    cross-commutes and lies in the open polyball.
    """
    shape = shape if isinstance(shape, PolyballShape) else PolyballShape(shape)
    V = random_unitary(rng, d)
    slots = [scalar_tuple(rng, shape, rmax).scalars() for _ in range(d)]
    rows = []
    for i, n in enumerate(shape.n):
        rows.append([V @ np.diag([s[i][j] for s in slots]) @ V.conj().T for j in range(n)])
    return OperatorTuple(rows)


def nilpotent_tuple(rng, shape, d, scale=0.5):
    """Entries are polynomials without constant term in one ``d x d`` nilpotent.

    The nilpotent is a unitary conjugate of the Jordan block, so all entries
    commute and every product of ``d`` entries vanishes.
    """
    shape = shape if isinstance(shape, PolyballShape) else PolyballShape(shape)
    V = random_unitary(rng, d)
    J = V @ np.eye(d, k=-1) @ V.conj().T
    powers = [np.linalg.matrix_power(J, p) for p in range(1, d)]
    rows = []
    for n in shape.n:
        row = []
        for _ in range(n):
            c = rng.standard_normal(len(powers)) + 1j * rng.standard_normal(len(powers))
            row.append(scale * sum(ci * P for ci, P in zip(c, powers)) / np.sqrt(2 * n))
        rows.append(row)
    return OperatorTuple(rows)


def rescale_to_gauge(X, target):
    """Scale ``X`` so its Minkowski gauge equals ``target`` (zero stays zero)."""
    g = minkowski_gauge(X)
    return X if g == 0 else X.scaled(target / g)
