"""
Automorphisms of the polyball built from factor permutations, unitary twists
of each row, and coordinatewise Mobius maps on the polydisk.

Permutations are 1-based: ``sigma = (2, 1)`` swaps two factors, and the
permuted tuple has ``X_{sigma(i)}`` in slot ``i``. Mobius maps for rows with
two or more generators are not provided.
"""

from dataclasses import dataclass

import numpy as np

from .domain import OperatorTuple, membership
from .errors import DomainError, InvalidInputError, UnsupportedShapeError
from .linalg_core import as_matrix, dagger, inverse, operator_norm

__all__ = [
    "PolyballAutomorphism",
    "permute",
    "unitary_twist",
    "mobius_polydisk",
    "mobius_scalar",
    "apply",
    "UNITARY_TOL",
]

UNITARY_TOL = 1e-12


def _check_sigma(sigma, X):
    sigma = tuple(int(s) for s in sigma)
    if sorted(sigma) != list(range(1, X.k + 1)):
        raise InvalidInputError(f"{sigma} is not a permutation of 1..{X.k}")
    for i, s in enumerate(sigma):
        if X.shape.n[s - 1] != X.shape.n[i]:
            raise InvalidInputError(
                f"factor {s} has {X.shape.n[s - 1]} generators, slot {i + 1} needs {X.shape.n[i]}")
    return sigma


def permute(sigma, X):
    """Factor permutation ``(X_{sigma(1)}, ..., X_{sigma(k)})``."""
    sigma = _check_sigma(sigma, X)
    return OperatorTuple([X.rows[s - 1] for s in sigma])


def _check_unitary(U, n, i, tol=UNITARY_TOL):
    U = as_matrix(U, f"U_{i}")
    if U.shape != (n, n):
        raise InvalidInputError(f"U_{i} must be {n} x {n}, got {U.shape}")
    err = operator_norm(dagger(U) @ U - np.eye(n))
    if err > tol:
        raise InvalidInputError(f"U_{i} is not unitary (deviation {err:.2e} > {tol:.0e})")
    return U


def unitary_twist(U, X, tol=UNITARY_TOL):
    """Right multiply each row by a unitary: ``X'_{i,j} = sum_l X_{i,l} (U_i)_{l,j}``."""
    if len(U) != X.k:
        raise InvalidInputError(f"need {X.k} unitaries, got {len(U)}")
    rows = []
    for i, (u, row) in enumerate(zip(U, X.rows), start=1):
        u = _check_unitary(u, len(row), i, tol)
        rows.append([sum(u[l, j] * row[l] for l in range(len(row)))
                     for j in range(len(row))])
    return OperatorTuple(rows)


def mobius_scalar(lam, z):
    """``(lam - z) / (1 - conj(lam) z)``, an involution of the unit disk."""
    lam, z = complex(lam), np.asarray(z, dtype=complex)
    return (lam - z) / (1.0 - np.conj(lam) * z)


def mobius_polydisk(lam, X):
    """Apply ``(l_i I - X_i)(I - conj(l_i) X_i)^{-1}`` to each coordinate.

    Raises
    ------
    UnsupportedShapeError
        If some factor has more than one generator.
    DomainError
        If ``|l_i| >= 1`` or ``I - conj(l_i) X_i`` is singular.
    """
    if not X.shape.is_polydisk:
        raise UnsupportedShapeError("Mobius maps are implemented on the polydisk only")
    lam = np.atleast_1d(np.asarray(lam, dtype=complex))
    if lam.shape != (X.k,):
        raise InvalidInputError(f"need {X.k} Mobius parameters, got {lam.shape}")
    if np.any(np.abs(lam) >= 1):
        raise DomainError("Mobius parameters must lie in the open unit disk")
    I = np.eye(X.d)
    out = []
    for l, row in zip(lam, X.rows):
        M = row[0]
        out.append([(l * I - M) @ inverse(I - np.conj(l) * M)])
    return OperatorTuple(out)


@dataclass(frozen=True)
class PolyballAutomorphism:
    """Composite ``p_sigma o Phi_U o Psi_lambda`` (``Psi_lambda`` applied first).

    Parameters
    ----------
    sigma : tuple of int, optional
        1-based factor permutation; identity if omitted.
    unitaries : tuple of arrays, optional
        One ``n_i x n_i`` unitary per factor.
    lam : tuple of complex, optional
        Mobius parameters (polydisk only).
    """

    sigma: tuple = None
    unitaries: tuple = None
    lam: tuple = None

    @classmethod
    def from_dict(cls, data):
        """Build from ``{"sigma": [...], "unitaries": [...], "lambda": [...]}``.

        Complex entries may be numbers or ``[re, im]`` pairs.
        """
        def cx(v):
            if isinstance(v, (list, tuple)) and len(v) == 2 and all(
                    isinstance(t, (int, float)) for t in v):
                return complex(v[0], v[1])
            return complex(v)

        sigma = data.get("sigma")
        unit = data.get("unitaries")
        lam = data.get("lambda")
        if unit is not None:
            unit = tuple(np.array([[cx(e) for e in row] for row in U]) for U in unit)
        if lam is not None:
            lam = tuple(cx(v) for v in lam)
        return cls(tuple(sigma) if sigma is not None else None, unit, lam)


def apply(aut, X, check=True):
    """Image of ``X`` under the composite automorphism.

    With ``check`` an interior input must map to an interior output, else
    :class:`DomainError`.
    """
    Y = X
    if aut.lam is not None:
        Y = mobius_polydisk(aut.lam, Y)
    if aut.unitaries is not None:
        Y = unitary_twist(aut.unitaries, Y)
    if aut.sigma is not None:
        Y = permute(aut.sigma, Y)
    if check and membership(X).region == "interior" and membership(Y).region != "interior":
        raise DomainError("automorphism image left the open polyball")
    return Y
