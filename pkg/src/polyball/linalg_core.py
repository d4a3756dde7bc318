"""
Dense complex matrix primitives.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``; the
helpers here validate them and provide the spectral quantities used by the
kernel and metric code (operator norms, PSD tests, square roots, inverses).

Tensor products follow one global convention: factor 1 is the slowest index
and the last factor is the fastest, so ``kron(A, B)`` acts on ``x ⊗ y`` with
``y`` varying fastest.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .errors import DomainError, InvalidInputError, SingularMatrixError

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "as_matrix",
    "operator_norm",
    "singular_extremes",
    "hermitian_eigvalsh",
    "is_psd",
    "min_eig",
    "spectral_radius",
    "inverse",
    "psd_sqrt",
    "kron",
    "dagger",
]

SVD_DIM_LIMIT = 2000


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances with their documented defaults.

    psd : slack for positive-semidefinite tests and Hermitian symmetry.
    alg : slack for algebraic identities (products, commutators).
    tail : truncation-tail threshold used by convergence checks.
    solve : residual bound ``||M M^-1 - I||`` accepted by :func:`inverse`.
    cond_cap : largest condition number :func:`inverse` will accept.
    """

    psd: float = 1e-9
    alg: float = 1e-12
    tail: float = 1e-8
    solve: float = 1e-8
    cond_cap: float = 1e13

    def __post_init__(self):
        for name in ("psd", "alg", "tail", "solve", "cond_cap"):
            if not getattr(self, name) > 0:
                raise InvalidInputError(f"tolerance {name!r} must be positive")


DEFAULT_TOL = Tolerances()


def as_matrix(M, name="matrix"):
    """Return ``M`` as a finite 2-D complex array, raising on bad input."""
    if scipy.sparse.issparse(M):
        M = M.toarray()
    A = np.asarray(M, dtype=complex)
    if A.ndim == 0:
        A = A.reshape(1, 1)
    if A.ndim != 2:
        raise InvalidInputError(f"{name} must be two-dimensional, got shape {A.shape}")
    if A.shape[0] < 1 or A.shape[1] < 1:
        raise InvalidInputError(f"{name} has a zero dimension: {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return A


def _square(M, name="matrix"):
    A = as_matrix(M, name)
    if A.shape[0] != A.shape[1]:
        raise InvalidInputError(f"{name} must be square, got shape {A.shape}")
    return A


def dagger(M):
    """Conjugate transpose."""
    return np.conj(np.asarray(M)).T


def operator_norm(M):
    """Largest singular value of ``M``.

    Full SVD up to ``SVD_DIM_LIMIT`` rows/columns, Lanczos (ARPACK) above it.
    """
    A = as_matrix(M)
    if max(A.shape) <= SVD_DIM_LIMIT:
        return float(np.linalg.svd(A, compute_uv=False)[0])
    s = scipy.sparse.linalg.svds(A, k=1, which="LM", tol=1e-12,
                                 return_singular_vectors=False)
    return float(s[0])


def singular_extremes(M):
    """Return ``(sigma_max, sigma_min)`` of a square matrix from one SVD."""
    A = _square(M)
    s = np.linalg.svd(A, compute_uv=False)
    return float(s[0]), float(s[-1])


def hermitian_eigvalsh(M, tol=DEFAULT_TOL.psd):
    """Eigenvalues (ascending) of the Hermitian part of ``M``.

    Asymmetry beyond ``tol * (1 + ||M||)`` is an error rather than being
    silently symmetrised away.
    """
    A = _square(M)
    scale = 1.0 + float(np.max(np.abs(A)))
    asym = float(np.max(np.abs(A - dagger(A))))
    if asym > tol * scale * max(1, A.shape[0]) ** 0.5:
        raise DomainError(f"matrix is not Hermitian (asymmetry {asym:.3e})")
    return np.linalg.eigvalsh(0.5 * (A + dagger(A)))


def min_eig(M):
    """Smallest eigenvalue of the Hermitian part, with no symmetry check."""
    A = _square(M)
    return float(np.linalg.eigvalsh(0.5 * (A + dagger(A)))[0])


def is_psd(M, tol=DEFAULT_TOL.psd):
    """True iff ``M`` is Hermitian and positive semidefinite up to ``tol``.

    Hermitian means ``||M - M*|| <= tol (1 + ||M||)``; positivity means the
    smallest eigenvalue of ``(M + M*)/2`` is at least ``-tol``.
    """
    A = _square(M)
    if operator_norm(A - dagger(A)) > tol * (1.0 + operator_norm(A)):
        return False
    return min_eig(A) >= -tol


def spectral_radius(M):
    """Largest eigenvalue modulus."""
    A = _square(M)
    return float(np.max(np.abs(np.linalg.eigvals(A))))


def inverse(M, tol=DEFAULT_TOL):
    """Inverse of a square matrix.

    Raises
    ------
    SingularMatrixError
        If the condition number exceeds ``tol.cond_cap`` or the residual
        ``||M M^-1 - I||`` exceeds ``tol.solve``. The estimate is attached as
        ``exc.condition``.
    """
    A = _square(M)
    cond = float(np.linalg.cond(A))
    if not np.isfinite(cond) or cond > tol.cond_cap:
        raise SingularMatrixError(
            f"matrix is singular or ill-conditioned (cond ~ {cond:.3e})", condition=cond)
    Ainv = np.linalg.inv(A)
    resid = operator_norm(A @ Ainv - np.eye(A.shape[0]))
    if resid > tol.solve:
        raise SingularMatrixError(
            f"inverse residual {resid:.3e} exceeds {tol.solve:.1e}", condition=cond)
    return Ainv


def psd_sqrt(M, tol=DEFAULT_TOL.psd):
    """Hermitian PSD square root; eigenvalues in ``[-tol, 0)`` are clipped to 0."""
    A = _square(M)
    if not is_psd(A, tol):
        raise DomainError("psd_sqrt requires a positive semidefinite matrix")
    w, V = np.linalg.eigh(0.5 * (A + dagger(A)))
    w = np.clip(w, 0.0, None)
    return (V * np.sqrt(w)) @ dagger(V)


def kron(A, B):
    """Kronecker product, ``A`` on the slow index."""
    if scipy.sparse.issparse(A) or scipy.sparse.issparse(B):
        return scipy.sparse.kron(A, B, format="csr")
    return np.kron(as_matrix(A, "A"), as_matrix(B, "B"))


def solve_lower(T, B):
    """Solve ``T X = B`` for lower-triangular ``T``."""
    return scipy.linalg.solve_triangular(T, B, lower=True, check_finite=False)
