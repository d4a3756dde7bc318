"""
Operator tuples on a finite-dimensional space and polyball membership.

A tuple ``X = (X_1, ..., X_k)`` has one row ``X_i = (X_{i,1}, ..., X_{i,n_i})``
of ``d x d`` matrices per factor. Entries of different rows are expected to
commute; that is checked explicitly rather than assumed.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InvalidInputError
from .fock import PolyballShape, Word
from .linalg_core import (DEFAULT_TOL, as_matrix, dagger, kron, min_eig,
                          operator_norm, spectral_radius)

__all__ = [
    "OperatorTuple",
    "MembershipVerdict",
    "check_cross_commuting",
    "apply_phi",
    "defect",
    "membership",
    "joint_spectral_radius",
    "minkowski_gauge",
    "row_norm",
    "DEFAULT_MEMBERSHIP_GRID",
]

DEFAULT_MEMBERSHIP_GRID = (0.9, 0.99, 0.999)


class OperatorTuple:
    """A point ``X`` given by rows of ``d x d`` complex matrices.

    Parameters
    ----------
    rows : sequence of sequences of array_like
        ``rows[i][j]`` is ``X_{i+1,j+1}``.

    Examples
    --------
    >>> X = OperatorTuple.from_scalars([[0.5], [0.3]])
    >>> X.shape.n, X.d
    ((1, 1), 1)
    """

    __slots__ = ("rows", "shape", "d")

    def __init__(self, rows):
        rows = [list(r) for r in rows]
        if not rows or any(len(r) == 0 for r in rows):
            raise InvalidInputError("every factor needs at least one matrix")
        mats = [[as_matrix(M, f"X_{i + 1}_{j + 1}") for j, M in enumerate(r)]
                for i, r in enumerate(rows)]
        d = mats[0][0].shape[0]
        for i, r in enumerate(mats):
            for j, M in enumerate(r):
                if M.shape != (d, d):
                    raise InvalidInputError(
                        f"X_{i + 1}_{j + 1} has shape {M.shape}, expected {(d, d)}")
                M.setflags(write=False)
        self.rows = tuple(tuple(r) for r in mats)
        self.shape = PolyballShape(tuple(len(r) for r in mats))
        self.d = d

    @classmethod
    def from_scalars(cls, rows):
        """Tuple of ``1 x 1`` matrices from nested scalars."""
        return cls([[np.array([[complex(x)]]) for x in r] for r in rows])

    @classmethod
    def polydisk(cls, mats):
        """Polydisk tuple with one matrix (or scalar) per factor."""
        return cls([[m] for m in mats])

    @classmethod
    def zeros(cls, shape, d=1):
        shape = shape if isinstance(shape, PolyballShape) else PolyballShape(shape)
        return cls([[np.zeros((d, d)) for _ in range(n)] for n in shape.n])

    @property
    def k(self):
        return self.shape.k

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i - 1][j - 1]

    def row(self, i):
        return self.rows[i - 1]

    def scaled(self, r):
        """The tuple ``r X``."""
        return OperatorTuple([[r * M for M in row] for row in self.rows])

    def map(self, f):
        return OperatorTuple([[f(M) for M in row] for row in self.rows])

    def word_product(self, words):
        """``X_{1,a_1} ... X_{k,a_k}`` for one word per factor (1-based letters)."""
        if len(words) != self.k:
            raise InvalidInputError(f"need {self.k} words, got {len(words)}")
        P = np.eye(self.d, dtype=complex)
        for i, w in enumerate(words, start=1):
            letters = w.letters if isinstance(w, Word) else tuple(w)
            for a in letters:
                if not 1 <= a <= self.shape.n[i - 1]:
                    raise InvalidInputError(f"letter {a} out of range for factor {i}")
                P = P @ self.rows[i - 1][a - 1]
        return P

    def scalars(self):
        """Nested list of the entries when ``d == 1``."""
        if self.d != 1:
            raise InvalidInputError("scalars() requires d == 1")
        return [[complex(M[0, 0]) for M in row] for row in self.rows]

    def max_norm(self):
        return max(operator_norm(M) for row in self.rows for M in row)

    def distance(self, other):
        """Largest entrywise operator-norm difference to another tuple."""
        _same_layout(self, other)
        return max(operator_norm(a - b)
                   for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __eq__(self, other):
        if not isinstance(other, OperatorTuple):
            return NotImplemented
        return (self.shape == other.shape and self.d == other.d and all(
            np.array_equal(a, b)
            for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb)))

    __hash__ = None

    def __repr__(self):
        return f"OperatorTuple(n={self.shape.n}, d={self.d})"


def _same_layout(A, B):
    if A.shape != B.shape or A.d != B.d:
        raise InvalidInputError(
            f"tuples differ in layout: n={A.shape.n}, d={A.d} vs n={B.shape.n}, d={B.d}")


@dataclass(frozen=True)
class MembershipVerdict:
    """Classification of a tuple relative to the regular polyball."""

    region: str
    defect_min_eig: float
    row_norms: tuple
    details: str = ""
    commutator_residual: float = 0.0
    defect_spectrum: tuple = field(default=())

    def to_dict(self):
        return {
            "region": self.region,
            "defect_min_eig": self.defect_min_eig,
            "row_norms": list(self.row_norms),
            "defect_spectrum": list(self.defect_spectrum),
            "commutator_residual": self.commutator_residual,
            "details": self.details,
        }


def check_cross_commuting(X, tol=DEFAULT_TOL.alg):
    """Whether entries of different rows commute.

    Returns
    -------
    ok : bool
    residual : float
        Largest ``||X_{s,j} X_{t,l} - X_{t,l} X_{s,j}||`` over ``s != t``.
    """
    worst = 0.0
    for s in range(X.k):
        for t in range(s + 1, X.k):
            for A in X.rows[s]:
                for B in X.rows[t]:
                    worst = max(worst, operator_norm(A @ B - B @ A))
    return worst <= tol, worst


def apply_phi(row, Y):
    """``sum_j X_j Y X_j^*`` for a row of matrices."""
    Y = as_matrix(Y, "Y")
    out = np.zeros_like(Y)
    for M in row:
        M = as_matrix(M)
        if M.shape[1] != Y.shape[0] or Y.shape[1] != M.shape[1]:
            raise InvalidInputError(
                f"dimension mismatch: row entry {M.shape} with Y {Y.shape}")
        out = out + M @ Y @ dagger(M)
    return out


def defect(X):
    """``(id - Phi_{X_1}) o ... o (id - Phi_{X_k})`` applied to the identity.

    The innermost map is the last factor's, matching the written composition.
    """
    Y = np.eye(X.d, dtype=complex)
    for row in reversed(X.rows):
        Y = Y - apply_phi(row, Y)
    return Y


def row_norm(row):
    """``||sum_j X_j X_j^*||^{1/2}``."""
    d = row[0].shape[0]
    return float(np.sqrt(operator_norm(apply_phi(row, np.eye(d)))))


def _is_interior(X, tol):
    norms = [row_norm(r) for r in X.rows]
    D = defect(X)
    return all(v < 1 - tol for v in norms) and min_eig(D) > tol


def membership(X, tol=DEFAULT_TOL.psd, r_grid=DEFAULT_MEMBERSHIP_GRID,
               commute_tol=None):
    """Classify ``X`` as ``interior``, ``closure_boundary`` or ``outside``.

    Interior requires every row norm below ``1 - tol`` and the defect to
    have smallest eigenvalue above ``tol``. The closed polyball is tested by
    a surrogate: ``rX`` interior for every ``r`` in ``r_grid``, the defect of
    ``X`` PSD within ``tol`` and row norms at most ``1 + tol``.

    Raises
    ------
    DomainError
        If entries of different rows fail to commute.
    """
    ctol = max(tol, DEFAULT_TOL.alg) if commute_tol is None else commute_tol
    ok, resid = check_cross_commuting(X, ctol)
    if not ok:
        raise DomainError(f"tuple is not cross-commuting (residual {resid:.3e})")
    norms = tuple(row_norm(r) for r in X.rows)
    D = defect(X)
    w = np.linalg.eigvalsh(0.5 * (D + dagger(D)))
    lam = float(w[0])
    if all(v < 1 - tol for v in norms) and lam > tol:
        region, why = "interior", "row norms < 1 and defect positive definite"
    elif (all(v <= 1 + tol for v in norms) and lam >= -tol
          and all(_is_interior(X.scaled(r), tol) for r in r_grid)):
        region, why = "closure_boundary", f"rX interior for r in {list(r_grid)}"
    else:
        region = "outside"
        why = "row norm exceeds 1" if any(v > 1 + tol for v in norms) else \
            "defect not positive on the scaled grid"
    return MembershipVerdict(region, lam, norms, why, resid,
                             tuple(float(v) for v in w))


def joint_spectral_radius(row):
    """Spectral radius of ``Y -> sum_j X_j Y X_j^*``, square-rooted.

    The map is represented on column-stacked ``vec(Y)`` as
    ``sum_j conj(X_j) (x) X_j``.
    """
    row = [as_matrix(M) for M in row]
    d = row[0].shape[0]
    if any(M.shape != (d, d) for M in row):
        raise InvalidInputError("row entries must share one square shape")
    T = sum(kron(np.conj(M), M) for M in row)
    return float(np.sqrt(spectral_radius(T)))


def minkowski_gauge(X, tol=1e-10, max_iter=60, interior_tol=0.0):
    """Smallest ``t`` with ``X / t`` in the open polyball, by bisection.

    Returns 0 for the zero tuple. For points not in the open polyball the
    result is ``>= 1``.
    """
    if X.max_norm() == 0:
        return 0.0
    lo, hi = 0.0, 1.0 + X.max_norm()
    while not _is_interior(X.scaled(1.0 / hi), interior_tol):
        hi *= 2.0
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = 0.5 * (lo + hi)
        if mid > 0 and _is_interior(X.scaled(1.0 / mid), interior_tol):
            hi = mid
        else:
            lo = mid
    return hi
