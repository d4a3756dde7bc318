"""
Berezin, Cauchy and Poisson kernels on the truncated Fock model.

All kernels act on ``F (x) H`` with the Fock index slow and the ``d``-dim
space ``H`` fast, so an operator ``g`` on the Fock space enters as
``kron(g, I_d)``.

The resolvent factors ``T_i = I - sum_j R_{i,j} (x) X_{i,j}^*`` are unit
lower triangular in the basis order (each ``R_{i,j}`` strictly raises a word
length), so they are inverted by triangular solves and the inverse Cauchy
kernel is a plain product with no inversion at all.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .domain import OperatorTuple, defect, joint_spectral_radius
from .errors import CapacityError, DomainError, InvalidInputError, UnsupportedShapeError
from .fock import build_fock_model, factor_words
from .linalg_core import (DEFAULT_TOL, as_matrix, dagger, inverse, is_psd,
                          operator_norm, psd_sqrt, solve_lower)

__all__ = [
    "KernelBundle",
    "PluriharmonicPoly",
    "PositivePluriharmonicModel",
    "berezin_kernel",
    "berezin_transform",
    "resolvent_factor",
    "lambda_operators",
    "cauchy_kernel",
    "inverse_cauchy_kernel",
    "poisson_kernel",
    "poisson_series",
    "poisson_series_poly",
    "pluriharmonic_eval",
    "positive_model_eval",
    "kernel_bundle",
    "check_r_admissible",
]


def _check_model(X, model):
    if X.shape != model.shape:
        raise InvalidInputError(
            f"tuple shape n={X.shape.n} does not match model shape n={model.shape.n}")


def _check_r(r):
    r = float(r)
    if not 0.0 <= r <= 1.0:
        raise InvalidInputError(f"r must lie in [0, 1], got {r}")
    return r


def check_r_admissible(X, r):
    """Require joint spectral radii below 1 when ``r == 1``.

    Raises
    ------
    DomainError
        Naming the first factor whose joint spectral radius is ``>= 1``.
    """
    if r < 1.0:
        return
    for i, row in enumerate(X.rows, start=1):
        rho = joint_spectral_radius(row)
        if rho >= 1.0 - 1e-12:
            raise DomainError(
                f"factor {i} has joint spectral radius {rho:.6g} >= 1; "
                "evaluate at r < 1")


def _defect_sqrt(X, tol):
    D = defect(X)
    if not is_psd(D, tol):
        raise DomainError(
            f"defect is not positive semidefinite (min eig {np.linalg.eigvalsh(0.5 * (D + dagger(D)))[0]:.3e})")
    return psd_sqrt(D, tol)


def berezin_kernel(X, model, tol=DEFAULT_TOL.psd):
    """Block column ``K`` with block ``Delta^{1/2} X_{1,b_1}^* ... X_{k,b_k}^*``.

    One ``d x d`` block per basis word ``(b_1, ..., b_k)`` of the model, in
    basis order. Here ``X_{i,b}^*`` is the adjoint of the word product.
    """
    _check_model(X, model)
    blocks = [_defect_sqrt(X, tol)]
    for i, (n, L) in enumerate(zip(model.shape.n, model.L)):
        adj = {(): np.eye(X.d, dtype=complex)}
        per = []
        for w in factor_words(n, L):
            if w:
                # (X_{w[0]} ... X_{w[-1]})^* = X_{w[-1]}^* (X_{w[:-1]})^*
                adj[w] = dagger(X.rows[i][w[-1] - 1]) @ adj[w[:-1]]
            per.append(adj[w])
        blocks = [b @ a for b in blocks for a in per]
    return np.vstack(blocks)


def berezin_transform(X, model, g, K=None):
    """``K^* (g (x) I) K`` for an operator ``g`` on the Fock space."""
    if K is None:
        K = berezin_kernel(X, model)
    if g.shape != (model.dim, model.dim):
        raise InvalidInputError(
            f"g must be {model.dim} x {model.dim}, got {g.shape}")
    G = sp.kron(sp.csr_matrix(g), sp.identity(X.d), format="csr")
    return dagger(K) @ (G @ K)


def resolvent_factor(X, model, i, r=1.0):
    """Sparse ``I - sum_j R_{i,j} (x) (r X_{i,j})^*``."""
    T = sp.identity(model.dim * X.d, dtype=complex, format="csr")
    for j, M in enumerate(X.rows[i - 1], start=1):
        T = T - sp.kron(model.R(i, j), sp.csr_matrix(r * dagger(M)), format="csr")
    return T.tocsr()


def lambda_operators(X, model, r=1.0):
    """``Lambda_i = sum_j R_{i,j}^* (x) r X_{i,j}`` for every factor (sparse)."""
    out = []
    for i in range(1, X.k + 1):
        Lam = sp.csr_matrix((model.dim * X.d,) * 2, dtype=complex)
        for j, M in enumerate(X.rows[i - 1], start=1):
            Lam = Lam + sp.kron(model.R(i, j).T, sp.csr_matrix(r * M), format="csr")
        out.append(Lam)
    return out


def cauchy_kernel(X, model, r=1.0, tol=DEFAULT_TOL.psd):
    """``(I (x) Delta_{rX}^{1/2}) T_1^{-1} ... T_k^{-1}`` as a dense matrix.

    Raises
    ------
    DomainError
        At ``r == 1`` if some factor has joint spectral radius ``>= 1``, or
        if the defect of ``rX`` is not PSD.
    """
    _check_model(X, model)
    r = _check_r(r)
    check_r_admissible(X, r)
    Xr = X.scaled(r)
    D = _defect_sqrt(Xr, tol)
    M = np.eye(model.dim * X.d, dtype=complex)
    for i in range(X.k, 0, -1):
        M = solve_lower(resolvent_factor(X, model, i, r).toarray(), M)
    return sp.kron(sp.identity(model.dim), sp.csr_matrix(D), format="csr") @ M


def inverse_cauchy_kernel(X, model, r=1.0, tol=DEFAULT_TOL):
    """``T_k ... T_1 (I (x) Delta_{rX}^{-1/2})``, the inverse of the Cauchy kernel.

    Raises
    ------
    SingularMatrixError
        If the defect of ``rX`` is singular.
    """
    _check_model(X, model)
    r = _check_r(r)
    check_r_admissible(X, r)
    Dinv = inverse(_defect_sqrt(X.scaled(r), tol.psd), tol)
    M = sp.kron(sp.identity(model.dim), sp.csr_matrix(Dinv), format="csr")
    for i in range(1, X.k + 1):
        M = resolvent_factor(X, model, i, r) @ M
    return M.toarray()


def poisson_kernel(X, model, r=1.0, C=None):
    """``P(R, rX) = C^* C`` from the Cauchy kernel."""
    if C is None:
        C = cauchy_kernel(X, model, r)
    return dagger(C) @ C


@dataclass
class PluriharmonicPoly:
    """Finite sum ``sum A_(a;b) (x) X_a X_b^*`` over pairs of word tuples.

    Parameters
    ----------
    coeffs : dict
        Maps ``(alphas, betas)`` to an ``e x e`` coefficient, where ``alphas``
        and ``betas`` hold one letter tuple per factor. In each factor at
        least one of the two words must be empty.
    """

    coeffs: dict
    e: int = field(init=False)

    def __post_init__(self):
        if not self.coeffs:
            raise InvalidInputError("a pluriharmonic polynomial needs a coefficient")
        clean, e = {}, None
        for key, A in self.coeffs.items():
            alphas, betas = key
            alphas = tuple(tuple(a) for a in alphas)
            betas = tuple(tuple(b) for b in betas)
            if len(alphas) != len(betas):
                raise InvalidInputError("alpha and beta need one word per factor")
            for i, (a, b) in enumerate(zip(alphas, betas), start=1):
                if a and b:
                    raise InvalidInputError(
                        f"factor {i} mixes degrees ({len(a)}, {len(b)}); one must be 0")
            A = as_matrix(A, "coefficient")
            if e is None:
                e = A.shape[0]
            if A.shape != (e, e):
                raise InvalidInputError("coefficients must share one square shape")
            key = (alphas, betas)
            clean[key] = clean[key] + A if key in clean else A
        self.coeffs = clean
        self.e = e

    @property
    def k(self):
        return len(next(iter(self.coeffs))[0])


def pluriharmonic_eval(F, X):
    """Evaluate ``F`` at ``X``: ``sum A (x) X_alpha X_beta^*``."""
    if F.k != X.k:
        raise InvalidInputError(f"polynomial has {F.k} factors, tuple has {X.k}")
    out = np.zeros((F.e * X.d, F.e * X.d), dtype=complex)
    for (alphas, betas), A in F.coeffs.items():
        Xa = X.word_product(alphas)
        Xb = np.eye(X.d, dtype=complex)
        for i, b in enumerate(betas):
            Xb = Xb @ dagger(X.word_product([() if j != i else b for j in range(X.k)]))
        out += np.kron(A, Xa @ Xb)
    return out


def _word_pairs(n, L):
    """Pairs ``(alpha, beta)`` over one factor with one of them empty."""
    words = factor_words(n, L)
    pairs = [((), b) for b in words]
    pairs += [(a, ()) for a in words if a]
    return pairs


def poisson_series_poly(model):
    """The truncated Poisson-kernel series as a :class:`PluriharmonicPoly`.

    Coefficient of ``(alpha; beta)`` is ``R_{~alpha}^* R_{~beta}`` where
    ``R_{~alpha}`` appends ``alpha`` to a basis word.
    """
    coeffs = {}
    per = [_word_pairs(n, L) for n, L in zip(model.shape.n, model.L)]
    for combo in itertools.product(*per):
        alphas = tuple(p[0] for p in combo)
        betas = tuple(p[1] for p in combo)
        Ra = sp.identity(model.dim, format="csr")
        Rb = sp.identity(model.dim, format="csr")
        for i, (a, b) in enumerate(combo, start=1):
            for letter in a:
                Ra = model.R(i, letter) @ Ra
            for letter in b:
                Rb = model.R(i, letter) @ Rb
        C = (Ra.T @ Rb).toarray()
        if np.any(C):
            coeffs[(alphas, betas)] = C
    return PluriharmonicPoly(coeffs)


def poisson_series(X, model, r=1.0):
    """Truncated Poisson series ``sum R_{~a}^* R_{~b} (x) (rX)_a (rX)_b^*``."""
    _check_model(X, model)
    return pluriharmonic_eval(poisson_series_poly(model), X.scaled(_check_r(r)))


class PositivePluriharmonicModel:
    """Commuting unitaries ``U_1..U_k`` on ``C^q`` and an embedding ``W`` (q x e).

    Raises
    ------
    InvalidInputError
        If some ``U_i`` is not unitary or two of them fail to commute
        (tolerance ``1e-12`` relative to dimension).
    """

    def __init__(self, U, W=None, tol=1e-12):
        U = [as_matrix(u, f"U_{i + 1}") for i, u in enumerate(U)]
        if not U:
            raise InvalidInputError("need at least one unitary")
        q = U[0].shape[0]
        scale = tol * max(1.0, np.sqrt(q))
        for i, u in enumerate(U, start=1):
            if u.shape != (q, q):
                raise InvalidInputError("unitaries must share one square shape")
            if operator_norm(dagger(u) @ u - np.eye(q)) > scale:
                raise InvalidInputError(f"U_{i} is not unitary within {tol:g}")
        for a, b in itertools.combinations(U, 2):
            if operator_norm(a @ b - b @ a) > scale:
                raise InvalidInputError("unitaries do not commute")
        W = np.eye(q, dtype=complex) if W is None else as_matrix(W, "W")
        if W.shape[0] != q:
            raise InvalidInputError(f"W must have {q} rows, got {W.shape}")
        self.U = tuple(U)
        self.W = W
        self.q = q
        self.e = W.shape[1]

    @property
    def k(self):
        return len(self.U)


def positive_model_eval(model, X, r=1.0):
    """``(W^* (x) I) C^* C (W (x) I)`` with ``C = (I (x) Delta^{1/2}) prod (I - U_i (x) X_i^*)^{-1}``.

    Raises
    ------
    UnsupportedShapeError
        If ``X`` is not a polydisk tuple.
    """
    if not X.shape.is_polydisk:
        raise UnsupportedShapeError("positive models are defined on the polydisk only")
    if X.k != model.k:
        raise InvalidInputError(f"model has {model.k} unitaries, tuple has {X.k} factors")
    Xr = X.scaled(_check_r(r))
    q, d = model.q, X.d
    M = np.kron(np.eye(q), _defect_sqrt(Xr, DEFAULT_TOL.psd))
    for i in range(Xr.k):
        T = np.eye(q * d) - np.kron(model.U[i], dagger(Xr.rows[i][0]))
        M = M @ inverse(T)
    WI = np.kron(model.W, np.eye(d))
    CW = M @ WI
    return dagger(CW) @ CW


@dataclass(frozen=True)
class KernelBundle:
    """Kernels of one tuple at one truncation and scaling.

    ``converged`` compares ``||C||`` against the model with every degree
    doubled; ``tail`` is the observed change (``nan`` if doubling would
    exceed the dimension cap, in which case ``converged`` is False).
    """

    tuple: OperatorTuple
    model: object
    r: float
    K: np.ndarray
    C: np.ndarray
    P: np.ndarray
    lambdas: list
    converged: bool
    tail: float


def kernel_bundle(X, model, r=1.0, tail_tol=DEFAULT_TOL.tail, check=True):
    """Compute all kernels and the doubling convergence flag."""
    r = _check_r(r)
    C = cauchy_kernel(X, model, r)
    K = berezin_kernel(X.scaled(r), model)
    P = poisson_kernel(X, model, r, C=C)
    tail, conv = float("nan"), False
    if check:
        try:
            big = build_fock_model(model.shape, tuple(2 * L for L in model.L),
                                   cap=max(4096, model.dim))
            if big.dim * X.d <= 4096:
                tail = abs(operator_norm(cauchy_kernel(X, big, r)) - operator_norm(C))
                conv = tail <= tail_tol
        except CapacityError:
            pass
    return KernelBundle(X, model, r, K, C, P, lambda_operators(X, model, r), conv, tail)
