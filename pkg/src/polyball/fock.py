"""
Truncated full Fock spaces and their creation operators.

A factor with ``n`` generators and truncation degree ``L`` has the words of
length at most ``L`` as orthonormal basis, ordered by length and then
lexicographically. The model space is the tensor product of the factors with
factor 1 slowest. Letters are 1-based as in ``g_1, ..., g_n``.

Creation operators are stored as ``scipy.sparse`` CSR matrices because they
are permutation-like with one nonzero per column; ``FockModel.S`` and
``FockModel.R`` return them, ``dense=True`` gives arrays.
"""

import functools
import itertools
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .errors import CapacityError, InvalidInputError

__all__ = [
    "PolyballShape",
    "Word",
    "FockModel",
    "DEFAULT_DIM_CAP",
    "factor_words",
    "factor_dim",
    "build_fock_model",
    "word_operator",
    "reverse_word",
]

DEFAULT_DIM_CAP = 4096


@dataclass(frozen=True)
class PolyballShape:
    """Number of generators ``n = (n_1, ..., n_k)`` of each factor."""

    n: tuple

    def __post_init__(self):
        n = tuple(int(v) for v in np.atleast_1d(self.n))
        if len(n) < 1:
            raise InvalidInputError("shape needs at least one factor")
        if any(v < 1 for v in n):
            raise InvalidInputError(f"all n_i must be >= 1, got {n}")
        object.__setattr__(self, "n", n)

    @property
    def k(self):
        return len(self.n)

    @property
    def is_polydisk(self):
        return all(v == 1 for v in self.n)

    def __iter__(self):
        return iter(self.n)


@dataclass(frozen=True)
class Word:
    """A word over the generators of one factor (1-based factor and letters)."""

    factor: int
    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(a) for a in self.letters))
        if int(self.factor) < 1:
            raise InvalidInputError(f"factor index must be >= 1, got {self.factor}")
        if any(a < 1 for a in self.letters):
            raise InvalidInputError(f"letters must be >= 1, got {self.letters}")
        object.__setattr__(self, "factor", int(self.factor))

    def __len__(self):
        return len(self.letters)


def reverse_word(w):
    """Return the word with its letters in reverse order (a ``Word`` or a letter tuple)."""
    if isinstance(w, Word):
        return Word(w.factor, w.letters[::-1])
    return tuple(w)[::-1]


def factor_dim(n, L):
    """Number of words of length ``<= L`` over ``n`` letters."""
    return L + 1 if n == 1 else (n ** (L + 1) - 1) // (n - 1)


def factor_words(n, L):
    """Basis words of one factor as tuples of 1-based letters, length then lex."""
    out = [()]
    for p in range(1, L + 1):
        out.extend(itertools.product(range(1, n + 1), repeat=p))
    return out


def _factor_shifts(n, L):
    """Left and right creation matrices of a single truncated factor."""
    words = factor_words(n, L)
    index = {w: i for i, w in enumerate(words)}
    N = len(words)
    short = [(i, w) for i, w in enumerate(words) if len(w) < L]
    cols = np.array([i for i, _ in short], dtype=int)
    ones = np.ones(len(short))
    left, right = [], []
    for j in range(1, n + 1):
        rows_l = np.array([index[(j,) + w] for _, w in short], dtype=int)
        rows_r = np.array([index[w + (j,)] for _, w in short], dtype=int)
        left.append(sp.csr_matrix((ones, (rows_l, cols)), shape=(N, N)))
        right.append(sp.csr_matrix((ones, (rows_r, cols)), shape=(N, N)))
    return left, right


@dataclass(frozen=True, eq=False)
class FockModel:
    """Truncated tensor product of full Fock spaces with creation operators.

    Attributes
    ----------
    shape : PolyballShape
    L : tuple of int
        Per-factor truncation degrees.
    factor_dims : tuple of int
    dim : int
        Total dimension, the product of ``factor_dims``.
    """

    shape: PolyballShape
    L: tuple
    factor_dims: tuple
    dim: int
    _S: dict = field(repr=False)
    _R: dict = field(repr=False)
    _factor_S: tuple = field(repr=False)
    _factor_R: tuple = field(repr=False)

    @property
    def k(self):
        return self.shape.k

    def _check(self, i, j):
        if not 1 <= i <= self.k:
            raise InvalidInputError(f"factor index {i} out of range 1..{self.k}")
        if not 1 <= j <= self.shape.n[i - 1]:
            raise InvalidInputError(
                f"letter {j} out of range 1..{self.shape.n[i - 1]} for factor {i}")

    def S(self, i, j, dense=False):
        """Left creation operator ``S_{i,j}`` on the full tensor space."""
        self._check(i, j)
        M = self._S[(i, j)]
        return M.toarray() if dense else M

    def R(self, i, j, dense=False):
        """Right creation operator ``R_{i,j}`` on the full tensor space."""
        self._check(i, j)
        M = self._R[(i, j)]
        return M.toarray() if dense else M

    def factor_S(self, i, j):
        """Left creation on factor ``i`` alone (sparse)."""
        self._check(i, j)
        return self._factor_S[i - 1][j - 1]

    def factor_R(self, i, j):
        """Right creation on factor ``i`` alone (sparse)."""
        self._check(i, j)
        return self._factor_R[i - 1][j - 1]

    def labels(self):
        """Basis labels: one tuple of per-factor letter tuples per basis vector."""
        per = [factor_words(n, L) for n, L in zip(self.shape.n, self.L)]
        return list(itertools.product(*per))

    def degrees(self, i):
        """Factor-``i`` degree of every basis vector, as an int array."""
        per = []
        for n, L in zip(self.shape.n, self.L):
            per.append(np.array([len(w) for w in factor_words(n, L)]))
        grids = np.meshgrid(*per, indexing="ij")
        return grids[i - 1].ravel()

    def index_of(self, words):
        """Basis index of the tensor word given as one letter tuple per factor."""
        if len(words) != self.k:
            raise InvalidInputError("need one word per factor")
        idx = 0
        for w, n, L, N in zip(words, self.shape.n, self.L, self.factor_dims):
            w = tuple(w)
            if len(w) > L or any(not 1 <= a <= n for a in w):
                raise InvalidInputError(f"word {w} not in the truncated basis")
            pos = factor_dim(n, len(w) - 1) if w else 0
            for p, a in enumerate(w):
                pos += (a - 1) * n ** (len(w) - 1 - p)
            idx = idx * N + pos
        return idx


@functools.lru_cache(maxsize=32)
def _build(n, L, cap):
    dims = tuple(factor_dim(ni, Li) for ni, Li in zip(n, L))
    total = int(np.prod(dims))
    if total > cap:
        raise CapacityError(
            f"Fock dimension {total} exceeds cap {cap}", dimension=total)
    fS, fR = zip(*(_factor_shifts(ni, Li) for ni, Li in zip(n, L)))
    S, R = {}, {}
    for i in range(len(n)):
        before = sp.identity(int(np.prod(dims[:i])), format="csr")
        after = sp.identity(int(np.prod(dims[i + 1:])), format="csr")
        for j in range(n[i]):
            S[(i + 1, j + 1)] = sp.kron(sp.kron(before, fS[i][j]), after, format="csr")
            R[(i + 1, j + 1)] = sp.kron(sp.kron(before, fR[i][j]), after, format="csr")
    return FockModel(PolyballShape(n), L, dims, total, S, R, tuple(fS), tuple(fR))


def build_fock_model(shape, L, cap=DEFAULT_DIM_CAP):
    """Materialize the truncated Fock model.

    Parameters
    ----------
    shape : PolyballShape or sequence of int
    L : int or sequence of int
        Truncation degree per factor (a single int is broadcast).
    cap : int
        Largest admissible total dimension.

    Raises
    ------
    CapacityError
        If the total dimension exceeds ``cap``.
    """
    if not isinstance(shape, PolyballShape):
        shape = PolyballShape(tuple(shape))
    L = tuple(int(v) for v in np.broadcast_to(np.atleast_1d(L), (shape.k,)))
    if any(v < 1 for v in L):
        raise InvalidInputError(f"truncation degrees must be >= 1, got {L}")
    return _build(shape.n, L, int(cap))


def word_operator(model, words, side="left", dense=False):
    """Product of creation operators along one word per factor.

    For ``side="left"`` this is ``S_{1,a_1} ... S_{k,a_k}`` where ``S_{i,a}``
    is the ordered product ``S_{i,a[0]} S_{i,a[1]} ...``; ``side="right"``
    uses the ``R`` operators in the same order.
    """
    if side not in ("left", "right"):
        raise InvalidInputError(f"side must be 'left' or 'right', got {side!r}")
    words = list(words)
    if len(words) != model.k:
        raise InvalidInputError(f"need {model.k} words, got {len(words)}")
    get = model.S if side == "left" else model.R
    M = sp.identity(model.dim, format="csr")
    for slot, w in enumerate(words, start=1):
        if not isinstance(w, Word):
            w = Word(slot, tuple(w))
        if w.factor != slot:
            raise InvalidInputError(f"word for slot {slot} names factor {w.factor}")
        for a in w.letters:
            M = M @ get(slot, a)
    return M.toarray() if dense else M.tocsr()
