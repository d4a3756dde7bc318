"""
Poisson-kernel metrics, Poisson domination and scalar closed forms.

``delta_p`` evaluates ``ln max(||C_A C_B^{-1}||, ||C_B C_A^{-1}||)`` with the
Cauchy kernels on a truncated Fock model. Both norms come from one SVD of
``Q = C_A C_B^{-1}``: the first is ``sigma_max(Q)``, the second
``1 / sigma_min(Q)``.

Truncation
----------
The truncated Cauchy kernel is the compression of the true one to the
words of bounded length, so every truncated norm is a lower bound that
increases with the truncation degree. The error decays algebraically,
like ``1 / L^2``, rather than geometrically. On polydisk shapes the values
along a ladder ``L, 1.5L, 2L, 3L, 4L, ...`` are therefore fitted by a
series in ``h = 1 / (L + 2)`` (Richardson extrapolation); the spread
against the lower-order fits is reported as the error estimate. Shapes with a factor of
two or more generators converge too slowly for that, and report the raw
value at the largest degree that fits under the dimension cap.
"""

import warnings
from dataclasses import asdict, dataclass, field

import numpy as np
import scipy.linalg

from .domain import OperatorTuple, joint_spectral_radius, membership, minkowski_gauge
from .errors import CapacityError, DomainError, InvalidInputError, UnsupportedShapeError
from .fock import DEFAULT_DIM_CAP, FockModel, build_fock_model, factor_dim
from .kernels import cauchy_kernel, inverse_cauchy_kernel, poisson_kernel
from .linalg_core import (DEFAULT_TOL, dagger, min_eig, operator_norm, singular_extremes,
                          solve_lower)

__all__ = [
    "DistanceReport",
    "DEFAULT_R_GRID",
    "richardson",
    "truncation_ladder",
    "delta_p",
    "omega_p",
    "d_p",
    "delta_h_polydisk",
    "poisson_dominates",
    "minimal_domination_constant",
    "poincare_disk",
    "delta_h_scalar",
    "kobayashi_polydisk",
    "poincare_bergman_ball",
    "harnack_bound_check",
    "rayleigh_samples",
    "rayleigh_delta_p",
    "chain_length",
    "chain_upper_bounds_delta",
    "comparison_bounds",
]

DEFAULT_R_GRID = (0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 0.9999)
NEAR_BOUNDARY_GAUGE = 0.95
RICHARDSON_EXPONENTS = tuple(range(2, 14))


@dataclass
class DistanceReport:
    """A distance value with its truncation diagnostics.

    Attributes
    ----------
    value : float
        Distance in natural-log units (``d_p`` is a plain norm).
    metric : str
        One of ``delta_p``, ``d_p``, ``delta_h_polydisk``, ``delta_h_scalar``,
        ``kobayashi``.
    truncation_used : tuple
        Largest per-factor truncation degree evaluated.
    converged : bool
        Whether ``error_estimate`` is below the tail tolerance.
    norm_terms : tuple
        The two norms inside the max, when applicable.
    r_grid_used : list
    error_estimate : float
    ladder : list of dict
        Raw values per truncation level.
    extrapolated : bool
    """

    value: float
    metric: str
    truncation_used: tuple = ()
    converged: bool = True
    norm_terms: tuple = ()
    r_grid_used: list = field(default_factory=list)
    error_estimate: float = 0.0
    ladder: list = field(default_factory=list)
    extrapolated: bool = False

    def to_dict(self):
        out = asdict(self)
        out["truncation_used"] = list(self.truncation_used)
        out["norm_terms"] = list(self.norm_terms)
        return out


def _interior_or_raise(*tuples):
    for name, X in zip("AB", tuples):
        v = membership(X)
        if v.region != "interior":
            raise DomainError(
                f"{name} is not in the open polyball (region={v.region}, "
                f"defect min eig {v.defect_min_eig:.3e})")


def _same_layout(A, B):
    if A.shape != B.shape or A.d != B.d:
        raise InvalidInputError(
            f"tuples differ in layout: n={A.shape.n}, d={A.d} vs n={B.shape.n}, d={B.d}")


def _canonical(A, B):
    """Order the pair deterministically so symmetric quantities are bitwise symmetric."""
    ka = b"".join(M.tobytes() for row in A.rows for M in row)
    kb = b"".join(M.tobytes() for row in B.rows for M in row)
    return (A, B) if ka <= kb else (B, A)


def richardson(Ls, values, exponents=RICHARDSON_EXPONENTS):
    """Extrapolate ``values(L)`` to ``L -> inf`` assuming an expansion in ``1/(L+2)``.

    Parameters
    ----------
    Ls : sequence of int
        Increasing truncation degrees.
    values : sequence of float
    exponents : sequence of int
        Powers of ``h`` in the fitted series. Only the top
        ``len(exponents) + 1`` levels are used.

    Returns
    -------
    estimate : float
    error : float
        Largest distance between the final extrapolant and the two
        lower-order extrapolants built from the top levels; ``inf`` with a
        single level.
    """
    vals = np.asarray(values, dtype=float)
    if vals.size == 1:
        return float(vals[0]), float("inf")
    h = 1.0 / (np.asarray(Ls, dtype=float) + 2.0)

    def fit(idx):
        hs = h[idx]
        cols = [np.ones_like(hs)] + [(hs / hs[0]) ** p for p in exponents[:len(hs) - 1]]
        return float(np.linalg.solve(np.column_stack(cols), vals[idx])[0])

    n = min(vals.size, len(exponents) + 1)
    vals, h = vals[-n:], h[-n:]
    best = fit(np.arange(n))
    lower = [fit(np.arange(n - m, n)) for m in (n - 1, n - 2) if m >= 1]
    return best, max(abs(best - v) for v in lower)


def _level_dim(n, L, d, fast):
    dims = [factor_dim(ni, Li) for ni, Li in zip(n, L)]
    return max(dims) if fast else int(np.prod(dims)) * d


def _ladder_steps(L):
    """``L, 1.5 L, 2 L, 3 L, 4 L, ...`` rounded, without repeats."""
    j, last = 0, None
    while True:
        f = 2 ** (j // 2) * (1.5 if j % 2 else 1.0)
        nxt = tuple(int(round(v * f)) for v in L)
        if nxt != last:
            yield nxt
            last = nxt
        j += 1


def truncation_ladder(shape, L0, d=1, levels=4, cap=DEFAULT_DIM_CAP, fast=False,
                      to_cap=False):
    """Truncation ladder ``L0, 1.5 L0, 2 L0, 3 L0, ...`` that fits under ``cap``.

    ``fast`` measures the largest single factor (factor-wise evaluation),
    otherwise the full tensor dimension times ``d``. With ``to_cap`` the
    ladder keeps growing until the cap instead of stopping at ``levels``.

    Raises
    ------
    CapacityError
        If even ``L0`` exceeds the cap.
    """
    n = shape.n
    L = tuple(int(v) for v in np.broadcast_to(np.atleast_1d(L0), (len(n),)))
    if _level_dim(n, L, d, fast) > cap:
        raise CapacityError(
            f"truncation {L} needs dimension {_level_dim(n, L, d, fast)} > cap {cap}",
            dimension=_level_dim(n, L, d, fast))
    out = []
    for nxt in _ladder_steps(L):
        if _level_dim(n, nxt, d, fast) > cap or not (to_cap or len(out) < levels):
            break
        out.append(nxt)
    return out


def _scalar_factor_q(a, b, n, L):
    """Extreme singular values of ``c_a (I - sum conj(a_j) R_j)^{-1} (I - sum conj(b_j) R_j) / c_b``."""
    m = build_fock_model((n,), (L,), cap=factor_dim(n, L))
    N = m.dim
    Ta = np.eye(N, dtype=complex)
    Tb = np.eye(N, dtype=complex)
    for j in range(n):
        R = m.factor_R(1, j + 1).toarray()
        Ta -= np.conj(a[j]) * R
        Tb -= np.conj(b[j]) * R
    ca = np.sqrt(1.0 - np.sum(np.abs(a) ** 2))
    cb = np.sqrt(1.0 - np.sum(np.abs(b) ** 2))
    Q = (ca / cb) * solve_lower(Ta, Tb)
    return singular_extremes(Q)


def _log_terms(A, B, L, cap):
    """``(ln ||C_A C_B^{-1}||, ln ||C_B C_A^{-1}||)`` at truncation ``L``."""
    if A.d == 1:
        smax, smin = 1.0, 1.0
        for i, n in enumerate(A.shape.n):
            a = np.array([M[0, 0] for M in A.rows[i]])
            b = np.array([M[0, 0] for M in B.rows[i]])
            hi, lo = _scalar_factor_q(a, b, n, L[i])
            smax *= hi
            smin *= lo
    else:
        model = build_fock_model(A.shape, L, cap=cap)
        Q = cauchy_kernel(A, model) @ inverse_cauchy_kernel(B, model)
        smax, smin = singular_extremes(Q)
    return float(np.log(smax)), float(-np.log(smin))


def _resolve_L(L, model):
    if model is not None:
        if not isinstance(model, FockModel):
            raise InvalidInputError("model must be a FockModel")
        return model.L
    return L


def delta_p(A, B, L=8, model=None, extrapolate=True, levels=11,
            cap=DEFAULT_DIM_CAP, tail_tol=DEFAULT_TOL.tail):
    """Poisson metric between two points of the open polyball.

    Parameters
    ----------
    A, B : OperatorTuple
        Interior points with the same layout.
    L : int or tuple of int
        Starting truncation degree(s); ignored when ``model`` is given.
    model : FockModel, optional
        Supplies the starting degrees.
    extrapolate : bool
        Run the truncation ladder (``levels`` levels, more near the boundary)
        with Richardson extrapolation on polydisk shapes. With ``False`` the
        raw value at the starting degree is returned.
    cap : int
        Dimension budget. Scalar tuples are evaluated factor by factor, so
        the cap applies to the largest factor; otherwise to the full space.

    Returns
    -------
    DistanceReport

    Raises
    ------
    DomainError
        If either point is outside the open polyball.
    """
    _same_layout(A, B)
    _interior_or_raise(A, B)
    A, B = _canonical(A, B)
    L0 = _resolve_L(L, model)
    fast = A.d == 1
    polydisk = extrapolate and A.shape.is_polydisk
    if extrapolate:
        near = max(minkowski_gauge(A), minkowski_gauge(B)) > NEAR_BOUNDARY_GAUGE
        ladder = truncation_ladder(A.shape, L0, A.d, levels, cap, fast, to_cap=near)
    else:
        ladder = truncation_ladder(A.shape, L0, A.d, 1, cap, fast)

    def estimate(rows):
        if polydisk and len(rows) > 1:
            hs = [min(Li) for Li in ladder[:len(rows)]]
            e1, err1 = richardson(hs, [t[0] for t in rows])
            e2, err2 = richardson(hs, [t[1] for t in rows])
            return (e1, e2), max(err1, err2)
        raw = [max(t) for t in rows]
        return rows[-1], (abs(raw[-1] - raw[-2]) if len(raw) > 1 else float("inf"))

    # near the boundary the ladder may run to the cap; stop once the
    # estimate settles
    rows = []
    for j, Li in enumerate(ladder):
        rows.append(_log_terms(A, B, Li, cap))
        if j + 1 >= levels:
            terms, err = estimate(rows)
            if err <= tail_tol:
                break
    ladder = ladder[:len(rows)]
    terms, err = estimate(rows)
    done = polydisk and len(rows) > 1
    table = [{"L": list(Li), "value": max(t), "log_norm_ab": t[0], "log_norm_ba": t[1]}
             for Li, t in zip(ladder, rows)]
    value = max(0.0, max(terms))
    if A == B:
        value, err = 0.0, 0.0
    return DistanceReport(
        value=value, metric="delta_p", truncation_used=ladder[-1],
        converged=bool(err <= tail_tol), norm_terms=tuple(float(np.exp(t)) for t in terms),
        r_grid_used=[1.0], error_estimate=float(err), ladder=table, extrapolated=done)


def omega_p(A, B, **opts):
    """``exp(delta_p(A, B))``."""
    return float(np.exp(delta_p(A, B, **opts).value))


def delta_h_polydisk(A, B, L=8, model=None, **opts):
    """Hyperbolic metric on the regular polydisk, where it equals ``delta_p``.

    Raises
    ------
    UnsupportedShapeError
        For shapes with a factor of two or more generators (use ``delta_p``).
    """
    if not A.shape.is_polydisk or not B.shape.is_polydisk:
        raise UnsupportedShapeError(
            "delta_h is available on the polydisk only; use delta_p for other shapes")
    rep = delta_p(A, B, L=L, model=model, **opts)
    rep.metric = "delta_h_polydisk"
    return rep


def _grid_with_one(r_grid, tuples):
    grid = sorted(set(float(r) for r in (DEFAULT_R_GRID if r_grid is None else r_grid)))
    if any(not 0.0 <= r <= 1.0 for r in grid):
        raise InvalidInputError("r values must lie in [0, 1]")
    admissible = all(joint_spectral_radius(row) < 1.0 for X in tuples for row in X.rows)
    if r_grid is None and admissible:
        grid.append(1.0)
    if not admissible:
        grid = [r for r in grid if r < 1.0]
    return grid


def d_p(A, B, L=8, model=None, r_grid=None, extrapolate=True, levels=11,
        cap=DEFAULT_DIM_CAP, tail_tol=DEFAULT_TOL.tail, mono_tol=1e-10):
    """Auxiliary metric ``sup_r ||P(R, rA) - P(R, rB)||``.

    The per-``r`` norms are nondecreasing, so the value is taken at the grid
    maximum; the default grid ends at ``r = 1``. The per-``r`` values at the
    starting truncation are kept in ``ladder[0]["per_r"]`` and
    ``ladder[0]["monotone"]`` records the check.

    Raises
    ------
    DomainError
        If a joint spectral radius is ``>= 1``.
    """
    _same_layout(A, B)
    for name, X in zip("AB", (A, B)):
        for i, row in enumerate(X.rows, start=1):
            rho = joint_spectral_radius(row)
            if rho >= 1.0:
                raise DomainError(
                    f"{name}: factor {i} has joint spectral radius {rho:.6g} >= 1")
    A, B = _canonical(A, B)
    grid = _grid_with_one(r_grid, (A, B))
    L0 = _resolve_L(L, model)
    ladder = truncation_ladder(A.shape, L0, A.d, levels if extrapolate else 1, cap)

    def at(Li, r):
        m = build_fock_model(A.shape, Li, cap=cap)
        return operator_norm(poisson_kernel(A, m, r) - poisson_kernel(B, m, r))

    per_r = [at(ladder[0], r) for r in grid]
    mono = all(b >= a - mono_tol for a, b in zip(per_r, per_r[1:]))
    top = grid[-1]
    raw = [per_r[-1]] + [at(Li, top) for Li in ladder[1:]]
    table = [{"L": list(Li), "value": v} for Li, v in zip(ladder, raw)]
    table[0]["per_r"] = per_r
    table[0]["monotone"] = mono
    if extrapolate and A.shape.is_polydisk and len(ladder) > 1:
        value, err = richardson([min(Li) for Li in ladder], raw)
        done = True
    else:
        value = raw[-1]
        err = abs(raw[-1] - raw[-2]) if len(raw) > 1 else float("inf")
        done = False
    if A == B:
        value, err = 0.0, 0.0
    return DistanceReport(
        value=max(0.0, float(value)), metric="d_p", truncation_used=ladder[-1],
        converged=bool(err <= tail_tol), r_grid_used=grid, error_estimate=float(err),
        ladder=table, extrapolated=done)


def _kernels_on_grid(X, model, grid):
    return [poisson_kernel(X, model, r) for r in grid]


def _smallest_eig(M):
    H = 0.5 * (M + dagger(M))
    return float(scipy.linalg.eigvalsh(H, subset_by_index=[0, 0], check_finite=False)[0])


def _margin(PA, PB, c, tol, norms_b=None):
    if norms_b is None:
        norms_b = [operator_norm(Pb) for Pb in PB]
    worst, ok = np.inf, True
    for Pa, Pb, nb in zip(PA, PB, norms_b):
        lam = _smallest_eig(c * c * Pb - Pa)
        ok = ok and lam >= -tol * max(1.0, c * c * nb)
        worst = min(worst, lam)
    return ok, float(worst)


def poisson_dominates(A, B, c, model, r_grid=None, tol=DEFAULT_TOL.psd):
    """Whether ``P(R, rA) <= c^2 P(R, rB)`` for every ``r`` on the grid.

    The default grid adds ``r = 1`` when all joint spectral radii are
    below 1. The PSD tolerance is relative to ``max(1, ||c^2 P(R, rB)||)``.

    Returns
    -------
    ok : bool
    margin : float
        Smallest eigenvalue of ``c^2 P(R, rB) - P(R, rA)`` over the grid.
    """
    _same_layout(A, B)
    if not c > 0:
        raise InvalidInputError(f"c must be positive, got {c}")
    grid = _grid_with_one(r_grid, (A, B))
    return _margin(_kernels_on_grid(A, model, grid), _kernels_on_grid(B, model, grid),
                   float(c), tol)


def minimal_domination_constant(A, B, model, r_grid=None, tol=DEFAULT_TOL.psd,
                                rel_tol=1e-9, two_sided=True, c_max=1e12):
    """Smallest ``c`` with ``A`` dominated by ``B`` (and ``B`` by ``A``), by bisection.

    Bisects on ``ln c`` using :func:`poisson_dominates` margins with the
    kernels computed once per grid point. Returns ``inf`` if no ``c`` up to
    ``c_max`` works.
    """
    _same_layout(A, B)
    grid = _grid_with_one(r_grid, (A, B))
    PA = _kernels_on_grid(A, model, grid)
    PB = _kernels_on_grid(B, model, grid)
    nA = [operator_norm(P) for P in PA]
    nB = [operator_norm(P) for P in PB]
    pairs = [(PA, PB, nB), (PB, PA, nA)] if two_sided else [(PA, PB, nB)]

    def ok(c):
        return all(_margin(p, q, c, tol, nq)[0] for p, q, nq in pairs)

    lo, hi = 0.0, 1.0
    while not ok(np.exp(hi)):
        lo, hi = hi, 2.0 * hi + 1.0
        if hi > np.log(c_max):
            return float("inf")
    if two_sided:
        lo = min(lo, 0.0)
    else:
        lo = min(lo, -hi - 1.0)
    while hi - lo > rel_tol:
        mid = 0.5 * (lo + hi)
        if ok(np.exp(mid)):
            hi = mid
        else:
            lo = mid
    return float(np.exp(hi))


def _check_disk(*vals):
    for v in vals:
        if np.any(np.abs(v) >= 1.0):
            raise DomainError("all coordinates must lie in the open unit disk")


def poincare_disk(z, w):
    """Poincare distance ``atanh |(z - w) / (1 - conj(z) w)|`` on the unit disk."""
    z, w = complex(z), complex(w)
    _check_disk(z, w)
    rho = abs((z - w) / (1.0 - np.conj(z) * w))
    return float(np.arctanh(min(rho, 1.0)))


def _coords(z, w):
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    w = np.atleast_1d(np.asarray(w, dtype=complex))
    if z.shape != w.shape or z.ndim != 1:
        raise InvalidInputError("z and w must be vectors of equal length")
    _check_disk(z, w)
    return z, w


def delta_h_scalar(z, w):
    """Sum of coordinatewise Poincare distances on the polydisk."""
    z, w = _coords(z, w)
    return float(sum(poincare_disk(a, b) for a, b in zip(z, w)))


def kobayashi_polydisk(z, w):
    """Largest coordinatewise Poincare distance on the polydisk."""
    z, w = _coords(z, w)
    return float(max(poincare_disk(a, b) for a, b in zip(z, w)))


def poincare_bergman_ball(a, b):
    """Hyperbolic distance ``atanh |phi_a(b)|`` on the Euclidean unit ball.

    Uses ``1 - |phi_a(b)|^2 = (1 - |a|^2)(1 - |b|^2) / |1 - <b, a>|^2``.
    """
    a = np.atleast_1d(np.asarray(a, dtype=complex))
    b = np.atleast_1d(np.asarray(b, dtype=complex))
    na, nb = np.vdot(a, a).real, np.vdot(b, b).real
    if na >= 1.0 or nb >= 1.0:
        raise DomainError("points must lie in the open unit ball")
    s = (1.0 - na) * (1.0 - nb) / abs(1.0 - np.vdot(a, b)) ** 2
    rho = np.sqrt(max(0.0, 1.0 - s))
    return float(np.arctanh(min(rho, 1.0)))


def harnack_bound_check(F, X, tol=DEFAULT_TOL.psd, gauge=None):
    """Check ``((1-r)/(1+r))^k F(0) <= F(X) <= ((1+r)/(1-r))^k F(0)``.

    Parameters
    ----------
    F : callable
        Maps an :class:`OperatorTuple` to a Hermitian matrix; ``F(0)`` is
        evaluated on the zero tuple of the same layout.
    X : OperatorTuple
    gauge : float, optional
        ``r``; defaults to the Minkowski gauge of ``X``.

    Returns
    -------
    ok : bool
    margins : tuple of float
        Smallest eigenvalues of ``F(X) - lower F(0)`` and ``upper F(0) - F(X)``.

    Raises
    ------
    InvalidInputError
        If ``F(0)`` is not PSD.
    """
    r = minkowski_gauge(X) if gauge is None else float(gauge)
    if r >= 1.0:
        raise DomainError("Harnack bounds need a point of the open polyball")
    F0 = np.asarray(F(OperatorTuple.zeros(X.shape, X.d)))
    if min_eig(F0) < -tol or operator_norm(F0 - dagger(F0)) > tol * (1 + operator_norm(F0)):
        raise InvalidInputError("F(0) is not positive semidefinite")
    FX = np.asarray(F(X))
    k = X.k
    lower = ((1 - r) / (1 + r)) ** k
    upper = ((1 + r) / (1 - r)) ** k
    m_lo = min_eig(FX - lower * F0)
    m_hi = min_eig(upper * F0 - FX)
    return bool(m_lo >= -tol and m_hi >= -tol), (float(m_lo), float(m_hi))


def rayleigh_samples(model, d, count, seed=0, radius=(0.9, 0.999)):
    """Sample vectors: half Gaussian, half coherent ``sum zeta^w e_w (x) h``.

    Coherent vectors use one random point ``zeta_i`` of modulus in
    ``radius`` per factor (a row of ``n_i`` coordinates) and set the
    coefficient of a basis word to the product of the matching coordinates.
    """
    rng = np.random.default_rng(seed)
    N = model.dim * d
    out = []
    n_gauss = count // 2
    for _ in range(n_gauss):
        out.append(rng.standard_normal(N) + 1j * rng.standard_normal(N))
    labels = model.labels()
    for _ in range(count - n_gauss):
        zetas = []
        for n in model.shape.n:
            v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
            zetas.append(rng.uniform(*radius) * v / np.linalg.norm(v))
        coef = np.array([np.prod([np.prod([z[a - 1] for a in w]) if w else 1.0
                                  for z, w in zip(zetas, lab)]) for lab in labels])
        h = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        out.append(np.kron(coef, h))
    return out


def rayleigh_delta_p(A, B, model, sample_vectors, r_grid=(1.0,)):
    """Lower bound ``1/2 max |ln <P_A x, x> / <P_B x, x>|`` over samples and ``r``.

    Zero vectors are skipped with a warning.
    """
    _same_layout(A, B)
    _interior_or_raise(A, B)
    best = 0.0
    vecs = []
    for x in sample_vectors:
        x = np.asarray(x, dtype=complex).ravel()
        if not np.any(x):
            warnings.warn("skipping zero sample vector", RuntimeWarning, stacklevel=2)
            continue
        if x.size != model.dim * A.d:
            raise InvalidInputError(f"sample vector has size {x.size}, expected {model.dim * A.d}")
        vecs.append(x)
    if not vecs:
        return 0.0
    V = np.column_stack(vecs)
    for r in r_grid:
        PA = poisson_kernel(A, model, r)
        PB = poisson_kernel(B, model, r)
        qa = np.einsum("ij,ij->j", V.conj(), PA @ V).real
        qb = np.einsum("ij,ij->j", V.conj(), PB @ V).real
        best = max(best, float(np.max(np.abs(np.log(qa / qb)))) / 2.0)
    return best


def _default_metric(A, B):
    if A.d == 1 and A.shape.is_polydisk:
        return delta_h_scalar([row[0][0, 0] for row in A.rows],
                              [row[0][0, 0] for row in B.rows])
    return delta_p(A, B).value


def chain_length(chain, metric=None):
    """Sum of link distances along a chain ``[(tag, A_1, B_1), (tag, A_2, B_2), ...]``.

    Consecutive links must connect (``B_j == A_{j+1}``). ``metric`` maps a
    pair of tuples to a distance; by default the scalar polydisk closed form
    for scalar polydisk tuples and ``delta_p`` otherwise.
    """
    if not chain:
        raise InvalidInputError("a chain needs at least one link")
    metric = metric or _default_metric
    total = 0.0
    for j, link in enumerate(chain):
        if len(link) != 3:
            raise InvalidInputError(f"link {j} must be a (tag, A, B) triple")
        _, A, B = link
        if not isinstance(A, OperatorTuple) or not isinstance(B, OperatorTuple):
            raise InvalidInputError(f"link {j} endpoints must be OperatorTuple")
        if j > 0 and chain[j - 1][2].distance(A) > 1e-12:
            raise InvalidInputError(f"link {j} does not start where link {j - 1} ends")
        total += metric(A, B)
    return float(total)


def chain_upper_bounds_delta(A, B, chains=(), metric=None, tol=1e-10):
    """Check ``delta(A, B) <= length`` for each chain from ``A`` to ``B``.

    The single identity link ``[("id", A, B)]`` is always included and must
    reproduce ``delta(A, B)``.
    """
    metric = metric or _default_metric
    delta = metric(A, B)
    identity = chain_length([("id", A, B)], metric)
    lengths = []
    for chain in chains:
        if chain[0][1].distance(A) > 1e-12 or chain[-1][2].distance(B) > 1e-12:
            raise InvalidInputError("chain endpoints must be A and B")
        lengths.append(chain_length(chain, metric))
    return {
        "delta": delta,
        "identity_length": identity,
        "identity_equal": abs(identity - delta) <= tol,
        "lengths": lengths,
        "all_bounded": all(delta <= ell + tol for ell in lengths),
    }


def comparison_bounds(A, B, model, r_grid=None):
    """Both sides of the two comparison inequalities between ``delta_p`` and ``d_p``.

    All quantities use the same truncated model, so the inequalities hold
    exactly for the compressed kernels.

    Returns
    -------
    dict
        ``delta``, ``dp``, ``inv_bound = 1/2 ln(1 + max ||P^{-1}|| dp)`` and
        ``dp_bound = max M (e^{2 delta} - 1)`` with ``M_X = sup_r ||P(R, rX)||``.
    """
    grid = _grid_with_one(r_grid, (A, B))
    delta = delta_p(A, B, model=model, extrapolate=False).value
    dp = d_p(A, B, model=model, r_grid=grid, extrapolate=False).value
    inv = max(operator_norm(inverse_cauchy_kernel(X, model)) ** 2 for X in (A, B))
    M = max(operator_norm(poisson_kernel(X, model, r)) for X in (A, B) for r in grid)
    return {
        "delta": delta,
        "dp": dp,
        "inv_bound": float(0.5 * np.log1p(inv * dp)),
        "dp_bound": float(M * np.expm1(2.0 * delta)),
        "max_inv_norm": inv,
        "max_norm": M,
    }
