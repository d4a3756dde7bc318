"""
Seeded property suites for the inequalities and invariances of the metrics.

Each suite returns a list of check records ``{"name", "samples", "worst",
"tolerance", "passed"}`` where ``worst`` is the smallest slack observed
(nonnegative slack means the property held, tolerance already included).
"""

import itertools

import numpy as np

from .automorphisms import PolyballAutomorphism, apply, mobius_scalar, permute, unitary_twist
from .domain import OperatorTuple, membership, minkowski_gauge
from .errors import InvalidInputError
from .fock import build_fock_model, word_operator
from .kernels import (PositivePluriharmonicModel, berezin_kernel, berezin_transform,
                      cauchy_kernel, poisson_kernel, poisson_series, positive_model_eval)
from .linalg_core import dagger
from .metrics import (comparison_bounds, d_p, delta_h_polydisk, delta_h_scalar, delta_p,
                      harnack_bound_check, minimal_domination_constant, poincare_bergman_ball,
                      poisson_dominates)
from .sampling import (commuting_normal_tuple, nilpotent_tuple, polydisk_point,
                       random_unitary, rescale_to_gauge, scalar_tuple)

__all__ = ["SUITES", "run_suite", "check"]


def check(name, slacks, tolerance):
    slacks = [float(s) for s in slacks]
    worst = min(slacks) if slacks else 0.0
    return {"name": name, "samples": len(slacks), "worst": worst,
            "tolerance": tolerance, "passed": bool(worst >= 0.0)}


def _pd(z):
    return OperatorTuple.from_scalars([[v] for v in z])


def interior_sample(rng, kind, gauge):
    """One interior tuple of the given kind rescaled to the given gauge."""
    if kind == "scalar":
        X = scalar_tuple(rng, (1, 1), 0.9)
    elif kind == "normal":
        X = commuting_normal_tuple(rng, (1, 2), 2, 0.9)
    elif kind == "nilpotent":
        X = nilpotent_tuple(rng, (2, 1), 2)
    else:
        raise InvalidInputError(kind)
    return rescale_to_gauge(X, gauge)


def _harnack_model(X):
    return build_fock_model(X.shape, 12 if X.shape.is_polydisk and X.d == 1 else 3)


def suite_harnack(cfg, count=None):
    rng = np.random.default_rng(cfg.seed)
    count = count or cfg.samples or 30
    kinds = ("scalar", "normal", "nilpotent")
    slack = []
    for s in range(count):
        X = interior_sample(rng, kinds[s % 3], rng.uniform(0.05, 0.7))
        m = _harnack_model(X)
        _, (lo, hi) = harnack_bound_check(lambda Y: poisson_kernel(Y, m), X, cfg.tol_psd)
        slack.append(min(lo, hi) + cfg.tol_psd)
    pos = []
    for _ in range(count):
        X = rescale_to_gauge(commuting_normal_tuple(rng, (1, 1), 2, 0.9), rng.uniform(0.05, 0.9))
        q = 3
        U = [np.diag(np.exp(2j * np.pi * rng.uniform(size=q))) for _ in range(2)]
        W = rng.standard_normal((q, 2)) + 1j * rng.standard_normal((q, 2))
        model = PositivePluriharmonicModel(U, W)
        _, (lo, hi) = harnack_bound_check(lambda Y: positive_model_eval(model, Y), X, cfg.tol_psd)
        pos.append(min(lo, hi) + cfg.tol_psd)
    return [check("poisson kernel sandwich", slack, cfg.tol_psd),
            check("commuting-unitary model sandwich", pos, cfg.tol_psd)]


def mobius_product_map(a, b, c):
    """``z -> (psi_a(z1) psi_b(z1), psi_c(z2))``, a Mobius product in each coordinate."""
    return lambda z: np.array([mobius_scalar(a, z[0]) * mobius_scalar(b, z[0]),
                               mobius_scalar(c, z[1])])


def product_map(z):
    """``z -> (z1 z2, 0)``."""
    return np.array([z[0] * z[1], 0.0])


def suite_schwarz_pick(cfg, count=None, points=None, operator_samples=4):
    rng = np.random.default_rng(cfg.seed)
    count = count or cfg.samples or 200
    points = points or 1000
    tol = 1e-8
    mob, prod, op = [], [], []
    for s in range(count):
        z, w = polydisk_point(rng, 2, 0.95), polydisk_point(rng, 2, 0.95)
        f = mobius_product_map(*polydisk_point(rng, 3, 0.9))
        base = delta_h_scalar(z, w)
        mob.append(base - delta_h_scalar(f(z), f(w)) + tol)
        prod.append(base - poincare_bergman_ball(product_map(z), product_map(w)) + tol)
        if s < operator_samples:
            z, w = polydisk_point(rng, 2, 0.6), polydisk_point(rng, 2, 0.6)
            base = delta_h_polydisk(_pd(z), _pd(w)).value
            op.append(base - delta_h_polydisk(_pd(f(z)), _pd(f(w))).value + tol)
    cor = []
    for _ in range(points):
        z = polydisk_point(rng, 2, 0.999)
        fz = np.linalg.norm(product_map(z))
        lhs = (1 + fz) / (1 - fz)
        rhs = np.prod([(1 + abs(v)) / (1 - abs(v)) for v in z])
        cor.append((rhs - lhs) / rhs + 1e-12)
    return [check("contraction under Mobius products", mob, tol),
            check("contraction of (z1 z2, 0) into the row ball", prod, tol),
            check("contraction with operator-form delta_H", op, tol),
            check("growth bound for (z1 z2, 0)", cor, 1e-12)]


def axiom_triple(rng, s):
    """Scalar or nilpotent triple with a fixed model for triangle tests."""
    if s % 2 == 0:
        shape = (1,) if s % 4 == 0 else (1, 1)
        T = [scalar_tuple(rng, shape, 0.8) for _ in range(3)]
        L = 24 if shape == (1,) else 10
    else:
        shape = (1,) if s % 4 == 1 else (2, 1)
        T = [rescale_to_gauge(nilpotent_tuple(rng, shape, 3), rng.uniform(0.1, 0.8))
             for _ in range(3)]
        L = 8 if shape == (1,) else 2
    return T, build_fock_model(shape, L)


def suite_metric_axioms(cfg, count=None):
    rng = np.random.default_rng(cfg.seed)
    count = count or cfg.samples or 40
    tol = 1e-8
    sym, pos, tri, ident = [], [], [], []
    for s in range(count):
        (A, B, C), m = axiom_triple(rng, s)
        ab = delta_p(A, B, model=m, extrapolate=False).value
        ba = delta_p(B, A, model=m, extrapolate=False).value
        sym.append(0.0 if ab == ba else -abs(ab - ba))
        if A.distance(B) > 1e-6:
            pos.append(ab)
        ident.append(-delta_p(A, A, model=m, extrapolate=False).value)
        ac = delta_p(A, C, model=m, extrapolate=False).value
        bc = delta_p(B, C, model=m, extrapolate=False).value
        tri.append(ab + bc - ac + tol)
    return [check("symmetry (exact)", sym, 0.0),
            check("positivity for distinct points", [p if p > 0 else -1.0 for p in pos], 0.0),
            check("delta(A, A) = 0", ident, 0.0),
            check("triangle inequality", tri, tol)]


def random_composite(rng, k, lam_max=0.5):
    sigma = tuple(int(v) + 1 for v in rng.permutation(k))
    U = tuple(random_unitary(rng, 1) for _ in range(k))
    lam = tuple(polydisk_point(rng, k, lam_max))
    return PolyballAutomorphism(sigma, U, lam)


def suite_invariance(cfg, count=None):
    rng = np.random.default_rng(cfg.seed)
    count = count or cfg.samples or 10
    tol = 1e-8
    dh = []
    for _ in range(count):
        A, B = _pd(polydisk_point(rng, 2, 0.5)), _pd(polydisk_point(rng, 2, 0.5))
        aut = random_composite(rng, 2)
        before = delta_h_polydisk(A, B).value
        after = delta_h_polydisk(apply(aut, A), apply(aut, B)).value
        dh.append(tol - abs(before - after))
    twist, perm = [], []
    m21 = build_fock_model((2, 1), 3)
    m22 = build_fock_model((2, 2), 2)
    for _ in range(count):
        A = rescale_to_gauge(commuting_normal_tuple(rng, (2, 1), 2, 0.9), 0.7)
        B = rescale_to_gauge(nilpotent_tuple(rng, (2, 1), 2), 0.6)
        U = [random_unitary(rng, 2), random_unitary(rng, 1)]
        before = delta_p(A, B, model=m21, extrapolate=False).value
        after = delta_p(unitary_twist(U, A), unitary_twist(U, B), model=m21,
                        extrapolate=False).value
        twist.append(tol - abs(before - after))
        A = rescale_to_gauge(commuting_normal_tuple(rng, (2, 2), 2, 0.9), 0.7)
        B = rescale_to_gauge(commuting_normal_tuple(rng, (2, 2), 2, 0.9), 0.5)
        U = [random_unitary(rng, 2), random_unitary(rng, 2)]
        before = delta_p(A, B, model=m22, extrapolate=False).value
        A2 = permute((2, 1), unitary_twist(U, A))
        B2 = permute((2, 1), unitary_twist(U, B))
        perm.append(tol - abs(before - delta_p(A2, B2, model=m22, extrapolate=False).value))
    return [check("delta_H under p_sigma o Phi_U o Psi_lambda (polydisk)", dh, tol),
            check("delta_P under unitary twist, n=(2,1), d=2", twist, tol),
            check("delta_P under permutation and twist, n=(2,2), d=2", perm, tol)]


def words_upto(n_per_factor, total):
    """All tuples of per-factor words with total length at most ``total``."""
    out = []
    per = []
    for n in n_per_factor:
        ws = [()]
        for p in range(1, total + 1):
            ws += list(itertools.product(range(1, n + 1), repeat=p))
        per.append(ws)
    for combo in itertools.product(*per):
        if sum(len(w) for w in combo) <= total:
            out.append(combo)
    return out


def nilpotent_identity_sample(rng, s):
    shapes = [(1,), (2,), (1, 1), (2, 1)]
    shape = shapes[s % len(shapes)]
    d = 2 + (s // len(shapes)) % 2
    X = rescale_to_gauge(nilpotent_tuple(rng, shape, d), rng.uniform(0.2, 0.9))
    return X, build_fock_model(shape, max(3, d))


def kernel_identity_errors(X, m, max_total=3):
    """Worst errors of intertwining, reproduction and ``P = C^* C``."""
    K = berezin_kernel(X, m)
    inter = 0.0
    for i, row in enumerate(X.rows, start=1):
        for j, M in enumerate(row, start=1):
            lhs = K @ dagger(M)
            rhs = np.kron(m.S(i, j, dense=True).T, np.eye(X.d)) @ K
            inter = max(inter, float(np.max(np.abs(lhs - rhs))))
    rep = 0.0
    words = words_upto(X.shape.n, max_total)
    for alpha in words:
        Sa = word_operator(m, alpha, "left")
        Xa = X.word_product(alpha)
        for beta in words:
            if sum(map(len, alpha)) + sum(map(len, beta)) > max_total:
                continue
            Sb = word_operator(m, beta, "left")
            g = (Sa @ Sb.T).toarray()
            lhs = berezin_transform(X, m, g, K)
            rhs = Xa @ dagger(X.word_product(beta))
            rep = max(rep, float(np.max(np.abs(lhs - rhs))))
    C = cauchy_kernel(X, m)
    fac = float(np.max(np.abs(poisson_kernel(X, m) - dagger(C) @ C)))
    return inter, rep, fac


def series_block_error(X, m, order):
    """Series versus ``C^* C`` on words of every factor degree ``<= L_i - order + 1``."""
    P = poisson_kernel(X, m)
    S = poisson_series(X, m)
    mask = np.ones(m.dim, bool)
    for i in range(1, m.k + 1):
        mask &= m.degrees(i) <= m.L[i - 1] - order + 1
    mm = np.kron(mask, np.ones(X.d, bool))
    return float(np.max(np.abs((P - S)[np.ix_(mm, mm)])))


def suite_kernel_identities(cfg, count=None):
    rng = np.random.default_rng(cfg.seed)
    count = count or cfg.samples or 8
    inter, rep, fac, ser = [], [], [], []
    for s in range(count):
        X, m = nilpotent_identity_sample(rng, s)
        a, b, c = kernel_identity_errors(X, m)
        inter.append(1e-12 - a)
        rep.append(1e-12 - b)
        fac.append(1e-10 - c)
        ser.append(1e-10 - series_block_error(X, m, X.d))
    return [check("Berezin intertwining", inter, 1e-12),
            check("Berezin reproduction, |alpha|+|beta| <= 3", rep, 1e-12),
            check("P = C* C", fac, 1e-10),
            check("Poisson series = C* C below the top degrees", ser, 1e-10)]


def comparison_pair(rng, s):
    if s % 2 == 0:
        A, B = scalar_tuple(rng, (1,), 0.8), scalar_tuple(rng, (1,), 0.8)
        return A, B, build_fock_model((1,), 24)
    A = rescale_to_gauge(commuting_normal_tuple(rng, (1, 1), 2, 0.9), rng.uniform(0.1, 0.7))
    B = rescale_to_gauge(nilpotent_tuple(rng, (1, 1), 2), rng.uniform(0.1, 0.7))
    return A, B, build_fock_model((1, 1), 5)


def suite_comparison_inequalities(cfg, count=None):
    rng = np.random.default_rng(cfg.seed)
    count = count or cfg.samples or 20
    first, second, mono = [], [], []
    for s in range(count):
        A, B, m = comparison_pair(rng, s)
        cb = comparison_bounds(A, B, m)
        first.append(cb["inv_bound"] - cb["delta"] + 1e-6)
        second.append(cb["dp_bound"] - cb["dp"] + 1e-6)
        per = d_p(A, B, model=m, extrapolate=False).ladder[0]["per_r"]
        mono.append(min(b - a for a, b in zip(per, per[1:])) + 1e-10)
    return [check("delta_P <= 1/2 ln(1 + max||P^-1|| d_P)", first, 1e-6),
            check("d_P <= max M (e^{2 delta_P} - 1)", second, 1e-6),
            check("||P(rA) - P(rB)|| nondecreasing in r", mono, 1e-10)]


BOUNDARY_POINTS = ((1.0, 0.3), (np.exp(1j), 0.5), (0.2j, -1.0))


def suite_zero_class(cfg, count=None):
    rng = np.random.default_rng(cfg.seed)
    count = count or cfg.samples or 10
    kinds = ("scalar", "normal", "nilpotent")
    inner, gmax = [], 0.0
    for s in range(count):
        X = interior_sample(rng, kinds[s % 3], rng.uniform(0.05, 0.7))
        g = minkowski_gauge(X)
        gmax = max(gmax, g)
        m = _harnack_model(X)
        c = minimal_domination_constant(X, OperatorTuple.zeros(X.shape, X.d), m)
        bound = ((1 + g) / (1 - g)) ** (X.k / 2) * (1 + 1e-3)
        ok = membership(X).region == "interior"
        inner.append((bound - c) / bound if ok else -1.0)
    c_bound = ((1 + gmax) / (1 - gmax))
    outer = []
    for z in BOUNDARY_POINTS:
        X = _pd(z)
        Z = OperatorTuple.zeros(X.shape)
        m = build_fock_model((1, 1), 16)
        not_interior = membership(X).region != "interior"
        fails = not (poisson_dominates(X, Z, c_bound, m, [0.9999])[0]
                     and poisson_dominates(Z, X, c_bound, m, [0.9999])[0])
        cs = [minimal_domination_constant(X, Z, m, r_grid=[r]) for r in (0.9, 0.99, 0.9999)]
        growing = all(b > a for a, b in zip(cs, cs[1:]))
        outer.append(1.0 if (not_interior and fails and growing) else -1.0)
    return [check("interior points dominated both ways against 0 within the Harnack constant",
                  inner, 1e-3),
            check("boundary points not interior and not boundedly dominated", outer, 0.0)]


SUITES = {
    "harnack": suite_harnack,
    "schwarz-pick": suite_schwarz_pick,
    "metric-axioms": suite_metric_axioms,
    "invariance": suite_invariance,
    "kernel-identities": suite_kernel_identities,
    "comparison-inequalities": suite_comparison_inequalities,
    "zero-class": suite_zero_class,
}


def run_suite(name, cfg):
    """Run one named suite; ``InvalidInputError`` for unknown names."""
    if name not in SUITES:
        raise InvalidInputError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    checks = SUITES[name](cfg)
    return {"suite": name, "seed": cfg.seed, "checks": checks,
            "passed": all(c["passed"] for c in checks)}
