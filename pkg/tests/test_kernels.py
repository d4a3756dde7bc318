import numpy as np
import pytest

from polyball import (OperatorTuple, PluriharmonicPoly, PositivePluriharmonicModel,
                      berezin_kernel, berezin_transform, build_fock_model, cauchy_kernel,
                      inverse_cauchy_kernel, is_psd, kernel_bundle, operator_norm,
                      pluriharmonic_eval, poisson_kernel, poisson_series, positive_model_eval)
from polyball.errors import DomainError, InvalidInputError, UnsupportedShapeError
from polyball.sampling import commuting_normal_tuple, nilpotent_tuple, rescale_to_gauge
from polyball.verify import kernel_identity_errors, series_block_error

N = np.array([[0, 1], [0, 0]], dtype=complex)


def test_berezin_kernel_at_zero_is_vacuum_embedding():
    m = build_fock_model((2, 1), 2)
    K = berezin_kernel(OperatorTuple.zeros((2, 1), 2), m)
    expected = np.zeros((m.dim * 2, 2))
    expected[:2] = np.eye(2)
    np.testing.assert_array_equal(K, expected)


def test_berezin_kernel_blocks_for_scaled_nilpotent():
    X = OperatorTuple([[0.5 * N]])
    m = build_fock_model((1,), 4)
    K = berezin_kernel(X, m)
    D = np.diag([np.sqrt(0.75), 1.0])
    np.testing.assert_allclose(K[0:2], D)
    np.testing.assert_allclose(K[2:4], D @ (0.5 * N).conj().T)
    np.testing.assert_array_equal(K[4:], 0)


def test_berezin_kernel_is_isometric_for_nilpotent():
    X = OperatorTuple([[0.5 * N]])
    m = build_fock_model((1,), 4)
    K = berezin_kernel(X, m)
    np.testing.assert_allclose(berezin_transform(X, m, np.eye(m.dim), K), np.eye(2), atol=1e-15)


def test_berezin_transform_examples():
    m = build_fock_model((1,), 3)
    S = m.S(1, 1, dense=True)
    out = berezin_transform(OperatorTuple.zeros((1,), 2), m, S @ S.T)
    np.testing.assert_array_equal(out, 0)
    X = OperatorTuple([[0.5 * N]])
    np.testing.assert_allclose(berezin_transform(X, m, S @ S.T), 0.25 * np.diag([1, 0]),
                               atol=1e-15)


def test_kernel_identities_on_nilpotent_tuples():
    rng = np.random.default_rng(5)
    for shape in ((1,), (2,), (1, 1), (2, 1)):
        X = rescale_to_gauge(nilpotent_tuple(rng, shape, 3), 0.8)
        m = build_fock_model(shape, 3)
        inter, rep, fac = kernel_identity_errors(X, m)
        assert inter <= 1e-12 and rep <= 1e-12 and fac <= 1e-10
        assert series_block_error(X, m, 3) <= 1e-10


def test_cauchy_kernel_at_zero_is_identity():
    m = build_fock_model((1, 2), 2)
    X = OperatorTuple.zeros((1, 2), 2)
    np.testing.assert_array_equal(cauchy_kernel(X, m), np.eye(m.dim * 2))
    np.testing.assert_array_equal(poisson_kernel(X, m), np.eye(m.dim * 2))


def test_cauchy_inverse_is_inverse():
    rng = np.random.default_rng(6)
    X = rescale_to_gauge(commuting_normal_tuple(rng, (2, 1), 2), 0.7)
    m = build_fock_model((2, 1), 3)
    C, Ci = cauchy_kernel(X, m), inverse_cauchy_kernel(X, m)
    np.testing.assert_allclose(C @ Ci, np.eye(m.dim * 2), atol=1e-12)


def test_scalar_cauchy_norms_approach_sqrt3():
    X = OperatorTuple.from_scalars([[0.5]])
    gaps = []
    for L in (60, 240):
        m = build_fock_model((1,), L)
        C, Ci = cauchy_kernel(X, m), inverse_cauchy_kernel(X, m)
        gaps.append((np.sqrt(3) - operator_norm(C), np.sqrt(3) - operator_norm(Ci)))
        w = np.linalg.eigvalsh(poisson_kernel(X, m))
        assert w.min() >= 1 / 3 - 1e-12 and w.max() <= 3 + 1e-12
    assert all(g >= 0 for g in gaps[0] + gaps[1])
    assert gaps[1][0] < gaps[0][0] / 8 and gaps[1][0] < 5e-4


def test_cauchy_rejects_spectral_radius_one_naming_factor():
    m = build_fock_model((1, 1), 3)
    X = OperatorTuple.from_scalars([[0.2], [1.0]])
    with pytest.raises(DomainError, match="factor 2"):
        cauchy_kernel(X, m)
    cauchy_kernel(X, m, r=0.9)


def test_pluriharmonic_constant_and_validation():
    F = PluriharmonicPoly({(((),), ((),)): np.eye(2)})
    X = OperatorTuple([[0.5 * N]])
    np.testing.assert_array_equal(pluriharmonic_eval(F, X), np.eye(4))
    with pytest.raises(InvalidInputError):
        PluriharmonicPoly({(((1,),), ((1,),)): np.eye(1)})


def test_pluriharmonic_eval_scalar_terms():
    z = 0.3 + 0.1j
    F = PluriharmonicPoly({(((1, 1),), ((),)): [[2.0]], (((),), ((1,),)): [[1j]]})
    val = pluriharmonic_eval(F, OperatorTuple.from_scalars([[z]]))
    assert val[0, 0] == pytest.approx(2 * z ** 2 + 1j * np.conj(z))


def test_scalar_poisson_series_is_toeplitz():
    z = 0.4 - 0.2j
    m = build_fock_model((1,), 6)
    S = poisson_series(OperatorTuple.from_scalars([[z]]), m)
    i, j = np.indices(S.shape)
    expected = np.where(i >= j, np.conj(z) ** (i - j), z ** np.abs(j - i))
    np.testing.assert_allclose(S, expected, atol=1e-15)


def test_positive_model_examples():
    W = np.array([[1.0], [0.0]])
    model = PositivePluriharmonicModel([np.diag([1, -1])], W)
    np.testing.assert_allclose(positive_model_eval(model, OperatorTuple.zeros((1,), 2)),
                               np.eye(2))
    z = 0.3 + 0.2j
    one = PositivePluriharmonicModel([np.eye(1)], np.eye(1))
    val = positive_model_eval(one, OperatorTuple.from_scalars([[z]]))[0, 0]
    assert val == pytest.approx((1 - abs(z) ** 2) / abs(1 - z) ** 2)


def test_positive_model_is_psd_on_random_samples():
    rng = np.random.default_rng(7)
    for _ in range(10):
        U = [np.diag(np.exp(2j * np.pi * rng.uniform(size=3))) for _ in range(2)]
        W = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
        X = rescale_to_gauge(commuting_normal_tuple(rng, (1, 1), 2), rng.uniform(0.1, 0.95))
        assert is_psd(positive_model_eval(PositivePluriharmonicModel(U, W), X))


def test_positive_model_guards():
    with pytest.raises(InvalidInputError):
        PositivePluriharmonicModel([np.array([[2.0]])])
    with pytest.raises(InvalidInputError):
        PositivePluriharmonicModel([np.array([[0, 1], [1, 0]]), np.diag([1, -1])])
    model = PositivePluriharmonicModel([np.eye(1)])
    with pytest.raises(UnsupportedShapeError):
        positive_model_eval(model, OperatorTuple.from_scalars([[0.1, 0.1]]))


def test_kernel_bundle_flags_convergence():
    m = build_fock_model((1,), 6)
    b = kernel_bundle(OperatorTuple([[0.5 * N]]), m)
    assert b.converged
    b = kernel_bundle(OperatorTuple.from_scalars([[0.9]]), m)
    assert not b.converged
