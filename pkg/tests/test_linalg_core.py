import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from polyball.errors import DomainError, InvalidInputError, SingularMatrixError
from polyball.linalg_core import (Tolerances, as_matrix, hermitian_eigvalsh, inverse, is_psd,
                                  kron, operator_norm, psd_sqrt, singular_extremes,
                                  solve_lower, spectral_radius)


@pytest.mark.parametrize("M, expected", [
    (np.eye(3), 1.0),
    (np.zeros((2, 2)), 0.0),
    (np.diag([3, -4j]), 4.0),
])
def test_operator_norm_examples(M, expected):
    assert operator_norm(M) == pytest.approx(expected, abs=1e-14)


def test_operator_norm_large_uses_iterative_path():
    rng = np.random.default_rng(0)
    d = rng.uniform(0, 1, 2100)
    d[17] = 5.0
    M = np.diag(d)
    assert operator_norm(M) == pytest.approx(5.0, rel=1e-10)


def test_empty_matrix_rejected():
    with pytest.raises(InvalidInputError):
        operator_norm(np.zeros((0, 0)))


def test_nonfinite_rejected():
    with pytest.raises(InvalidInputError):
        as_matrix([[np.nan]])


@pytest.mark.parametrize("M, expected", [
    (np.eye(2), True),
    (np.diag([1, -0.5]), False),
    (np.array([[1, 0.999], [0.999, 1]]), True),
])
def test_is_psd_examples(M, expected):
    assert is_psd(M, tol=1e-10) is expected


def test_is_psd_rejects_non_square():
    with pytest.raises(InvalidInputError):
        is_psd(np.ones((2, 3)))


def test_hermitian_eigvalsh_rejects_asymmetry():
    with pytest.raises(DomainError):
        hermitian_eigvalsh(np.array([[0, 1], [0, 0]]))


@pytest.mark.parametrize("M, expected", [
    (np.array([[0, 1], [0, 0]]), 0.0),
    (np.diag([0.9, 0.2]), 0.9),
    (np.array([[0, 2], [0.5, 0]]), 1.0),
])
def test_spectral_radius_examples(M, expected):
    assert spectral_radius(M) == pytest.approx(expected, abs=1e-12)


def test_spectral_radius_non_square():
    with pytest.raises(InvalidInputError):
        spectral_radius(np.ones((1, 2)))


def test_inverse_sqrt_kron_examples():
    np.testing.assert_allclose(inverse(2 * np.eye(2)), 0.5 * np.eye(2))
    np.testing.assert_allclose(psd_sqrt(np.diag([4, 9])), np.diag([2, 3]))
    a, b = 0.3 + 1j, -2.0
    np.testing.assert_allclose(kron(np.eye(2), np.diag([a, b])), np.diag([a, b, a, b]))


def test_inverse_singular_carries_condition():
    with pytest.raises(SingularMatrixError) as info:
        inverse(np.array([[1.0, 0], [0, 0]]))
    assert info.value.condition > 1e13


def test_psd_sqrt_rejects_negative():
    with pytest.raises(DomainError):
        psd_sqrt(np.diag([1.0, -1.0]))


def test_tolerances_must_be_positive():
    with pytest.raises(InvalidInputError):
        Tolerances(psd=0.0)


def test_solve_lower_matches_dense_solve():
    rng = np.random.default_rng(1)
    T = np.tril(rng.standard_normal((6, 6))) + 4 * np.eye(6)
    B = rng.standard_normal((6, 2))
    np.testing.assert_allclose(solve_lower(T, B), np.linalg.solve(T, B), atol=1e-12)


square = st.integers(1, 5).flatmap(
    lambda n: arrays(np.float64, (n, n), elements=st.floats(-3, 3)))


@settings(max_examples=60, deadline=None)
@given(square)
def test_norm_bounds_entries_and_extremes(M):
    nrm = operator_norm(M)
    assert nrm >= np.max(np.abs(M)) - 1e-12
    smax, smin = singular_extremes(M)
    assert smax == pytest.approx(nrm, abs=1e-12)
    assert 0 <= smin <= smax + 1e-12


@settings(max_examples=60, deadline=None)
@given(square)
def test_gram_is_psd_and_sqrt_squares_back(M):
    G = M.T @ M
    assert is_psd(G)
    R = psd_sqrt(G)
    np.testing.assert_allclose(R @ R, G, atol=1e-8 * (1 + np.max(np.abs(G))))
