import numpy as np
import pytest

from polyball import (OperatorTuple, PolyballAutomorphism, apply, delta_h_polydisk, delta_p,
                      mobius_polydisk, permute, unitary_twist)
from polyball.automorphisms import mobius_scalar
from polyball.errors import DomainError, InvalidInputError, UnsupportedShapeError
from polyball.fock import build_fock_model
from polyball.sampling import commuting_normal_tuple, random_unitary, rescale_to_gauge

A2 = np.array([[0.1, 0.2], [0.0, 0.3]], dtype=complex)
B2 = np.array([[0.2, 0.0], [0.1, -0.1]], dtype=complex)


def sc(*z):
    return OperatorTuple.from_scalars([[v] for v in z])


def test_permute_examples():
    X = sc(0.5, 0.3)
    assert permute((1, 2), X) == X
    assert permute((2, 1), X) == sc(0.3, 0.5)
    with pytest.raises(InvalidInputError):
        permute((1, 1), X)
    with pytest.raises(InvalidInputError):
        permute((2, 1), OperatorTuple.from_scalars([[0.1, 0.1], [0.2]]))


def test_unitary_twist_examples():
    X = OperatorTuple([[A2, B2]])
    assert unitary_twist([np.eye(2)], X) == X
    assert unitary_twist([np.array([[0, 1], [1, 0]])], X) == OperatorTuple([[B2, A2]])
    with pytest.raises(InvalidInputError):
        unitary_twist([np.array([[1, 1], [0, 1]])], X)


def test_mobius_examples():
    X = OperatorTuple.polydisk([A2])
    np.testing.assert_allclose(mobius_polydisk([0], X).rows[0][0], -A2)
    assert abs(mobius_polydisk([0.5], sc(0.5)).rows[0][0][0, 0]) < 1e-15
    with pytest.raises(DomainError):
        mobius_polydisk([1.0], sc(0.2))
    with pytest.raises(UnsupportedShapeError):
        mobius_polydisk([0.1], OperatorTuple.from_scalars([[0.1, 0.1]]))


def test_mobius_is_an_involution():
    rng = np.random.default_rng(11)
    for _ in range(10):
        X = rescale_to_gauge(commuting_normal_tuple(rng, (1, 1), 3), 0.9)
        lam = 0.7 * rng.uniform(size=2) * np.exp(2j * np.pi * rng.uniform(size=2))
        Y = mobius_polydisk(lam, mobius_polydisk(lam, X))
        assert Y.distance(X) <= 1e-10


def test_mobius_scalar_matches_matrix_form():
    lam, z = 0.3 - 0.4j, 0.2 + 0.5j
    assert mobius_polydisk([lam], sc(z)).rows[0][0][0, 0] == pytest.approx(mobius_scalar(lam, z))


def test_composite_examples():
    X = sc(0.2, -0.4j)
    assert apply(PolyballAutomorphism(), X) == X
    swapped = apply(PolyballAutomorphism(sigma=(2, 1), lam=(0, 0)), X)
    assert swapped.distance(sc(0.4j, -0.2)) < 1e-15


def test_from_dict_accepts_pairs():
    aut = PolyballAutomorphism.from_dict(
        {"sigma": [2, 1], "unitaries": [[[[0, 1]]], [[1]]], "lambda": [[0.1, 0.2], 0]})
    assert aut.sigma == (2, 1)
    assert aut.lam == (0.1 + 0.2j, 0)
    np.testing.assert_array_equal(aut.unitaries[0], [[1j]])


def test_composites_preserve_delta_h():
    rng = np.random.default_rng(12)
    A, B = sc(0.3 + 0.1j, -0.2), sc(0.1j, 0.4)
    before = delta_h_polydisk(A, B).value
    for _ in range(3):
        aut = PolyballAutomorphism((2, 1), (random_unitary(rng, 1), random_unitary(rng, 1)),
                                   tuple(0.5 * rng.uniform(size=2)))
        after = delta_h_polydisk(apply(aut, A), apply(aut, B)).value
        assert after == pytest.approx(before, abs=1e-8)


def test_twist_preserves_delta_p_on_ball_factor():
    rng = np.random.default_rng(13)
    A = rescale_to_gauge(commuting_normal_tuple(rng, (2,), 2), 0.6)
    B = rescale_to_gauge(commuting_normal_tuple(rng, (2,), 2), 0.4)
    m = build_fock_model((2,), 4)
    U = [random_unitary(rng, 2)]
    before = delta_p(A, B, model=m, extrapolate=False).value
    after = delta_p(unitary_twist(U, A), unitary_twist(U, B), model=m, extrapolate=False).value
    assert after == pytest.approx(before, abs=1e-10)
