import numpy as np
import pytest

from polyball.errors import CapacityError, InvalidInputError
from polyball.fock import (PolyballShape, Word, build_fock_model, factor_dim, factor_words,
                           reverse_word, word_operator)


def test_single_generator_is_lower_shift():
    m = build_fock_model((1,), 3)
    assert m.dim == 4
    np.testing.assert_array_equal(m.S(1, 1, dense=True), np.eye(4, k=-1))


def test_two_generators_degree_one():
    m = build_fock_model((2,), 1)
    assert m.dim == 3
    assert [lab[0] for lab in m.labels()] == [(), (1,), (2,)]
    vac = np.eye(3)[:, 0]
    np.testing.assert_array_equal(m.S(1, 1, dense=True) @ vac, np.eye(3)[:, 1])


def test_bidisk_factor_placement():
    m = build_fock_model((1, 1), 2)
    assert m.dim == 9
    shift = np.eye(3, k=-1)
    np.testing.assert_array_equal(m.S(1, 1, dense=True), np.kron(shift, np.eye(3)))
    np.testing.assert_array_equal(m.S(2, 1, dense=True), np.kron(np.eye(3), shift))


def test_factor_dim_and_words():
    assert factor_dim(1, 5) == 6
    assert factor_dim(2, 3) == 15
    assert factor_dim(3, 2) == 13
    assert factor_words(2, 2) == [(), (1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)]


def test_capacity_error_reports_dimension():
    with pytest.raises(CapacityError) as info:
        build_fock_model((2, 2), 6, cap=1000)
    assert info.value.dimension == 127 * 127


def test_bad_shape_and_indices():
    with pytest.raises(InvalidInputError):
        PolyballShape(())
    with pytest.raises(InvalidInputError):
        PolyballShape((0, 1))
    m = build_fock_model((2,), 2)
    with pytest.raises(InvalidInputError):
        m.S(1, 3)
    with pytest.raises(InvalidInputError):
        m.S(2, 1)
    with pytest.raises(InvalidInputError):
        Word(1, (0,))


def test_reverse_word():
    assert reverse_word(()) == ()
    assert reverse_word((1, 2, 1)) == (1, 2, 1)
    assert reverse_word((1, 2, 3)) == (3, 2, 1)


def test_word_operator_examples():
    m = build_fock_model((1,), 3)
    np.testing.assert_array_equal(word_operator(m, [()], dense=True), np.eye(4))
    np.testing.assert_array_equal(word_operator(m, [(1, 1)], dense=True), np.eye(4, k=-2))
    with pytest.raises(InvalidInputError):
        word_operator(m, [(2,)])


def test_left_and_right_words_differ_but_isometric_low_degree():
    m = build_fock_model((2,), 3)
    SL = word_operator(m, [(1, 2)], "left", dense=True)
    SR = word_operator(m, [(1, 2)], "right", dense=True)
    assert not np.array_equal(SL, SR)
    low = m.degrees(1) <= 1
    for M in (SL, SR):
        np.testing.assert_allclose(M[:, low].T @ M[:, low], np.eye(low.sum()))


def test_left_creation_prepends_right_appends():
    m = build_fock_model((2,), 2)
    e2 = np.zeros(m.dim)
    e2[m.index_of([(2,)])] = 1
    assert m.index_of([(1, 2)]) == np.flatnonzero(m.S(1, 1, dense=True) @ e2)[0]
    assert m.index_of([(2, 1)]) == np.flatnonzero(m.R(1, 1, dense=True) @ e2)[0]


def test_cuntz_relations_below_top_degree():
    m = build_fock_model((2, 1), 3)
    low = np.ones(m.dim, bool)
    for i in (1, 2):
        low &= m.degrees(i) < m.L[i - 1]
    for i, n in ((1, 2), (2, 1)):
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                G = (m.S(i, a).T @ m.S(i, b)).toarray()
                np.testing.assert_array_equal(G[np.ix_(low, low)], np.eye(low.sum()) * (a == b))


def test_left_and_right_shifts_commute():
    m = build_fock_model((2,), 3)
    for a in (1, 2):
        for b in (1, 2):
            S, R = m.S(1, a), m.R(1, b)
            assert abs(S @ R - R @ S).max() == 0
