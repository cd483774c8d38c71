import random
from fractions import Fraction

import pytest

from arith.cyclotomic import ExactScalar, e
from lattices.corpus import eisenstein_integers, hermitian_corpus
from lattices.lattice import trace_form
from utils.dataclasses import Case
from utils.errors import NoConsistentIndex, NotUnimodular, ParseError, SizeMismatch, WrongCase
from weil.generators import GroupWord, S, T, as_unitary, m, n, word, word_matrix
from weil.matrices import WeilMatrix
from weil.representation import (
    check_weil_index,
    dimension,
    gauss_sum,
    is_unitary_matrix,
    milgram_value,
    n_phase,
    unitary_weil_index,
    weil_generator_matrix,
    weil_word_matrix,
)
from weil.sl2 import factor_sl2, sl2_product


def _matrix(entries):
    return WeilMatrix(len(entries), [{i: entries[i][j] for i in range(len(entries))} for j in range(len(entries))])


# ===== GENERATOR MATRICES =====

def test_a1_generators(A1):
    i = e(Fraction(1, 4))
    one, zero = ExactScalar.one(), ExactScalar.zero()
    assert weil_generator_matrix(A1, 1, T(1)) == _matrix([[one, zero], [zero, i]])
    c = e(Fraction(-1, 8)) * ExactScalar.inverse_sqrt(2)
    assert weil_generator_matrix(A1, 1, S()) == _matrix([[c, c], [c, -c]])


def test_s_squared_is_the_central_element(A1, A2):
    for lattice, sig in ((A1, 1), (A2, 2)):
        s = weil_generator_matrix(lattice, 1, S())
        z = weil_generator_matrix(lattice, 1, m([[-1]]))
        assert s.power(2) == z
        assert s.power(4).scalar_value() == e(Fraction(-sig, 2))


@pytest.mark.parametrize("name", ["A1", "A2", "D4", "U", "A1(-1)"])
def test_st_cubed(name):
    from lattices.corpus import standard_corpus
    lattice = standard_corpus()[name]
    st = weil_word_matrix(lattice, GroupWord((S(), T(1))))
    assert st.power(3) == weil_generator_matrix(lattice, 1, S()).power(2)


def test_e8_is_one_dimensional(E8):
    assert dimension(E8, 2) == 1
    assert weil_generator_matrix(E8, 1, S()).is_identity()


def test_generators_are_unitary(A2):
    for g in (S(), T(2), m([[-1]])):
        assert is_unitary_matrix(weil_generator_matrix(A2, 1, g))
    for g in (S(), n([[1, 1], [1, 0]]), m([[0, 1], [1, 0]])):
        assert is_unitary_matrix(weil_generator_matrix(A2, 2, g))


def test_genus_two_n_phase(A1):
    assert n_phase(A1, n([[1]]), (1,)) == Fraction(1, 4)
    assert n_phase(A1, n([[0, 1], [1, 0]]), (1, 1)) == Fraction(1, 2)
    assert n_phase(A1, n([[1, 0], [0, 1]]), (1, 1)) == Fraction(1, 2)


def test_genus_two_generators_split_as_tensor_squares(A2):
    s1, s2 = weil_generator_matrix(A2, 1, S()), weil_generator_matrix(A2, 2, S())
    assert s2.is_kronecker(s1, s1)
    assert not s2.is_kronecker(s1, s1.scale(e(Fraction(1, 4))))
    n1 = weil_generator_matrix(A2, 1, n([[1]]))
    assert weil_generator_matrix(A2, 2, n([[1, 0], [0, 1]])).is_kronecker(n1, n1)
    assert not weil_generator_matrix(A2, 2, n([[1, 1], [1, 1]])).is_kronecker(n1, n1)


def test_threads_do_not_change_matrices(A2):
    w = GroupWord((S(), T(1), S(), T(-2)))
    assert weil_word_matrix(A2, w, threads=4) == weil_word_matrix(A2, w, threads=1)


# ===== VALIDATION =====

def test_letter_validation(A1):
    with pytest.raises(NotUnimodular):
        weil_generator_matrix(A1, 1, m([[2]]))
    with pytest.raises(ParseError):
        weil_generator_matrix(A1, 2, n([[1, 2], [3, 1]]))
    with pytest.raises(SizeMismatch):
        weil_generator_matrix(A1, 2, n([[1]]))
    with pytest.raises(SizeMismatch):
        weil_generator_matrix(A1, 0, S())


def test_case_mismatch(gaussian_lattice, A1):
    with pytest.raises(WrongCase):
        weil_word_matrix(gaussian_lattice, GroupWord((S(),)))
    with pytest.raises(WrongCase):
        weil_word_matrix(A1, as_unitary(GroupWord((S(),)), -1))


def test_word_constructor_validates():
    with pytest.raises(NotUnimodular):
        word(m([[3]]))
    assert len(word(S(), T(1), genus=1)) == 2


# ===== MILGRAM =====

def test_milgram_corpus():
    from lattices.corpus import standard_corpus
    for lattice in standard_corpus().values():
        assert gauss_sum(lattice) == milgram_value(lattice)


def test_milgram_a1_values(A1):
    assert gauss_sum(A1) == 1 + e(Fraction(1, 4))


# ===== UNITARY CASE =====

def test_unitary_restriction_matches_trace_form():
    rng = random.Random(3)
    for lattice in hermitian_corpus().values():
        for w in (GroupWord((S(),)), GroupWord((T(1), S(), T(-1))), GroupWord((S(), T(rng.randint(1, 3))) * 2)):
            unitary = weil_word_matrix(lattice, as_unitary(w, lattice.field_disc))
            assert unitary == weil_word_matrix(trace_form(lattice), w)


def test_weil_index_negative_control():
    lattice = eisenstein_integers()
    gamma = unitary_weil_index(lattice)
    check_weil_index(lattice, gamma)
    with pytest.raises(NoConsistentIndex):
        check_weil_index(lattice, gamma * e(Fraction(1, 8)))


def test_unit_determinant_letters():
    lattice = hermitian_corpus()["O_Q(i)"]
    K = lattice.field
    w = GroupWord((m([[K.omega]]),), 1, Case.UNITARY, -1)
    assert is_unitary_matrix(weil_word_matrix(lattice, w))
    with pytest.raises(NotUnimodular):
        weil_word_matrix(lattice, GroupWord((m([[K.element(1, 1)]]),), 1, Case.UNITARY, -1))


# ===== SL2 =====

def test_group_matrices():
    assert word_matrix(GroupWord((S(),))) == ((0, -1), (1, 0))
    assert word_matrix(GroupWord((T(3),))) == ((1, 3), (0, 1))


@pytest.mark.parametrize("M", [((2, 1), (1, 1)), ((1, 0), (5, 1)), ((-1, 0), (0, -1)), ((13, 8), (21, 13)), ((0, -1), (1, 0))])
def test_factor_sl2_roundtrip(M):
    w = factor_sl2(M)
    assert sl2_product(w) == M
    assert w.source == M


def test_factor_sl2_rejects_non_unimodular():
    with pytest.raises(NotUnimodular):
        factor_sl2(((2, 0), (0, 1)))
