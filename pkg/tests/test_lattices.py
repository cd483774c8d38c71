from fractions import Fraction

import pytest

from arith import linalg
from lattices.corpus import (
    a1_negative,
    eisenstein_integers,
    hermitian_corpus,
    hermitian_hyperbolic,
    random_corpus,
    standard_corpus,
)
from lattices.discriminant import discriminant_group
from lattices.lattice import (
    direct_sum,
    dual_transition,
    from_k_coordinates,
    hermitian_pairing,
    k_scale,
    orthogonal_lattice,
    rescale,
    to_k_coordinates,
    trace_form,
    unitary_lattice,
)
from lattices.signature import Signature, diagonalize, form_signature, hermitian_signature, signature
from lattices.smith import smith_normal_form, unimodular_inverse
from nodes.weil_suites import random_special_linear
from utils.dataclasses import Case
from utils.errors import Degenerate, NotEven, ParseError, WrongCase


# ===== CONSTRUCTION =====

def test_orthogonal_lattice_validation():
    with pytest.raises(NotEven):
        orthogonal_lattice([[1]])
    with pytest.raises(NotEven):
        orthogonal_lattice([[2, Fraction(1, 2)], [Fraction(1, 2), 2]])
    with pytest.raises(Degenerate):
        orthogonal_lattice([[2, 2], [2, 2]])
    with pytest.raises(ParseError):
        orthogonal_lattice([[2, 1], [0, 2]])
    with pytest.raises(ParseError):
        orthogonal_lattice([[2, 0]])


def test_quadratic_values(A2):
    assert A2.quadratic((1, 0)) == 1
    assert A2.quadratic((1, -1)) == 1
    assert A2.pairing((1, 0), (0, 1)) == 1


def test_fingerprint_is_stable(A1, A2):
    assert A1.fingerprint() == orthogonal_lattice([[2]]).fingerprint()
    assert A1.fingerprint() != A2.fingerprint()


def test_direct_sum_and_rescale(A1, U):
    s = direct_sum(U, A1)
    assert s.rank == 3
    assert signature(s) == Signature(2, 1)
    assert signature(a1_negative()) == Signature(0, 1)
    assert rescale(A1, 3).gram == ((6,),)


def test_unitary_trace_gram(gaussian_lattice, A2):
    assert gaussian_lattice.case is Case.UNITARY
    assert gaussian_lattice.gram == ((2, 0), (0, 2))
    assert trace_form(eisenstein_integers()).gram == A2.gram
    assert trace_form(gaussian_lattice).case is Case.ORTHOGONAL


def test_unitary_validation():
    with pytest.raises(ParseError):
        unitary_lattice(-1, [[(1, 0), (0, 1)], [(0, 1), (1, 0)]])
    with pytest.raises(WrongCase):
        trace_form(orthogonal_lattice([[2]]))


def test_k_structure(gaussian_lattice):
    field = gaussian_lattice.field
    v = (Fraction(1), Fraction(2))
    assert from_k_coordinates(gaussian_lattice, to_k_coordinates(gaussian_lattice, v)) == v
    iv = k_scale(gaussian_lattice, field.omega, v)
    assert to_k_coordinates(gaussian_lattice, iv) == (field.element(1, 2) * field.omega,)
    assert hermitian_pairing(gaussian_lattice, v, v) == 5


# ===== SIGNATURES =====

def test_signatures(E8, U):
    assert signature(E8) == Signature(8, 0)
    assert signature(U) == Signature(1, 1)
    assert hermitian_signature(hermitian_hyperbolic()) == Signature(1, 1)
    assert signature(hermitian_hyperbolic()) == Signature(2, 2)


def test_diagonalize_repairs_zero_pivots():
    diag, basis = diagonalize([[0, 1], [1, 0]])
    assert diag[0] > 0 > diag[1]
    gram = linalg.fraction_matrix([[0, 1], [1, 0]])
    assert linalg.bilinear(basis[0], gram, basis[1]) == 0


def test_degenerate_form_signature():
    with pytest.raises(Degenerate):
        form_signature([[2, 0], [0, 0]])


# ===== SMITH FORM AND DISCRIMINANT GROUPS =====

def test_smith_normal_form():
    a = [[2, 4], [6, 8]]
    form = smith_normal_form(a)
    assert form.diagonal == (2, 4)
    assert linalg.matmul(linalg.matmul(form.P, a), form.Q) == form.D


def test_dual_transition(A2):
    assert dual_transition(A2) == ((Fraction(2, 3), Fraction(-1, 3)), (Fraction(-1, 3), Fraction(2, 3)))


def test_unimodular_inverse():
    m = ((2, 1), (1, 1))
    assert linalg.matmul(m, unimodular_inverse(m)) == ((1, 0), (0, 1))


@pytest.mark.parametrize(
    "name, divisors, q_values",
    [
        ("A1", (2,), [0, Fraction(1, 4)]),
        ("A2", (3,), [0, Fraction(1, 3), Fraction(1, 3)]),
        ("D4", (2, 2), [0, Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)]),
        ("E8", (), [0]),
        ("U", (), [0]),
        ("A1(-1)", (2,), [0, Fraction(3, 4)]),
    ],
)
def test_discriminant_groups(name, divisors, q_values):
    disc = discriminant_group(standard_corpus()[name])
    assert disc.elementary_divisors == divisors
    assert sorted(disc.q_values) == q_values
    assert disc.order == len(q_values)


def test_discriminant_group_law(D4):
    disc = discriminant_group(D4)
    for x in disc.elements:
        assert disc.add(x, disc.neg(x)) == disc.zero
        assert disc.coords_of(disc.lift(x)) == x
    with pytest.raises(ValueError):
        disc.coords_of((Fraction(1, 3), 0, 0, 0))


def test_order_is_determinant():
    for lattice in list(random_corpus(7, 8).values()) + list(hermitian_corpus().values()):
        assert discriminant_group(lattice).order == abs(linalg.determinant(lattice.gram))


# ===== INVARIANCE =====

def test_q_is_invariant_under_lattice_shifts(rng, A2, D4):
    lattices = [A2, D4] + list(random_corpus(3, 4).values())
    for _ in range(1000):
        lattice = rng.choice(lattices)
        disc = discriminant_group(lattice)
        x = rng.choice(disc.elements)
        shift = [rng.randint(-9, 9) for _ in range(lattice.rank)]
        moved = tuple(a + b for a, b in zip(disc.lift(x), shift))
        assert lattice.quadratic(moved) % 1 == disc.q(x)
        assert disc.coords_of(moved) == x


def test_evenness_survives_unimodular_base_change(rng):
    odd = [[1, 0], [0, 2]]
    for lattice in random_corpus(5, 6).values():
        P = random_special_linear(rng, lattice.rank, steps=6)
        moved = orthogonal_lattice(linalg.matmul(linalg.matmul(linalg.transpose(P), lattice.gram), P))
        before, after = discriminant_group(lattice), discriminant_group(moved)
        assert after.elementary_divisors == before.elementary_divisors
        assert sorted(after.q_values) == sorted(before.q_values)
        Q = random_special_linear(rng, 2, steps=6)
        with pytest.raises(NotEven):
            orthogonal_lattice(linalg.matmul(linalg.matmul(linalg.transpose(Q), odd), Q))


def test_trace_form_keeps_the_discriminant_form():
    for lattice in hermitian_corpus().values():
        unitary, trace = discriminant_group(lattice), discriminant_group(trace_form(lattice))
        assert trace.elementary_divisors == unitary.elementary_divisors
        assert trace.q_values == unitary.q_values
        assert trace.b_table == unitary.b_table
