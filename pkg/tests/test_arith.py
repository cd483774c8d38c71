import random
from fractions import Fraction

import pytest
from mpmath import iv, mp

from arith import linalg
from arith.cyclotomic import ExactScalar, e
from arith.intervals import ComplexInterval, exp_2pi_i, lower, sqrt_principal, upper
from arith.quadratic import QuadraticField, gaussian, parse_gaussian
from utils import constants
from utils.errors import CyclotomicOrderExceeded, ParseError


# ===== CYCLOTOMIC SCALARS =====

def test_roots_of_unity_multiply():
    assert e(Fraction(1, 4)) * e(Fraction(1, 4)) == -1
    assert e(Fraction(1, 3)) * e(Fraction(2, 3)) == 1
    assert e(Fraction(5, 4)) == e(Fraction(1, 4))
    assert e(0) == 1


def test_conjugate_inverts_roots():
    assert e(Fraction(1, 3)).conj() == e(Fraction(2, 3))
    z = e(Fraction(3, 8))
    assert z * z.conj() == 1


def test_radicals_stay_exact():
    assert ExactScalar.sqrt(2) * ExactScalar.sqrt(2) == 2
    assert ExactScalar.inverse_sqrt(8) * ExactScalar.sqrt(8) == 1
    assert ExactScalar.sqrt(12) == ExactScalar.sqrt(3) * 2


def test_radicals_expand_through_gauss_sums():
    assert ExactScalar.sqrt(2) == e(Fraction(1, 8)) + e(Fraction(-1, 8))
    assert ExactScalar.sqrt(2) + ExactScalar.sqrt(3) - ExactScalar.sqrt(3) == ExactScalar.sqrt(2)


def test_milgram_identity_for_a1():
    assert 1 + e(Fraction(1, 4)) == ExactScalar.sqrt(2) * e(Fraction(1, 8))


def test_render_uses_minimal_order():
    assert ExactScalar.one().render() == "(1:1; 1; 0)"
    assert (e(Fraction(1, 4)) * e(Fraction(1, 4))).render() == e(Fraction(1, 2)).render() == "(1:-1; 1; 0)"


def test_canonical_form_ignores_the_radical():
    assert ExactScalar.sqrt(2).render() == "(8:0,1,0,-1; 1; 0)"
    built_from_radicals = ExactScalar.sqrt(3) * ExactScalar.sqrt(6)
    built_from_roots = (e(Fraction(1, 8)) + e(Fraction(-1, 8))) * 3
    assert built_from_radicals == built_from_roots
    assert built_from_radicals.render() == built_from_roots.render()
    assert (ExactScalar.inverse_sqrt(2) * 2).render() == ExactScalar.sqrt(2).render()


def test_scalars_are_unhashable():
    with pytest.raises(TypeError):
        hash(ExactScalar.one())


def test_order_bound_is_enforced(monkeypatch):
    monkeypatch.setattr(constants, "MAX_CYCLO_ORDER", 100)
    with pytest.raises(CyclotomicOrderExceeded):
        e(Fraction(1, 101))


def test_embedding_encloses_value():
    z = e(Fraction(1, 8)).embed(80)
    half_root = 2 ** 0.5 / 2
    assert abs(z.midpoint() - complex(half_root, half_root)) < 1e-12
    assert z.width() < 1e-15


def test_root_laws_on_random_pairs():
    rng = random.Random(11)
    for _ in range(1000):
        z1 = Fraction(rng.randint(-60, 60), rng.randint(1, 24))
        z2 = Fraction(rng.randint(-60, 60), rng.randint(1, 24))
        assert e(z1) * e(z2) == e(z1 + z2)
        assert e(z1).conj() == e(-z1)


@pytest.mark.parametrize(
    "scalar, re, im",
    [
        (lambda: e(Fraction(1, 7)), lambda: mp.cos(2 * mp.pi / 7), lambda: mp.sin(2 * mp.pi / 7)),
        (lambda: e(Fraction(5, 12)) * 3, lambda: 3 * mp.cos(5 * mp.pi / 6), lambda: 3 * mp.sin(5 * mp.pi / 6)),
        (lambda: ExactScalar.sqrt(2), lambda: mp.sqrt(2), lambda: mp.mpf(0)),
        (lambda: ExactScalar.inverse_sqrt(3) * e(Fraction(1, 4)), lambda: mp.mpf(0), lambda: 1 / mp.sqrt(3)),
    ],
)
def test_embedding_contains_exact_value(scalar, re, im):
    box = scalar().embed(64)
    with mp.workprec(256):
        assert lower(box.re) <= re() <= upper(box.re)
        assert lower(box.im) <= im() <= upper(box.im)


# ===== QUADRATIC FIELDS =====

def test_gaussian_unit():
    K = QuadraticField(-1)
    assert K.omega * K.omega == -1
    assert K.unit_order == 4
    assert K.unit_exponent(K.omega) == Fraction(1, 4)


def test_eisenstein_omega():
    K = QuadraticField(-3)
    w = K.omega
    assert w * w == w - 1
    assert w.norm() == 1 and w.trace() == 1
    assert len(K.units()) == 6
    assert K.unit_exponent(w) == Fraction(1, 6)


def test_conjugation_and_norm():
    K = QuadraticField(-7)
    x = K.element(2, 3)
    assert (x * x.conj()).is_rational()
    assert (x * x.conj()).a == x.norm()
    assert x / x == 1


@pytest.mark.parametrize("d", [2, -4, 0])
def test_bad_fields_rejected(d):
    with pytest.raises(ParseError):
        QuadraticField(d)


def test_parse_gaussian():
    assert parse_gaussian("1/2, -3") == gaussian(Fraction(1, 2), -3)
    with pytest.raises(ParseError):
        parse_gaussian("1+i")


# ===== INTERVALS =====

def test_exp_2pi_i_quarter_turn():
    z = exp_2pi_i(ComplexInterval(Fraction(1, 4), 0))
    assert abs(z.midpoint() - 1j) < 1e-12


def test_principal_square_root():
    z = sqrt_principal(ComplexInterval(0, 2))
    assert abs(z.midpoint() - (1 + 1j)) < 1e-12
    w = sqrt_principal(ComplexInterval(-3, -4))
    assert abs(w.midpoint() - (1 - 2j)) < 1e-12


def test_magnitudes_of_boxes_straddling_zero():
    box = ComplexInterval(iv.mpf([-1, 2]), iv.mpf([-3, 1]))
    assert 13 ** 0.5 <= box.abs_upper() < 13 ** 0.5 + 1e-9
    assert ComplexInterval(iv.mpf([-1e-20, 1e-20]), 0).abs_upper() < 1e-19
    root = sqrt_principal(ComplexInterval(iv.mpf([-1e-12, 1e-12]), iv.mpf([-1e-12, 1e-12])))
    assert root.abs_upper() < 1e-5
    quotient = ComplexInterval(1) / ComplexInterval(iv.mpf([-0.5, 0.5]), 2)
    assert quotient.abs_upper() < 1


# ===== LINEAR ALGEBRA =====

def test_inverse_and_determinant():
    m = linalg.fraction_matrix([[2, 1], [1, 2]])
    assert linalg.determinant(m) == 3
    inv = linalg.inverse(m)
    assert linalg.matmul(m, inv) == linalg.identity(2)


def test_nullspace_and_solve():
    m = linalg.fraction_matrix([[1, 1, 0], [0, 1, 1]])
    (v,) = linalg.nullspace(m, 3)
    assert linalg.matvec(m, v) == (0, 0)
    x = linalg.solve(m, (Fraction(2), Fraction(3)))
    assert linalg.matvec(m, x) == (2, 3)
    with pytest.raises(ValueError):
        linalg.solve(linalg.fraction_matrix([[1, 1], [1, 1]]), (Fraction(1), Fraction(2)))
