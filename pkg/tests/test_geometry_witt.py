from fractions import Fraction

import pytest

from cycles.geometry import boundary_profile, complement_form, cusp_incidence, span_rank
from cycles.witt import (
    INFINITY,
    _squarefree_model,
    find_isotropic_vector,
    hermitian_witt_index,
    hilbert_symbol,
    local_isotropy,
    primitive,
    witt_index,
)
from lattices.corpus import hermitian_hyperbolic
from lattices.lattice import direct_sum
from lattices.signature import Signature
from utils.dataclasses import WittStatus
from utils.errors import DegenerateForm, NotIsotropic, NotPosDefSpan, WrongCase


# ===== LOCAL SYMBOLS =====

@pytest.mark.parametrize(
    "a, b, p, expected",
    [
        (-1, -1, 2, -1),
        (-1, -1, INFINITY, -1),
        (-1, -1, 3, 1),
        (2, 3, 5, 1),
        (2, 5, 5, -1),
        (Fraction(1, 2), 3, INFINITY, 1),
    ],
)
def test_hilbert_symbol(a, b, p, expected):
    assert hilbert_symbol(a, b, p) == expected


def test_hilbert_symbol_needs_units():
    with pytest.raises(ValueError):
        hilbert_symbol(0, 1, 3)


def test_local_isotropy():
    sum_of_squares = [[1, 0, 0], [0, 1, 0], [0, 0, -3]]
    assert local_isotropy(sum_of_squares, INFINITY)
    assert not all(local_isotropy(sum_of_squares, p) for p in (2, 3))
    assert local_isotropy([[1, 0], [0, -1]], 7)
    with pytest.raises(DegenerateForm):
        local_isotropy([[1, 0], [0, 0]], 2)


# ===== WITT INDEX =====

def test_isotropic_ternary(isotropic_ternary):
    report = witt_index(isotropic_ternary)
    assert report.witt_index == 1
    assert report.isotropic_witness == (1, 1, 0)
    assert report.status is WittStatus.EXACT
    assert report.signature == Signature(1, 2)


def test_isotropic_ternary_has_no_obstruction(isotropic_ternary):
    assert witt_index(isotropic_ternary).obstruction is None


def test_witness_for_non_integral_diagonal_model():
    form = ((12, 0, 6, -5, 0), (0, -2, 0, 0, 0), (6, 0, 3, -5, 0), (-5, 0, -5, -5, 0), (0, 0, 0, 0, -6))
    report = witt_index(form)
    v = report.isotropic_witness
    assert v is not None and any(v)
    assert sum(v[i] * form[i][j] * v[j] for i in range(5) for j in range(5)) == 0
    assert report.witt_index >= 1
    assert report.obstruction is None


def test_squarefree_model_rescales_the_diagonal():
    squarefree, scales = _squarefree_model([Fraction(12), Fraction(-85, 12), Fraction(15, 17)])
    assert squarefree == [3, -255, 255]
    for a, s, c in zip([Fraction(12), Fraction(-85, 12), Fraction(15, 17)], squarefree, scales):
        assert a * c * c == s


def test_definite_forms_are_anisotropic_at_infinity(E8):
    report = witt_index(E8)
    assert report.witt_index == 0
    assert report.obstruction is INFINITY
    assert report.isotropic_witness is None


def test_finite_obstruction():
    form = [[2, 0, 0], [0, 2, 0], [0, 0, -6]]
    report = witt_index(form)
    assert report.witt_index == 0
    assert report.obstruction in (2, 3)
    assert not local_isotropy(form, report.obstruction)


def test_hyperbolic_sums(U, A1):
    assert witt_index(U).witt_index == 1
    report = witt_index(direct_sum(direct_sum(U, U), A1))
    assert report.witt_index == 2
    assert not report.inconclusive


def test_witness_is_isotropic_and_primitive():
    form = [[0, 1, 0], [1, 0, 0], [0, 0, 2]]
    v = find_isotropic_vector(form)
    assert v is not None
    assert primitive(v) == v
    assert sum(v[i] * form[i][j] * v[j] for i in range(3) for j in range(3)) == 0


def test_primitive():
    assert primitive((Fraction(-2, 3), Fraction(4, 3), 0)) == (1, -2, 0)


def test_hermitian_witt_index(gaussian_lattice, A1):
    assert hermitian_witt_index(hermitian_hyperbolic()) == 1
    assert hermitian_witt_index(gaussian_lattice) == 0
    with pytest.raises(WrongCase):
        hermitian_witt_index(A1)
    with pytest.raises(WrongCase):
        hermitian_witt_index([[1]])


# ===== COMPLEMENTS AND CUSPS =====

def test_span_rank(gaussian_lattice):
    assert span_rank([(1, 0), (2, 0)]) == 1
    assert span_rank([]) == 0
    # (1, 0) and i·(1, 0) span one K-line
    assert span_rank([(1, 0), (0, 1)], gaussian_lattice) == 1


def test_complement_form(isotropic_ternary):
    space = complement_form(isotropic_ternary, [(1, 0, 0)])
    assert space.dimension == 2
    assert space.signature() == Signature(0, 2)
    with pytest.raises(NotPosDefSpan):
        complement_form(isotropic_ternary, [(0, 1, 0)])


def test_cusp_incidence(isotropic_ternary):
    J = [(1, 1, 0)]
    assert cusp_incidence(isotropic_ternary, J, [(0, 0, 1)])
    assert not cusp_incidence(isotropic_ternary, J, [(1, 0, 0)])
    with pytest.raises(NotIsotropic):
        cusp_incidence(isotropic_ternary, [(1, 0, 0)], [])


def test_boundary_profiles(isotropic_ternary, E8, U, A1):
    assert boundary_profile(E8).compact
    assert boundary_profile(isotropic_ternary).zero_dim_only
    assert boundary_profile(isotropic_ternary, [(1, 0, 0)]).compact
    assert boundary_profile(direct_sum(direct_sum(U, U), A1)).one_dimensional_cusps


def test_unitary_boundary_profile():
    profile = boundary_profile(hermitian_hyperbolic())
    assert profile.witt_index == 1
    assert profile.zero_dim_only
    assert not profile.one_dimensional_cusps
