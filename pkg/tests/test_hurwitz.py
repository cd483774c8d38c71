from fractions import Fraction

import pytest

from eisenstein.hurwitz import (
    class_number,
    class_number_relation,
    hurwitz,
    hurwitz_values,
    reduced_forms,
    zagier_coeffs,
)
from utils.errors import BadDiscriminant


@pytest.mark.parametrize(
    "N, expected",
    [
        (0, Fraction(-1, 12)),
        (1, 0),
        (2, 0),
        (3, Fraction(1, 3)),
        (4, Fraction(1, 2)),
        (7, 1),
        (8, 1),
        (11, 1),
        (12, Fraction(4, 3)),
        (15, 2),
        (16, Fraction(3, 2)),
        (23, 3),
    ],
)
def test_hurwitz_values(N, expected):
    assert hurwitz(N) == expected


def test_reduced_forms():
    assert reduced_forms(-3) == [(1, 1, 1)]
    assert reduced_forms(-4) == [(1, 0, 1)]
    assert reduced_forms(-23) == [(1, 1, 6), (2, -1, 3), (2, 1, 3)]
    assert reduced_forms(-12) == [(1, 0, 3), (2, 2, 2)]


def test_class_number_skips_imprimitive_forms():
    assert class_number(-12) == 1
    assert hurwitz(12) == class_number(-12) + class_number(-3)


@pytest.mark.parametrize("D", [-5, 4, 0, -2])
def test_bad_discriminants(D):
    with pytest.raises(BadDiscriminant):
        reduced_forms(D)


def test_negative_arguments():
    with pytest.raises(BadDiscriminant):
        hurwitz(-1)
    with pytest.raises(BadDiscriminant):
        zagier_coeffs(-1)


@pytest.mark.parametrize("n", range(1, 13))
def test_class_number_relation(n):
    lhs, rhs = class_number_relation(n)
    assert lhs == rhs


def test_threads_do_not_change_values():
    assert hurwitz_values(60, threads=4) == hurwitz_values(60)


def test_zagier_series():
    series = zagier_coeffs(4)
    assert series.weight == Fraction(3, 2)
    assert series.mock
    assert [c for _, c in series] == [Fraction(-1, 12), Fraction(1, 3), Fraction(1, 2)]
    assert series.truncation == 4
