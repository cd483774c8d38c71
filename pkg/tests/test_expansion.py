from fractions import Fraction

import pytest

from cycles.enumeration import theta_expansion
from modform.expansion import build_expansion, scalar_expansion, trace
from modform.serialization import deserialize, load_expansion, save_expansion, serialize
from utils import constants
from utils.dataclasses import Case
from utils.errors import FormatError


def _scalar(*pairs):
    return scalar_expansion({Fraction(n): Fraction(c) for n, c in pairs}, Fraction(1, 2), Fraction(4))


def _document(records, count=None, genus=1):
    header = [
        constants.EXPANSION_MAGIC,
        f"genus {genus}",
        "weight 1/2",
        "case orthogonal",
        "field_disc -",
        "lattice -",
        "truncation 4",
        "mock 0",
        "exponent_scale 1",
        "components 2",
        f"records {len(records) if count is None else count}",
    ]
    return "\n".join(header + list(records)) + "\n"


# ===== EXPANSIONS =====

def test_records_are_canonical():
    F = _scalar((4, 2), (0, 1), (1, 0), (1, 2))
    assert [k[0][0][0] for k, _ in F] == [0, 1, 4]
    assert F.coefficient(((Fraction(1),),), (0,)) == 2
    assert F.coefficient(((Fraction(2),),), (0,)) == 0


def test_with_coefficient_and_truncation():
    F = _scalar((0, 1), (1, 2), (4, 2))
    G = F.with_coefficient(((Fraction(1),),), (0,), 0)
    assert len(G) == 2
    H = F.truncated(Fraction(2))
    assert H.truncation == 2
    assert len(H) == 2
    assert len(F.exponents()) == 3


def test_build_expansion_validation():
    T = ((Fraction(1),),)
    kwargs = dict(genus=1, weight=1, case=Case.ORTHOGONAL, truncation=2, components=2)
    with pytest.raises(FormatError):
        build_expansion({(T, (2,)): 1}, **kwargs)
    with pytest.raises(FormatError):
        build_expansion({(((Fraction(3),),), (0,)): 1}, **kwargs)
    with pytest.raises(FormatError):
        build_expansion({(((Fraction(-1),),), (0,)): 1}, **kwargs)
    with pytest.raises(FormatError):
        build_expansion({(((1, 0), (0, 1)), (0, 0)): 1}, **kwargs)


def test_trace_of_unitary_exponent(gaussian_lattice):
    K = gaussian_lattice.field
    assert trace(((K.element(Fraction(1, 2), 0),),)) == Fraction(1, 2)


# ===== DOCUMENTS =====

def test_theta_document(E8):
    theta = theta_expansion(E8, 1, 2)
    text = serialize(theta)
    assert text.splitlines()[-1] == "2 ; 0 ; 2160"
    assert deserialize(text) == theta


def test_unitary_document(gaussian_lattice):
    theta = theta_expansion(gaussian_lattice, 1, Fraction(1, 2))
    text = serialize(theta)
    assert "case unitary" in text
    assert "field_disc -1" in text
    assert deserialize(text) == theta


def test_save_and_load(tmp_path, A1):
    theta = theta_expansion(A1, 1, 3)
    path = str(tmp_path / "out" / "a1.exp")
    save_expansion(theta, path)
    assert load_expansion(path) == theta


def test_missing_document(tmp_path):
    with pytest.raises(FormatError):
        load_expansion(str(tmp_path / "absent.exp"))


@pytest.mark.parametrize(
    "text",
    [
        "genus 1\n",
        _document(["0 ; 0 ; 1"], count=2),
        _document(["1 ; 0 ; 2", "0 ; 0 ; 1"]),
        _document(["0 ; 0 ; 0"]),
        _document(["0 ; 0 ; 1", "0 ; 0 ; 1"]),
        _document(["1:0 ; 0 ; 1"]),
        _document(["0 ; 0 1 ; 1"]),
        _document(["0 ; 0"]),
        _document(["x ; 0 ; 1"]),
        _document(["5 ; 0 ; 1"]),
    ],
)
def test_malformed_documents(text):
    with pytest.raises(FormatError):
        deserialize(text)


def test_wellformed_document():
    F = deserialize(_document(["0 ; 0 ; 1", "1/4 ; 1 ; 2"]))
    assert F.components == 2
    assert F.coefficient(((Fraction(1, 4),),), (1,)) == 2
