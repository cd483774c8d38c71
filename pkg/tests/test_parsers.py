from fractions import Fraction

import pytest

from arith.quadratic import QuadraticField
from lattices.corpus import eisenstein_integers
from parsers.lattice_parser import lattice_document, load_lattice, save_lattice
from parsers.txt_parser import parse_index_text, parse_matrix_text
from parsers.word_parser import load_word
from utils.dataclasses import Case, GeneratorKind
from utils.errors import NotEven, NotUnimodular, ParseError, SizeMismatch
from weil.generators import m, n

A2_TXT = """\
# A2 root lattice
label A2
2 1
1 2
"""

A2_YAML = """\
label: A2
gram:
  - [2, 1]
  - [1, 2]
"""

A2_JSON = '{"label": "A2", "gram": [["2", "1"], ["1", "2"]]}'

GAUSSIAN_TXT = """\
field_disc -1
1:0
"""

WORD_TXT = """\
genus 2
S
n 1 0 ; 0 1
m 0 1 ; 1 0
"""

WORD_YAML = """\
- kind: S
- kind: n
  payload: [[1]]
"""


# ===== LATTICES =====

@pytest.mark.parametrize("name, content", [("a2.txt", A2_TXT), ("a2.yaml", A2_YAML), ("a2.json", A2_JSON)])
def test_lattice_formats_agree(write_text, A2, name, content):
    lattice = load_lattice(write_text(name, content))
    assert lattice.gram == A2.gram
    assert lattice.label == "A2"


def test_lattice_from_text_and_mapping(A2):
    assert load_lattice(A2_YAML).gram == A2.gram
    assert load_lattice({"gram": [[2, 1], [1, 2]]}).gram == A2.gram


def test_unitary_text_lattice(write_text):
    lattice = load_lattice(write_text("zi.txt", GAUSSIAN_TXT))
    assert lattice.case is Case.UNITARY
    assert lattice.gram == ((2, 0), (0, 2))


def test_unitary_gram_must_match_trace_form():
    doc = {"case": "unitary", "field_disc": -1, "gram_h": [[[1, 0]]], "gram": [[2, 0], [0, 4]]}
    with pytest.raises(ParseError):
        load_lattice(doc)


@pytest.mark.parametrize(
    "doc",
    [
        {"gram": [["x"]]},
        {"gram": [[2]], "field_disc": -1},
        {"case": "unitary", "gram_h": [[[1, 0]]]},
        {"case": "unitary", "field_disc": -1, "gram_h": [[1]]},
        [[2]],
    ],
)
def test_malformed_lattice_documents(doc):
    with pytest.raises(ParseError):
        load_lattice(doc)


def test_lattice_math_errors_pass_through():
    with pytest.raises(NotEven):
        load_lattice({"gram": [[1]]})


def test_unsupported_and_missing_files(write_text):
    with pytest.raises(ParseError):
        load_lattice(write_text("a2.csv", "2,1\n1,2\n"))
    with pytest.raises(ParseError):
        load_lattice(write_text("bad.json", "{"))


@pytest.mark.parametrize("suffix", ["yaml", "json", "txt"])
def test_saved_lattices_reload(tmp_path, suffix):
    lattice = eisenstein_integers()
    path = str(tmp_path / f"eis.{suffix}")
    save_lattice(lattice, path)
    again = load_lattice(path)
    assert again.gram == lattice.gram
    assert again.gram_h == lattice.gram_h


def test_lattice_document_strings(A1):
    assert lattice_document(A1)["gram"] == [["2"]]


# ===== WORDS =====

def test_text_word(write_text):
    w = load_word(write_text("w.txt", WORD_TXT))
    assert w.genus == 2
    assert [g.kind for g in w.letters] == [GeneratorKind.S, GeneratorKind.N, GeneratorKind.M]
    assert w.letters[2] == m([[0, 1], [1, 0]])


def test_yaml_word_and_genus_override(write_text):
    path = write_text("w.yaml", WORD_YAML)
    w = load_word(path)
    assert w.letters[1] == n([[1]])
    with pytest.raises(SizeMismatch):
        load_word(path, genus=2)


@pytest.mark.parametrize(
    "doc, error",
    [
        ([{"kind": "S", "payload": [[1]]}], ParseError),
        ([{"kind": "n"}], ParseError),
        ([{"kind": "n", "payload": [["1/2"]]}], ParseError),
        ([{"kind": "m", "payload": [[2]]}], NotUnimodular),
        ({"letters": [{"kind": "S"}], "case": "unitary"}, ParseError),
        ([{"kind": "n", "payload": [[[1, 0]]]}], ParseError),
    ],
)
def test_malformed_words(doc, error):
    with pytest.raises(error):
        load_word(doc)


def test_unitary_word():
    w = load_word({"case": "unitary", "field_disc": -1, "letters": [{"kind": "m", "payload": [[[0, 1]]]}]})
    assert w.case is Case.UNITARY
    assert w.letters[0].payload[0][0] == QuadraticField(-1).omega


# ===== INLINE MATRICES =====

def test_parse_matrix_text():
    assert parse_matrix_text("1 1/2; 1/2, 1") == [[1, Fraction(1, 2)], [Fraction(1, 2), 1]]
    assert parse_matrix_text("1:1") == [[(Fraction(1), Fraction(1))]]
    for bad in ("1 ;", "a", ""):
        with pytest.raises(ParseError):
            parse_matrix_text(bad)


def test_parse_index_text():
    assert parse_index_text("0,1") == (0, 1)
    assert parse_index_text("2") == (2,)
    with pytest.raises(ParseError):
        parse_index_text("x")
