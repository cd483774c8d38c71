from fractions import Fraction

from cycles.geometry import boundary_profile
from cycles.witt import witt_index
from lattices.discriminant import discriminant_group
from lattices.signature import signature
from tools.renderers import (
    render_discriminant,
    render_matrix,
    render_milgram,
    render_suites,
    render_values,
    render_vectors,
    render_witt,
)
from utils.dataclasses import SuiteResult, SuiteState
from weil.generators import T
from weil.representation import gauss_sum, milgram_value, weil_generator_matrix


def test_discriminant_artifact(A1):
    text = render_discriminant(A1, discriminant_group(A1), signature(A1))
    lines = text.splitlines()
    assert lines[:6] == ["lattice A1", "case orthogonal", "rank 1", "signature 1 0", "order 2", "divisors 2"]
    assert lines[6] == "0 (0) q=0"
    assert lines[7].endswith("q=1/4")


def test_unimodular_divisors(E8):
    text = render_discriminant(E8, discriminant_group(E8), signature(E8))
    assert "divisors -" in text.splitlines()


def test_matrix_artifact(A1):
    text = render_matrix(weil_generator_matrix(A1, 1, T(1)))
    lines = text.splitlines()
    assert lines[0] == "# dim 2 nonzero 2"
    assert lines[1] == "0 0 (1:1; 1; 0)"
    assert lines[2].startswith("1 1 ")
    assert text.endswith("\n")


def test_milgram_artifact(A2):
    text = render_milgram(gauss_sum(A2), milgram_value(A2))
    assert text.splitlines()[-1] == "verdict PASS"


def test_vectors_and_values():
    assert render_vectors([((Fraction(1), Fraction(-1, 2)),)]) == "count 1\n(1,-1/2)\n"
    assert render_vectors([]) == "count 0\n"
    assert render_values({3: Fraction(1, 3), 0: Fraction(-1, 12)}, "H") == "H(0) -1/12\nH(3) 1/3\n"


def test_witt_artifact(isotropic_ternary, E8):
    text = render_witt(witt_index(isotropic_ternary), boundary_profile(isotropic_ternary))
    assert "witness (1,1,0)" in text
    assert "obstruction -" in text
    assert "zero_dimensional_cusps 1" in text
    assert "obstruction oo" in render_witt(witt_index(E8))


def test_suite_artifact():
    state = SuiteState()
    state.add_result(SuiteResult("Milgram", 3))
    state.add_result(SuiteResult("Witt", 2, ["diag(2,-2,-2): index 0"]))
    assert render_suites(state) == (
        "Milgram checked 3 PASS\n"
        "Witt checked 2 FAIL\n"
        "  diag(2,-2,-2): index 0\n"
        "verdict FAIL\n"
    )
