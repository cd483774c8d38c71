import random
from fractions import Fraction

import pytest

from cycles.enumeration import short_vectors
from driver import default_suites, run_verification, select_suites
from eisenstein.hurwitz import hurwitz
from lattices.discriminant import discriminant_group
from lattices.lattice import rescale
from nodes.cycle_suites import EnumerationOracleSuite, EquivarianceSuite, WittSuite, box_scan, e8_counts
from nodes.lattice_suites import MilgramSuite
from nodes.modular_suites import HurwitzSuite, ThetaModularitySuite, hurwitz_by_forms
from nodes.weil_suites import DENSE_GENUS_TWO_MAX_DIM, FactorizationSuite, UnitaryRestrictionSuite, WeilRelationSuite
from utils.dataclasses import Node, SuiteState
from utils.errors import NotPosDef, UsageError


class _Counter(Node):
    """Two passing cases, one failing, one raising"""

    def __init__(self):
        super().__init__("Counter")

    def collect_cases(self, state):
        return [0, 1, 2, 3]

    def check_case(self, state, case):
        if case == 2:
            return "case 2 failed"
        if case == 3:
            raise NotPosDef("T is not positive semi-definite")
        return None


def _run(suite: Node) -> SuiteState:
    return suite.execute(SuiteState(threads=2))


# ===== ORACLES =====

def test_box_scan_matches_enumeration(A2):
    for coset in range(discriminant_group(A2).order):
        found = box_scan(A2, coset, Fraction(3))
        listed = short_vectors(A2, coset, Fraction(3), exact=False)
        assert set(listed) == set().union(*found.values())


def test_e8_coordinate_model():
    assert e8_counts(2) == [1, 240, 2160]


def test_hurwitz_form_count_agrees():
    for N in range(80):
        assert hurwitz_by_forms(N) == hurwitz(N)


def test_form_count_vanishes_exactly_off_the_support():
    for N in range(1, 400):
        assert (hurwitz_by_forms(N) > 0) == (N % 4 in (0, 3))


def test_support_case_reads_the_computed_table(monkeypatch):
    def broken(bound, threads=1):
        return {k: Fraction(1) if k == 5 else hurwitz(k) for k in range(bound + 1)}

    monkeypatch.setattr("nodes.modular_suites.hurwitz_values", broken)
    suite = HurwitzSuite(oracle_bound=0, support_bound=20, relations=0)
    result = _run(suite).get_result(suite.name)
    assert not result.passed
    assert "support at [5]" in result.failures[0]


# ===== SUITES =====

def test_node_records_failures_and_errors():
    state = _run(_Counter())
    result = state.get_result("Counter")
    assert result.checked == 4
    assert result.failures[0] == "case 2 failed"
    assert result.failures[1] == "3: NotPosDef: T is not positive semi-definite"
    assert not state.all_passed()


@pytest.mark.parametrize(
    "suite",
    [
        MilgramSuite(random_lattices=2),
        FactorizationSuite(count=25),
        WeilRelationSuite(random_lattices=1, max_order=4, genus_two_max_order=2),
        UnitaryRestrictionSuite(words=2, max_length=3),
        HurwitzSuite(oracle_bound=40, support_bound=200, relations=6),
        WittSuite(count=8),
        EquivarianceSuite(instances=6),
        EnumerationOracleSuite(bound=3, e8_bound=1),
    ],
    ids=lambda s: s.name,
)
def test_small_suites_pass(suite):
    result = _run(suite).get_result(suite.name)
    assert result.checked > 0
    assert result.passed, result.failures


def test_genus_two_relations_past_the_dense_range(A1):
    lattice = rescale(A1, 3)
    assert discriminant_group(lattice).order ** 2 > DENSE_GENUS_TWO_MAX_DIM
    assert WeilRelationSuite.relation_failures(lattice, 2, random.Random(5)) == []


def test_genus_two_cases_reach_order_25():
    suite = WeilRelationSuite(random_lattices=0)
    genus_two = [(case[0], discriminant_group(case[1]).order) for case in suite.collect_cases(SuiteState()) if case[2] == 2]
    assert {"A1", "A2", "D4", "E8", "U"} <= {name for name, _ in genus_two}
    assert all(order <= 25 for _, order in genus_two)


@pytest.mark.slow
def test_theta_suite_catches_its_perturbation():
    suite = ThetaModularitySuite(bounds={"A1": 12})
    result = _run(suite).get_result(suite.name)
    assert result.checked == 3
    assert result.passed, result.failures


# ===== DRIVER =====

def test_default_suites_have_unique_names():
    names = [s.name for s in default_suites()]
    assert len(names) == len(set(names)) == 9


def test_select_suites():
    assert [s.name for s in select_suites(["HurwitzSuite", "MilgramSuite"])] == ["HurwitzSuite", "MilgramSuite"]
    with pytest.raises(UsageError):
        select_suites(["NoSuchSuite"])


def test_run_verification_updates():
    runner = run_verification(SuiteState(), ["FactorizationSuite"])
    updates = []
    while True:
        try:
            updates.append(next(runner))
        except StopIteration as finished:
            state = finished.value
            break
    assert [u["status"] for u in updates] == ["started", "processing", "processing", "complete"]
    assert [u["progress"] for u in updates] == [0, 0, 100, 100]
    assert state.get_result("FactorizationSuite").passed
