"""
Modularity Suite Nodes
Theta transformation laws through slash_check, and Hurwitz class numbers
against an independent count of forms
"""
from fractions import Fraction
from math import isqrt
from typing import Dict, Iterable, Optional, Tuple

from sympy import divisors

from cycles.enumeration import theta_expansion
from eisenstein.hurwitz import HURWITZ_ZERO, class_number_relation, hurwitz, hurwitz_values
from lattices.corpus import a1, a2, d4, e8
from lattices.lattice import Lattice
from modform.expansion import QExpansion
from modform.slash import slash_check
from utils.dataclasses import Node, SuiteState
from utils.logging_utils import get_logger
from weil.generators import GroupWord, S, T

logger = get_logger(__name__)

# truncations whose tail estimate stays below 1e-6 at Im τ = ½
THETA_BOUNDS = {"A1": 12, "A2": 10, "D4": 10, "E8": 9}
HURWITZ_ORACLE_BOUND = 200
HURWITZ_SUPPORT_BOUND = 10 ** 4
CLASS_NUMBER_RELATIONS = 20


# ===== THETA MODULARITY =====

class ThetaModularitySuite(Node):
    """
    Node running slash_check for S and T on genus-1 theta series, plus a
    perturbed series that must fail
    """

    def __init__(self, bounds: Optional[Dict[str, int]] = None):
        super().__init__("ThetaModularitySuite")
        self.bounds = bounds or dict(THETA_BOUNDS)
        self._thetas: Dict[str, QExpansion] = {}

    def _lattices(self) -> Dict[str, Lattice]:
        known = {"A1": a1, "A2": a2, "D4": d4, "E8": e8}
        return {name: known[name]() for name in self.bounds}

    def collect_cases(self, state: SuiteState) -> Iterable[Tuple[str, Lattice, str]]:
        for name, lattice in self._lattices().items():
            for word in ("S", "T"):
                yield name, lattice, word
        first = next(iter(self.bounds))
        yield first, self._lattices()[first], "perturbed"

    def describe(self, case) -> str:
        return f"{case[0]} under {case[2]}"

    def theta(self, name: str, lattice: Lattice, threads: int) -> QExpansion:
        if name not in self._thetas:
            self._thetas[name] = theta_expansion(lattice, 1, Fraction(self.bounds[name]), threads)
        return self._thetas[name]

    def check_case(self, state: SuiteState, case) -> Optional[str]:
        name, lattice, word = case
        F = self.theta(name, lattice, state.threads)
        weight = Fraction(lattice.rank, 2)
        if word == "perturbed":
            # lowest nonconstant term, large enough at every sample point
            T0, mu0 = F.coefficients[1][0]
            broken = F.with_coefficient(T0, mu0, F.coefficient(T0, mu0) + 1)
            report = slash_check(broken, GroupWord((S(),)), weight, lattice, tol=state.tol,
                                 precision=state.precision, threads=state.threads)
            return f"{name}: a perturbed theta series passed" if report.passed else None
        w = GroupWord((S(),)) if word == "S" else GroupWord((T(1),))
        report = slash_check(F, w, weight, lattice, tol=state.tol, precision=state.precision, threads=state.threads)
        if not report.passed:
            return f"{self.describe(case)}: defect {report.max_defect:.3e} above {state.tol}"
        return None


# ===== HURWITZ CLASS NUMBERS =====

def hurwitz_by_forms(N: int) -> Fraction:
    """
    H(N) by running over b and the divisors of (b² + N)/4, counting every
    reduced form, primitive or not
    """
    if N == 0:
        return HURWITZ_ZERO
    total = Fraction(0)
    for b in range(isqrt(N // 3) + 1):
        if (b * b + N) % 4:
            continue
        ac = (b * b + N) // 4
        for a in divisors(ac):
            c = ac // a
            if a < max(b, 1) or a > c:
                continue
            if b == 0 and a == c:
                total += Fraction(1, 2)
            elif a == b == c:
                total += Fraction(1, 3)
            elif b == 0 or a == b or a == c:
                total += 1
            else:
                total += 2
    return total


class HurwitzSuite(Node):
    """
    Node for H(N) against the form count, its support, and the class number
    relation Σ_r H(4n − r²) = 2σ(n) − Σ_{d|n} min(d, n/d)
    """

    def __init__(self, oracle_bound: int = HURWITZ_ORACLE_BOUND, support_bound: int = HURWITZ_SUPPORT_BOUND,
                 relations: int = CLASS_NUMBER_RELATIONS):
        super().__init__("HurwitzSuite")
        self.oracle_bound = oracle_bound
        self.support_bound = support_bound
        self.relations = relations

    def collect_cases(self, state: SuiteState) -> Iterable[Tuple[str, int]]:
        for N in range(self.oracle_bound + 1):
            yield "oracle", N
        yield "support", self.support_bound
        for k in range(1, self.relations + 1):
            yield "relation", k

    def describe(self, case) -> str:
        return f"{case[0]} {case[1]}"

    def check_case(self, state: SuiteState, case) -> Optional[str]:
        kind, N = case
        if kind == "oracle":
            if hurwitz(N) != hurwitz_by_forms(N):
                return f"H({N}) = {hurwitz(N)}, the form count gives {hurwitz_by_forms(N)}"
        elif kind == "support":
            values = hurwitz_values(N, state.threads)
            bad = [k for k in range(1, N + 1) if (values[k] > 0) != (k % 4 in (0, 3)) or values[k] < 0]
            if bad:
                return f"H breaks its support at {bad[:5]}"
            stray = [k for k in range(1, N + 1) if k % 4 in (1, 2) and hurwitz_by_forms(k) != 0]
            if stray:
                return f"the form count finds forms of discriminant −k at k = {stray[:5]}"
        else:
            lhs, rhs = class_number_relation(N)
            if lhs != rhs:
                return f"n = {N}: Σ H(4n − r²) = {lhs}, divisor side {rhs}"
        return None
