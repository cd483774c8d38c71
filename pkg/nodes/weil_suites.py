"""
Weil Representation Suite Nodes
Exact relation checks on generator matrices, the Hermitian restriction to
SL₂(Z) and the soundness of the SL₂ factorizer
"""
import random
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from sympy.core.intfunc import igcdex

from arith.cyclotomic import ExactScalar, e
from lattices.corpus import hermitian_corpus, random_corpus, standard_corpus
from lattices.discriminant import discriminant_group
from lattices.lattice import Lattice, trace_form
from lattices.signature import signature
from utils.dataclasses import Node, SuiteState
from utils.errors import NoConsistentIndex
from utils.logging_utils import get_logger
from weil.generators import GroupWord, S, T, as_unitary, m, n
from weil.representation import check_weil_index, is_unitary_matrix, unitary_weil_index, weil_generator_matrix, weil_word_matrix
from weil.sl2 import factor_sl2, sl2_product

logger = get_logger(__name__)

MAX_ORDER = 25
GENUS_TWO_MAX_ORDER = 25
DENSE_GENUS_TWO_MAX_DIM = 16
RESTRICTION_WORDS = 12
MAX_WORD_LENGTH = 6
FACTORIZATIONS = 1000
FACTOR_ENTRY_BOUND = 10 ** 6

IntMatrix = Tuple[Tuple[int, ...], ...]


# ===== RANDOM GROUP DATA =====

def _identity(r: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(r)) for i in range(r))


def _int_matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))) for i in range(len(a)))


def random_symmetric(rng: random.Random, r: int, bound: int = 2) -> IntMatrix:
    rows = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            rows[i][j] = rows[j][i] = rng.randint(-bound, bound)
    return tuple(tuple(row) for row in rows)


def random_special_linear(rng: random.Random, r: int, steps: int = 4) -> IntMatrix:
    """Product of elementary matrices, det +1"""
    A = _identity(r)
    if r == 1:
        return A
    for _ in range(steps):
        i, j = rng.sample(range(r), 2)
        E = [list(row) for row in _identity(r)]
        E[i][j] = rng.choice((-1, 1))
        A = _int_matmul(A, tuple(tuple(row) for row in E))
    return A


def random_sl2(rng: random.Random, bound: int) -> IntMatrix:
    while True:
        a, c = rng.randint(-bound, bound), rng.randint(-bound, bound)
        x, y, g = igcdex(a, c)
        if abs(g) == 1 and a * x + c * y == 1:
            return ((a, -int(y)), (c, int(x)))


def random_sl2_word(rng: random.Random, length: int) -> GroupWord:
    letters = [S() if rng.random() < 0.5 else T(rng.choice((-2, -1, 1, 2))) for _ in range(length)]
    return GroupWord(tuple(letters))


def _is_eighth_root(c: Optional[ExactScalar]) -> bool:
    if c is None:
        return False
    power = ExactScalar.one()
    for _ in range(8):
        power = power * c
    return power == 1


# ===== RELATIONS =====

class WeilRelationSuite(Node):
    """
    Node for the exact relations of ρ_{L,r} on generators, genus 1 and 2
    """

    def __init__(self, random_lattices: int = 10, max_order: int = MAX_ORDER, genus_two_max_order: int = GENUS_TWO_MAX_ORDER):
        super().__init__("WeilRelationSuite")
        self.random_lattices = random_lattices
        self.max_order = max_order
        self.genus_two_max_order = genus_two_max_order

    def collect_cases(self, state: SuiteState) -> Iterable[Tuple[str, Lattice, int]]:
        lattices = dict(standard_corpus())
        lattices.update(random_corpus(state.seed, self.random_lattices))
        lattices.update({k: v for k, v in state.corpus.items() if not v.is_unitary})
        for name, lattice in sorted(lattices.items()):
            order = discriminant_group(lattice).order
            if order <= self.max_order:
                yield name, lattice, 1
            if order <= self.genus_two_max_order:
                yield name, lattice, 2

    def describe(self, case) -> str:
        return f"{case[0]} (genus {case[2]})"

    def check_case(self, state: SuiteState, case) -> Optional[str]:
        name, lattice, genus = case
        rng = random.Random(f"{state.seed}:{name}:{genus}")
        failures = self.relation_failures(lattice, genus, rng, state.threads)
        if failures:
            return f"{self.describe(case)}: " + "; ".join(failures)
        return None

    @staticmethod
    def relation_failures(lattice: Lattice, genus: int, rng: random.Random, threads: int = 1) -> List[str]:
        failures: List[str] = []

        def rho(g):
            return weil_generator_matrix(lattice, genus, g, threads)

        s = rho(S())
        dense = genus == 1 or s.dim <= DENSE_GENUS_TWO_MAX_DIM
        if dense:
            step = s.matmul(rho(n(_identity(genus))), threads)
            if step.power(3) != s.power(2):
                failures.append("(S·n(I))³ ≠ S²")
            if not _is_eighth_root(s.power(4).scalar_value()):
                failures.append("S⁴ is not an 8th root of unity times I")
        else:
            # S and n(I) split as tensor powers of genus 1, where the same relations are checked densely
            s1 = weil_generator_matrix(lattice, 1, S(), threads)
            n1 = weil_generator_matrix(lattice, 1, n(_identity(1)), threads)
            if not s.is_kronecker(s1, s1):
                failures.append("S ≠ S₁⊗S₁")
            if not rho(n(_identity(genus))).is_kronecker(n1, n1):
                failures.append("n(I) ≠ n(1)⊗n(1)")

        B1, B2 = random_symmetric(rng, genus), random_symmetric(rng, genus)
        B12 = tuple(tuple(x + y for x, y in zip(r1, r2)) for r1, r2 in zip(B1, B2))
        if rho(n(B1)).matmul(rho(n(B2)), threads) != rho(n(B12)):
            failures.append(f"n({B1})·n({B2}) ≠ n(B+B′)")

        A1, A2 = random_special_linear(rng, genus), random_special_linear(rng, genus)
        if rho(m(A1)).matmul(rho(m(A2)), threads) != rho(m(_int_matmul(A1, A2))):
            failures.append(f"m({A1})·m({A2}) ≠ m(AA′)")

        # two det −1 letters pick up √(−1)^(−sig) twice
        flip = tuple(tuple(-x if i == 0 else x for x in row) for i, row in enumerate(_identity(genus)))
        twisted = rho(m(flip)).matmul(rho(m(flip)), threads)
        sign = e(Fraction(signature(lattice).difference, 2))
        if twisted != rho(m(_identity(genus))).scale(sign):
            failures.append("m(A)m(A′) with det −1 breaks the branch convention")

        for g in ((S(),) if dense else ()) + (n(B1), m(A1)):
            if not is_unitary_matrix(rho(g)):
                failures.append(f"ρ({g!r}) is not unitary")
        return failures


# ===== HERMITIAN RESTRICTION =====

class UnitaryRestrictionSuite(Node):
    """
    Node comparing the unitary ρ_{L,1} on SL₂(Z) words with the orthogonal ρ
    of the trace form, and exercising the Weil index negative control
    """

    def __init__(self, words: int = RESTRICTION_WORDS, max_length: int = MAX_WORD_LENGTH):
        super().__init__("UnitaryRestrictionSuite")
        self.words = words
        self.max_length = max_length

    def collect_cases(self, state: SuiteState) -> Iterable[Tuple[str, Lattice]]:
        lattices = dict(hermitian_corpus())
        lattices.update({k: v for k, v in state.corpus.items() if v.is_unitary})
        return sorted(lattices.items())

    def describe(self, case) -> str:
        return case[0]

    def _words(self, rng: random.Random) -> List[GroupWord]:
        fixed = [GroupWord(()), GroupWord((S(),)), GroupWord((T(1),)), GroupWord((S(), T(1)) * 3)]
        fixed += [random_sl2_word(rng, rng.randint(1, self.max_length)) for _ in range(self.words)]
        return fixed

    def check_case(self, state: SuiteState, case) -> Optional[str]:
        name, lattice = case
        gamma = unitary_weil_index(lattice)
        try:
            check_weil_index(lattice, gamma * e(Fraction(1, 8)))
            return f"{name}: a perturbed Weil index was accepted"
        except NoConsistentIndex:
            pass
        rng = random.Random(f"{state.seed}:{name}")
        orthogonal = trace_form(lattice)
        for w in self._words(rng):
            unitary = weil_word_matrix(lattice, as_unitary(w, lattice.field_disc), state.threads)
            if unitary != weil_word_matrix(orthogonal, w, state.threads):
                return f"{name}: unitary and trace-form matrices differ on {w!r}"
        logger.debug(f"[{self.name}] {name}: γ = {gamma.render()}")
        return None


# ===== FACTORIZATION =====

class FactorizationSuite(Node):
    """
    Node checking that factor_sl2 multiplies back to its input
    """

    def __init__(self, count: int = FACTORIZATIONS, bound: int = FACTOR_ENTRY_BOUND):
        super().__init__("FactorizationSuite")
        self.count = count
        self.bound = bound

    def collect_cases(self, state: SuiteState) -> Iterable[IntMatrix]:
        rng = random.Random(f"{state.seed}:sl2")
        fixed = [((1, 0), (0, 1)), ((1, 1), (0, 1)), ((0, -1), (1, 0)), ((-1, 0), (0, -1))]
        return fixed + [random_sl2(rng, self.bound) for _ in range(self.count)]

    def check_case(self, state: SuiteState, case: Sequence[Sequence[int]]) -> Optional[str]:
        w = factor_sl2(case)
        if sl2_product(w) != tuple(tuple(row) for row in case):
            return f"{case}: word {w!r} multiplies to {sl2_product(w)}"
        return None
