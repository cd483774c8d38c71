"""
Special Cycle Suite Nodes
Enumeration against brute-force oracles, relabeling and n(B) invariants of
the index sets, and Witt index verdicts
"""
import itertools
import math
import random
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Set, Tuple

import numpy as np

from arith import linalg
from cycles.enumeration import count_vectors, enumerate_reps, intersection_matrix, rep_number, short_vectors
from cycles.witt import local_isotropy, witt_index
from lattices.corpus import e8, positive_definite_corpus
from lattices.discriminant import DiscriminantGroup, discriminant_group
from lattices.lattice import Lattice
from lattices.signature import form_signature
from nodes.weil_suites import random_special_linear, random_symmetric
from utils.dataclasses import Node, SuiteState
from utils.logging_utils import get_logger
from weil.generators import n
from weil.representation import n_phase

logger = get_logger(__name__)

ORACLE_TRACE_BOUND = 6
ORACLE_MAX_RANK = 4
EQUIVARIANCE_INSTANCES = 200
SEED_VECTOR_BOUND = 2
WITT_FORMS = 50

Vector = Tuple[Fraction, ...]


# ===== ORACLES =====

def box_scan(lattice: Lattice, coset: int, bound: Fraction) -> Dict[Fraction, Set[Vector]]:
    """
    Every vector of the coset with Q ≤ bound, by scanning a coordinate box

    |x_i|² ≤ 2·bound·(G⁻¹)_ii bounds the box; values are exact integers
    after clearing the denominator of the coset representative.
    """
    disc = discriminant_group(lattice)
    shift = disc.lift(disc.elements[coset])
    inverse = linalg.inverse(lattice.gram)
    den = math.lcm(*(v.denominator for v in shift)) if shift else 1
    ranges = []
    for i, s in enumerate(shift):
        radius = math.sqrt(float(2 * bound * inverse[i][i])) + 1
        ranges.append(range(math.floor(-float(s) - radius), math.ceil(-float(s) + radius) + 1))
    gram = np.array([[int(v) for v in row] for row in lattice.gram], dtype=np.int64)
    grid = np.array(list(itertools.product(*ranges)), dtype=np.int64).reshape(-1, lattice.rank)
    scaled = grid * den + np.array([int(s * den) for s in shift], dtype=np.int64)
    values = np.einsum("ij,jk,ik->i", scaled, gram, scaled)
    limit = 2 * bound * den * den
    found: Dict[Fraction, Set[Vector]] = {}
    for k in np.nonzero(values <= limit)[0]:
        q = Fraction(int(values[k]), 2 * den * den)
        vector = tuple(s + int(c) for s, c in zip(shift, grid[k]))
        found.setdefault(q, set()).add(vector)
    return found


def e8_counts(max_q: int) -> List[int]:
    """
    r(E8, Q = k) for k ≤ max_q from the even-coordinate model
    Z⁸ ∪ (Z + ½)⁸ with even coordinate sum, by dynamic programming
    """
    # doubled coordinates y = 2x: Q = |y|²/8, and Σx is even iff Σy ≡ 0 mod 4
    limit = 8 * max_q
    counts = []
    for parity_offset in (0, 1):
        table = {(0, 0): 1}
        values = [2 * k + parity_offset for k in range(-2 * max_q - 1, 2 * max_q + 2)]
        for _ in range(8):
            nxt: Dict[Tuple[int, int], int] = {}
            for (norm, total), c in table.items():
                for y in values:
                    value = norm + y * y
                    if value <= limit:
                        key = (value, (total + y) % 4)
                        nxt[key] = nxt.get(key, 0) + c
            table = nxt
        counts.append(table)
    out = []
    for q in range(max_q + 1):
        total = sum(c for (norm, s), c in counts[0].items() if norm == 8 * q and s == 0)
        total += sum(c for (norm, s), c in counts[1].items() if norm == 8 * q and s == 0)
        out.append(total)
    return out


# ===== ENUMERATION ORACLE =====

class EnumerationOracleSuite(Node):
    """
    Node comparing enumerate_reps with a box scan on small definite lattices
    """

    def __init__(self, bound: int = ORACLE_TRACE_BOUND, e8_bound: int = 2):
        super().__init__("EnumerationOracleSuite")
        self.bound = Fraction(bound)
        self.e8_bound = e8_bound

    def collect_cases(self, state: SuiteState) -> Iterable[Tuple[str, Optional[Lattice], int]]:
        lattices = dict(positive_definite_corpus(state.seed))
        for name, lattice in state.corpus.items():
            if not lattice.is_unitary and form_signature(lattice.gram).negative == 0:
                lattices[name] = lattice
        for name, lattice in sorted(lattices.items()):
            if lattice.rank <= ORACLE_MAX_RANK:
                for coset in range(discriminant_group(lattice).order):
                    yield name, lattice, coset
        yield "E8", None, 0

    def describe(self, case) -> str:
        return f"{case[0]} coset {case[2]}"

    def check_case(self, state: SuiteState, case) -> Optional[str]:
        name, lattice, coset = case
        if lattice is None:
            return self._check_e8(state)
        oracle = box_scan(lattice, coset, self.bound)
        disc = discriminant_group(lattice)
        t = disc.q_values[coset]
        while t <= self.bound:
            listed = {x[0] for x in enumerate_reps(lattice, [[t]], (coset,), state.threads)}
            if listed != oracle.get(t, set()):
                return f"{self.describe(case)}: Q = {t} gives {len(listed)} vectors, the box scan {len(oracle.get(t, ()))}"
            t += 1
        return None

    def _check_e8(self, state: SuiteState) -> Optional[str]:
        expected = e8_counts(self.e8_bound)
        lattice = e8()
        for q in range(1, self.e8_bound + 1):
            got = count_vectors(lattice, 0, Fraction(q), state.threads)
            if got != expected[q]:
                return f"E8: {got} vectors at Q = {q}, the coordinate model gives {expected[q]}"
        logger.info(f"[{self.name}] ✅ E8 counts {expected[1:]}")
        return None


# ===== INVARIANTS OF INDEX SETS =====

def relabel(disc: DiscriminantGroup, mu: Tuple[int, ...], A) -> Tuple[int, ...]:
    """Index tuple of μA"""
    coords = [disc.elements[i] for i in mu]
    out = []
    for j in range(len(mu)):
        acc = disc.zero
        for i in range(len(mu)):
            acc = disc.add(acc, disc.scale(int(A[i][j]), coords[i]))
        out.append(disc.index(acc))
    return tuple(out)


def transform(T, A):
    """AᵗTA"""
    return linalg.matmul(linalg.transpose(A), linalg.matmul(T, A))


def _trace_with(T, B) -> Fraction:
    r = len(T)
    return sum((T[i][j] * B[j][i] for i in range(r) for j in range(r)), Fraction(0))


class EquivarianceSuite(Node):
    """
    Node for rep_number(L, AᵗTA, μA) = rep_number(L, T, μ) and the n(B)
    congruence tr(Q(x)B) ≡ tr(Q(μ)B) on enumerated index sets
    """

    def __init__(self, instances: int = EQUIVARIANCE_INSTANCES):
        super().__init__("EquivarianceSuite")
        self.instances = instances

    def collect_cases(self, state: SuiteState) -> Iterable[Tuple[int, str, Lattice]]:
        lattices = sorted(positive_definite_corpus(state.seed).items())
        for k in range(self.instances):
            name, lattice = lattices[k % len(lattices)]
            yield k, name, lattice

    def describe(self, case) -> str:
        return f"instance {case[0]} on {case[1]}"

    def _seed_tuple(self, rng: random.Random, lattice: Lattice, genus: int, threads: int):
        disc = discriminant_group(lattice)
        pools = [short_vectors(lattice, c, Fraction(SEED_VECTOR_BOUND), exact=False, threads=threads)
                 for c in range(disc.order)]
        cosets = [c for c in range(disc.order) if pools[c]]
        mu = tuple(rng.choice(cosets) for _ in range(genus))
        x = [rng.choice(pools[c]) for c in mu]
        return mu, x

    def check_case(self, state: SuiteState, case) -> Optional[str]:
        k, name, lattice = case
        rng = random.Random(f"{state.seed}:equivariance:{k}")
        genus = min(2, lattice.rank)
        mu, x = self._seed_tuple(rng, lattice, genus, state.threads)
        T = intersection_matrix(lattice, x)
        A = random_special_linear(rng, genus, steps=2)
        if rng.random() < 0.5:
            A = tuple(tuple(-v if i == 0 else v for v in row) for i, row in enumerate(A))
        disc = discriminant_group(lattice)
        before = rep_number(lattice, T, mu, state.threads)
        after = rep_number(lattice, transform(T, A), relabel(disc, mu, A), state.threads)
        if before != after:
            return f"{self.describe(case)}: {before} tuples for T, {after} after relabeling by {A}"
        B = random_symmetric(rng, genus)
        phase = n_phase(lattice, n(B), mu)
        for y in enumerate_reps(lattice, T, mu, state.threads):
            if intersection_matrix(lattice, y) != T:
                return f"{self.describe(case)}: enumerated tuple {y} has the wrong intersection matrix"
            if _trace_with(intersection_matrix(lattice, y), B) % 1 != phase:
                return f"{self.describe(case)}: tr(Q(x)B) ≢ tr(Q(μ)B) for B = {B}"
        return None


# ===== WITT INDEX =====

def _diag(entries) -> Tuple[Tuple[int, ...], ...]:
    r = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(r)) for i in range(r))


def _block_sum(a, b):
    r, s = len(a), len(b)
    rows = [list(row) + [0] * s for row in a] + [[0] * r + list(row) for row in b]
    return tuple(tuple(row) for row in rows)


def _nonzero(rng: random.Random, low: int, high: int) -> int:
    while True:
        v = rng.randint(low, high)
        if v:
            return v


def _disguise(rng: random.Random, form):
    P = random_special_linear(rng, len(form), steps=3)
    return tuple(tuple(int(v) for v in row) for row in transform(form, P))


def witt_forms(rng: random.Random, count: int) -> List[Tuple[str, tuple, int]]:
    """(family, form, guaranteed lower bound of the Witt index)"""
    hyperbolic = ((0, 1), (1, 0))
    forms = []
    for k in range(count):
        family = k % 3
        if family == 0:
            rank = rng.randint(1, 6)
            sign = rng.choice((-1, 1))
            form = _diag([sign * rng.randint(1, 6) for _ in range(rank)])
            forms.append(("definite", _disguise(rng, form), 0))
        elif family == 1:
            planes = rng.randint(1, 2)
            form = hyperbolic
            for _ in range(planes - 1):
                form = _block_sum(form, hyperbolic)
            extra = rng.randint(0, 6 - 2 * planes)
            if extra:
                form = _block_sum(form, _diag([_nonzero(rng, -5, 5) for _ in range(extra)]))
            forms.append(("hyperbolic", _disguise(rng, form), planes))
        else:
            rank = rng.randint(5, 6)
            entries = [_nonzero(rng, -6, 6) for _ in range(rank)]
            entries[0], entries[1] = abs(entries[0]), -abs(entries[1])
            forms.append(("meyer", _disguise(rng, _diag(entries)), 1))
    return forms


class WittSuite(Node):
    """
    Node checking Witt verdicts: exact witnesses, certified obstructions and
    Meyer's theorem on indefinite forms of rank ≥ 5
    """

    def __init__(self, count: int = WITT_FORMS):
        super().__init__("WittSuite")
        self.count = count

    def collect_cases(self, state: SuiteState) -> Iterable[Tuple[int, str, tuple, int]]:
        rng = random.Random(f"{state.seed}:witt")
        for k, (family, form, floor) in enumerate(witt_forms(rng, self.count)):
            yield k, family, form, floor

    def describe(self, case) -> str:
        return f"form {case[0]} ({case[1]})"

    def check_case(self, state: SuiteState, case) -> Optional[str]:
        _, family, form, floor = case
        report = witt_index(form)
        sig = report.signature
        label = self.describe(case)
        if report.isotropic_witness is not None:
            v = report.isotropic_witness
            if not any(v) or linalg.bilinear(v, form, v) != 0:
                return f"{label}: witness {v} is not isotropic"
        if report.witt_index > min(sig.positive, sig.negative):
            return f"{label}: index {report.witt_index} exceeds min{tuple(sig)}"
        if report.witt_index < floor:
            return f"{label}: index {report.witt_index} below the known {floor}"
        if family == "meyer" and report.isotropic_witness is None:
            return f"{label}: no witness found for an indefinite form of rank {report.rank}"
        if report.witt_index == 0 and not sig.is_definite():
            if report.obstruction is None or local_isotropy(form, report.obstruction):
                return f"{label}: anisotropic verdict without a local obstruction"
        return None
