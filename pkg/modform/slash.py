"""
Numerical and exact checks of the transformation law

    F(w·τ) = j(w, τ) ρ(w) F(τ),   w·τ = (Aτ + B)(Cτ + D)⁻¹

j is det(Cτ + D)^k for integral k. For half-integral k it is φ(τ)^{2k},
φ being the product of the letter lifts along the word: √τ (principal) for
S in genus 1, 1 for n(B), √det A (√−1 = i) for m(A).
"""
import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from arith import linalg
from arith.intervals import ComplexInterval, sqrt_principal, working_precision
from arith.quadratic import KElement, gaussian
from lattices.discriminant import discriminant_group
from lattices.lattice import Lattice
from modform.evaluate import Point, as_point, embed_k, evaluate
from modform.expansion import QExpansion
from utils import constants
from utils.dataclasses import Case, GeneratorKind
from utils.decorators import escalate_precision
from utils.errors import BranchAmbiguity, ParseError, SizeMismatch, UnsupportedField, WrongCase
from utils.logging_utils import get_logger
from weil.generators import Generator, GroupWord, blocks, generator_group_matrix, payload_matrix, validate_word, word_matrix
from weil.representation import n_phase, weil_word_matrix

logger = get_logger(__name__)

# Im τ and Im(−1/τ) both stay above 16/17
DEFAULT_SAMPLES = (gaussian(0, 1), gaussian(Fraction(1, 4), 1), gaussian(Fraction(-1, 4), 1))


@dataclass(frozen=True)
class SampleDefect:
    tau: Point
    defect: float
    width: float
    tail: float


@dataclass(frozen=True)
class SlashReport:
    word: str
    weight: Fraction
    tol: float
    samples: Tuple[SampleDefect, ...] = ()
    precision: int = constants.DEFAULT_PRECISION
    exact: bool = False
    failure: str = ""

    @property
    def max_defect(self) -> float:
        if self.failure:
            return float("inf")
        return max((s.defect for s in self.samples), default=0.0)

    @property
    def passed(self) -> bool:
        return self.max_defect <= self.tol

    def needs_more_precision(self) -> bool:
        """Failing only because the intervals are too wide"""
        if self.passed or self.exact:
            return False
        return all(s.defect - s.width <= self.tol for s in self.samples)

    def __repr__(self):
        verdict = "PASS" if self.passed else "FAIL"
        return f"SlashReport({self.word}, k={self.weight}, defect={self.max_defect:.3g}, {verdict})"


# ===== GROUP ACTION ON POINTS =====

def _to_gaussian(x: Any) -> KElement:
    if isinstance(x, KElement):
        if x.d == -1:
            return x
        if x.is_rational():
            return gaussian(x.a)
        raise UnsupportedField(f"entry {x} of the word is not in Q(i)")
    return gaussian(Fraction(x))


def _gaussian_matrix(M) -> Tuple[Tuple[KElement, ...], ...]:
    return tuple(tuple(_to_gaussian(x) for x in row) for row in M)


def _mobius(M, tau: Point) -> Point:
    A, B, C, D = blocks(_gaussian_matrix(M))
    numerator = linalg.mat_add(linalg.matmul(A, tau), B)
    denominator = linalg.mat_add(linalg.matmul(C, tau), D)
    return linalg.matmul(numerator, linalg.inverse(denominator))


def act(w: GroupWord, tau: Any) -> Point:
    """w·τ, exactly over Q(i)"""
    return _mobius(word_matrix(w), as_point(tau))


def _cocycle_det(M, tau: Point) -> KElement:
    _, _, C, D = blocks(_gaussian_matrix(M))
    return linalg.determinant(linalg.mat_add(linalg.matmul(C, tau), D))


# ===== METAPLECTIC FACTORS =====

def _sqrt_det(tau: Point) -> ComplexInterval:
    """√det τ on the Siegel half-space, continued from τ = iY"""
    root = sqrt_principal(embed_k(linalg.determinant(tau)))
    if len(tau) == 1:
        return root
    X = np.array([[float(z.a) for z in row] for row in tau])
    Y = np.array([[float(z.b) for z in row] for row in tau])
    values, vectors = np.linalg.eigh(Y)
    half_inverse = vectors @ np.diag(values ** -0.5) @ vectors.T
    lambdas = np.linalg.eigvalsh(half_inverse @ X @ half_inverse)
    reference = cmath.sqrt(float(np.prod(values)))
    for lam in lambdas:
        reference *= cmath.sqrt(complex(lam, 1.0))
    mid = root.midpoint()
    if abs(reference + mid) < abs(reference - mid):
        root = -root
    return root


def _letter_lift(g: Generator, tau: Point, case: Case, field_disc: Optional[int]) -> ComplexInterval:
    if g.kind is GeneratorKind.N:
        return ComplexInterval(1, 0)
    if g.kind is GeneratorKind.M:
        det = linalg.determinant(payload_matrix(g, case, field_disc))
        return ComplexInterval(1, 0) if det == 1 else ComplexInterval(0, 1)
    return _sqrt_det(tau)


def automorphy_factor(w: GroupWord, tau: Point, weight: Fraction) -> ComplexInterval:
    """j(w, τ) under the current interval precision"""
    weight = Fraction(weight)
    if weight.denominator == 1:
        return embed_k(_cocycle_det(word_matrix(w), tau)) ** int(weight)
    if (2 * weight).denominator != 1:
        raise ParseError(f"weight {weight} is neither integral nor half-integral")
    if w.case is Case.UNITARY:
        raise BranchAmbiguity("half-integral weights need an orthogonal word")
    if w.genus > 1 and len(w) > 1:
        raise BranchAmbiguity("half-integral weight in genus > 1 is checked on single generators only")
    phi = ComplexInterval(1, 0)
    point = tau
    # j(g₁g₂, τ) = j(g₁, g₂τ)·j(g₂, τ)
    for g in reversed(w.letters):
        phi = phi * _letter_lift(g, point, w.case, w.field_disc)
        point = _mobius(generator_group_matrix(g, w.genus, w.case, w.field_disc), point)
    return phi ** int(2 * weight)


# ===== EXACT T-CHECK =====

def _trace_product(T, B) -> Fraction:
    total = None
    n = len(T)
    for i in range(n):
        for j in range(n):
            term = T[i][j] * B[j][i]
            total = term if total is None else total + term
    if isinstance(total, KElement):
        if not total.is_rational():
            raise WrongCase("tr(TB) is not rational")
        return total.a
    return Fraction(total)


def coefficient_t_check(F: QExpansion, lattice: Lattice, B: Sequence[Sequence[Any]]) -> bool:
    """c(T, μ)·e(s·tr(TB)) = ρ(n(B))-phase(μ)·c(T, μ) for every stored record"""
    g = Generator(GeneratorKind.N, tuple(tuple(row) for row in B))
    B = payload_matrix(g, lattice.case, lattice.field_disc)
    for (T, mu), c in F.coefficients:
        lhs = (F.exponent_scale * _trace_product(T, B)) % 1
        rhs = n_phase(lattice, g, mu)
        if lhs != rhs:
            logger.warning(f"[SlashCheck] ❌ n(B) phase mismatch at T={T}, μ={mu}: {lhs} vs {rhs}")
            return False
    return True


# ===== SLASH CHECK =====

def _check_compatible(F: QExpansion, w: GroupWord, lattice: Lattice) -> None:
    if F.case is not lattice.case or w.case is not lattice.case:
        raise WrongCase("expansion, word and lattice must share a case")
    if F.genus != w.genus:
        raise SizeMismatch(f"word of genus {w.genus} on an expansion of genus {F.genus}")
    if F.components != discriminant_group(lattice).order:
        raise SizeMismatch("expansion components do not match L*/L")
    if F.lattice_hash and F.lattice_hash != lattice.fingerprint():
        raise WrongCase(f"expansion was built on another lattice than {lattice!r}")


def _default_samples(genus: int) -> List[Point]:
    return [
        tuple(tuple(z if i == j else gaussian(0) for j in range(genus)) for i in range(genus))
        for z in DEFAULT_SAMPLES
    ]


def _sample_defect(
    F: QExpansion, w: GroupWord, weight: Fraction, lattice: Lattice, matrix, tau: Point, precision: int
) -> SampleDefect:
    moved = _mobius(word_matrix(w), tau)
    left = evaluate(F, moved, precision, lattice)
    right = evaluate(F, tau, precision, lattice)
    with working_precision(precision):
        j = automorphy_factor(w, tau, weight)
        image = matrix.embed_apply(right.values, precision)
        row_sums = matrix.abs_row_sums(precision)
        j_abs = j.abs_upper()
        defect, width = 0.0, 0.0
        for nu, value in enumerate(left.values):
            diff = value - j * image[nu]
            bound = diff.abs_upper() + left.tail_bound + j_abs * row_sums[nu] * right.tail_bound
            defect = max(defect, bound)
            width = max(width, diff.width())
    return SampleDefect(tau, defect, width, left.tail_bound + right.tail_bound)


@escalate_precision()
def slash_check(
    F: QExpansion,
    w: GroupWord,
    weight: Fraction,
    lattice: Lattice,
    samples: Optional[Sequence[Any]] = None,
    tol: float = constants.DEFAULT_TOLERANCE,
    *,
    precision: int = constants.DEFAULT_PRECISION,
    threads: int = 1,
) -> SlashReport:
    """
    Compare F(w·τ) with j(w, τ) ρ(w) F(τ) at sample points

    Words made of n(B) letters only are checked exactly on coefficients.
    """
    validate_word(w)
    _check_compatible(F, w, lattice)
    weight = Fraction(weight)
    if all(g.kind is GeneratorKind.N for g in w.letters):
        for g in w.letters:
            if not coefficient_t_check(F, lattice, g.payload):
                return SlashReport(repr(w), weight, tol, precision=precision, exact=True,
                                   failure=f"coefficients break the n({[list(r) for r in g.payload]}) law")
        return SlashReport(repr(w), weight, tol, precision=precision, exact=True)
    points = [as_point(t) for t in samples] if samples is not None else _default_samples(w.genus)
    matrix = weil_word_matrix(lattice, w, threads)
    results = tuple(_sample_defect(F, w, weight, lattice, matrix, tau, precision) for tau in points)
    report = SlashReport(repr(w), weight, tol, results, precision)
    glyph = "✅" if report.passed else "❌"
    logger.info(f"[SlashCheck] {glyph} {w!r} on {lattice!r}: max defect {report.max_defect:.3g}")
    return report
