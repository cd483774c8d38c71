"""
Interval evaluation of truncated q-expansions at points of the half-space

A point τ is an r×r matrix over Q(i). The orthogonal half-space needs τ
symmetric with Im τ > 0; the Hermitian one needs (τ − τ*)/2i > 0. Each
component is a finite sum of c(T, μ)·e(s·tr(Tτ)) enclosed in intervals;
the omitted terms of a theta series are bounded by a lattice point count.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from mpmath import iv, mp

from arith.intervals import ComplexInterval, exp_2pi_i, interval, lower, sqrt_real, upper, working_precision
from arith.quadratic import GAUSSIAN, KElement, gaussian, parse_gaussian
from cycles.enumeration import quadratic_decomposition
from lattices.lattice import Lattice, hermitian_trace_gram
from lattices.signature import diagonalize
from modform.expansion import Matrix, QExpansion, trace
from utils import constants
from utils.dataclasses import Case
from utils.errors import NotInHalfSpace, ParseError, SizeMismatch
from utils.logging_utils import get_logger

logger = get_logger(__name__)

Point = Tuple[Tuple[KElement, ...], ...]

SHELLS_FOR_GROWTH = 3
EIGENVALUE_HALVINGS = 60


@dataclass(frozen=True)
class Evaluation:
    values: Tuple[ComplexInterval, ...]
    tail_bound: float
    precision: int
    certified: bool = False

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i: int) -> ComplexInterval:
        return self.values[i]


# ===== POINTS =====

def _as_gaussian(z: Any) -> KElement:
    if isinstance(z, KElement):
        if z.d != -1:
            raise ParseError("points of the half-space are matrices over Q(i)")
        return z
    if isinstance(z, str):
        return parse_gaussian(z)
    if isinstance(z, complex):
        return gaussian(Fraction(z.real), Fraction(z.imag))
    return gaussian(Fraction(z))


def as_point(tau: Any) -> Point:
    """Coerce a scalar or a square matrix into an exact point"""
    if not isinstance(tau, (list, tuple)):
        return ((_as_gaussian(tau),),)
    n = len(tau)
    if any(not isinstance(row, (list, tuple)) or len(row) != n for row in tau):
        raise SizeMismatch("τ must be a square matrix")
    return tuple(tuple(_as_gaussian(z) for z in row) for row in tau)


def imaginary_part(tau: Point) -> Point:
    """(τ − τ*)/2i"""
    n = len(tau)
    half_over_i = gaussian(0, Fraction(-1, 2))
    return tuple(tuple((tau[i][j] - tau[j][i].conj()) * half_over_i for j in range(n)) for i in range(n))


def check_half_space(tau: Point, case: Case) -> Point:
    """Raise NotInHalfSpace unless τ lies in the half-space; returns Im τ"""
    n = len(tau)
    if case is Case.ORTHOGONAL and any(tau[i][j] != tau[j][i] for i in range(n) for j in range(n)):
        raise NotInHalfSpace("τ is not symmetric")
    Y = imaginary_part(tau)
    form = hermitian_trace_gram(GAUSSIAN, Y)
    diag, _ = diagonalize(form)
    if any(d <= 0 for d in diag):
        raise NotInHalfSpace("Im τ is not positive definite")
    return Y


def _is_positive_definite(Y: Point) -> bool:
    diag, _ = diagonalize(hermitian_trace_gram(GAUSSIAN, Y))
    return all(d > 0 for d in diag)


def smallest_eigenvalue(Y: Point) -> Fraction:
    """
    Certified lower bound for λ_min(Im τ)

    A float eigen-solve proposes λ; it is accepted once Y − λ·I is shown
    positive definite in exact arithmetic, halving it until that holds.
    """
    matrix = np.array([[complex(float(z.a), float(z.b)) for z in row] for row in Y])
    estimate = float(np.linalg.eigvalsh(matrix).min())
    lam = Fraction(estimate) * Fraction(999_999, 1_000_000) if estimate > 0 else Fraction(0)
    n = len(Y)
    for _ in range(EIGENVALUE_HALVINGS):
        if lam <= 0:
            break
        shifted = tuple(tuple(Y[i][j] - lam if i == j else Y[i][j] for j in range(n)) for i in range(n))
        if _is_positive_definite(shifted):
            return lam
        lam /= 2
    return Fraction(0)


# ===== EMBEDDINGS =====

def embed_k(z: Any) -> ComplexInterval:
    """Interval image of a rational or a K-element"""
    if isinstance(z, KElement):
        if z.d == -1:
            return ComplexInterval(z.a, z.b)
        x, y, s = z.real_imag()
        return ComplexInterval(x, iv.mpf(y.numerator) / y.denominator * sqrt_real(s))
    return ComplexInterval(Fraction(z), 0)


def trace_pairing(T: Matrix, tau: Point) -> ComplexInterval:
    """tr(Tτ) = Σ T_ij τ_ji"""
    n = len(T)
    total = ComplexInterval(0, 0)
    for i in range(n):
        for j in range(n):
            if T[i][j] != 0:
                total = total + embed_k(T[i][j]) * embed_k(tau[j][i])
    return total


# ===== TAIL =====

def _shells(F: QExpansion) -> List[Tuple[Fraction, Fraction]]:
    """(tr T, Σ |c|) per trace, increasing"""
    masses: Dict[Fraction, Fraction] = {}
    for (T, _), c in F.coefficients:
        t = trace(T)
        masses[t] = masses.get(t, Fraction(0)) + abs(c)
    return sorted(masses.items())


def tail_estimate(F: QExpansion, lam: Fraction) -> float:
    """
    Estimate of the omitted terms for an expansion without a lattice

    Shell masses beyond the truncation are extrapolated with the largest
    recent growth rate; the decay per trace step δ is exp(−2π·s·λ·δ).
    """
    shells = _shells(F)
    if not shells:
        return 0.0
    if lam <= 0:
        return float("inf")
    lam = float(lam)
    gaps = [b[0] - a[0] for a, b in zip(shells, shells[1:]) if b[0] > a[0]]
    delta = min(gaps) if gaps else Fraction(1)
    growth = mp.mpf(1)
    recent = shells[-(SHELLS_FOR_GROWTH + 1):]
    for (t0, m0), (t1, m1) in zip(recent, recent[1:]):
        rate = (mp.mpf(m1.numerator) / m1.denominator) / (mp.mpf(m0.numerator) / m0.denominator)
        growth = max(growth, rate ** (float(delta) / float(t1 - t0)))
    decay = mp.exp(-2 * mp.pi * F.exponent_scale * lam * float(delta))
    ratio = growth * decay
    if ratio >= 1:
        return float("inf")
    t_last, m_last = shells[-1]
    steps = float((F.truncation - t_last) / delta)
    first = mp.mpf(m_last.numerator) / m_last.denominator * growth ** steps
    first *= mp.exp(-2 * mp.pi * F.exponent_scale * lam * float(F.truncation))
    return float(constants.TAIL_SAFETY_FACTOR * first * ratio / (1 - ratio))


def _count_polynomial(lattice: Lattice, genus: int) -> List["iv.mpf"]:
    """
    Coefficients a_m with #{x ∈ (μ+L)^r : tr T(x) ≤ u} ≤ Σ_m a_m·u^(m/2)

    With Q(x) = Σ_k D_k·(x_k − center_k)² every coordinate has at most
    1 + 2·√(t/D_k) integer choices once the later ones are fixed.
    """
    scale = Fraction(1) if lattice.case is Case.ORTHOGONAL else Fraction(1, 2)
    coeffs = [iv.mpf(1)]
    for d in quadratic_decomposition(lattice.gram).diagonal:
        b = 2 / sqrt_real(scale * d)
        for _ in range(genus):
            coeffs = [
                (coeffs[m] if m < len(coeffs) else 0) + (b * coeffs[m - 1] if m > 0 else 0)
                for m in range(len(coeffs) + 1)
            ]
    return coeffs


def _upper_gamma(a: Fraction, x: "iv.mpf") -> "iv.mpf":
    """Upper bound for Γ(a, x), a ≥ 1 a half-integer"""
    if a == 1:
        return iv.exp(-x)
    if lower(x) > float(a - 1):
        power = x ** int(a - 1) * (iv.sqrt(x) if (a - 1).denominator == 2 else 1)
        return power * iv.exp(-x) / (1 - interval(a - 1) / x)
    if a.denominator == 1:
        return iv.mpf(factorial(int(a) - 1))
    k = int(a - Fraction(1, 2))
    return iv.mpf(factorial(2 * k)) / (4 ** k * factorial(k)) * iv.sqrt(iv.pi)


def certified_tail_bound(F: QExpansion, lattice: Lattice, lam: Fraction) -> float:
    """
    Rigorous bound for the omitted terms of a theta series of the lattice

    With c = 2π·s·λ_min(Im τ) each omitted term is at most exp(−c·tr T), so
    per component the tail is ≤ ∫_B^∞ c·e^(−cu)·N(u) du for the point
    count N above; every term a_m·u^(m/2) contributes a_m·c^(−m/2)·Γ(m/2+1, cB).
    """
    if lam <= 0:
        return float("inf")
    c = 2 * iv.pi * F.exponent_scale * interval(lam)
    x = c * interval(F.truncation)
    total = iv.mpf(0)
    for m, a in enumerate(_count_polynomial(lattice, F.genus)):
        total += a * _upper_gamma(Fraction(m, 2) + 1, x) / iv.sqrt(c) ** m
    return float(upper(total)) * (1 + 2 ** -40)


# ===== EVALUATION =====

def _component_index(mu: Sequence[int], components: int) -> int:
    position = 0
    for i in mu:
        position = position * components + i
    return position


def evaluate(
    F: QExpansion,
    tau: Any,
    precision: int = constants.DEFAULT_PRECISION,
    lattice: Optional[Lattice] = None,
) -> Evaluation:
    """
    Σ_T c(T, μ) e(s·tr(Tτ)) for every μ, with a bound on the omitted terms

    Given the lattice of a theta series the bound is certified; otherwise
    it is an estimate from the growth of the last shells.
    """
    point = as_point(tau)
    if len(point) != F.genus:
        raise SizeMismatch(f"τ is {len(point)}×{len(point)}, the expansion has genus {F.genus}")
    precision = max(precision, constants.MIN_PRECISION)
    Y = check_half_space(point, F.case)
    lam = smallest_eigenvalue(Y)
    size = F.components ** F.genus
    with working_precision(precision):
        values = [ComplexInterval(0, 0) for _ in range(size)]
        phases: Dict[Matrix, ComplexInterval] = {}
        for (T, mu), c in F.coefficients:
            if T not in phases:
                phases[T] = exp_2pi_i(trace_pairing(T, point) * F.exponent_scale)
            k = _component_index(mu, F.components)
            values[k] = values[k] + phases[T] * ComplexInterval(c, 0)
        if lattice is not None:
            tail = certified_tail_bound(F, lattice, lam)
        else:
            tail = tail_estimate(F, lam)
    logger.debug(f"[Evaluate] {F!r} at τ with λ_min ≥ {float(lam):.4g}: tail ≤ {tail:.3g}")
    return Evaluation(tuple(values), tail, precision, lattice is not None)
