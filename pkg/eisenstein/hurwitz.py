"""
Hurwitz class numbers and the weight 3/2 Eisenstein coefficients

H(N) counts SL₂(Z)-classes of positive definite binary forms of
discriminant −N, not necessarily primitive, with (a, 0, a) weighted ½ and
(a, a, a) weighted ⅓. H(0) = −1/12.
"""
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Dict, List, Tuple

from sympy import divisors

from modform.expansion import QExpansion, scalar_expansion
from utils.errors import BadDiscriminant
from utils.logging_utils import get_logger

logger = get_logger(__name__)

Form = Tuple[int, int, int]

HURWITZ_ZERO = Fraction(-1, 12)
WEIGHT = Fraction(3, 2)


def _check_discriminant(D: int) -> None:
    if D >= 0 or D % 4 not in (0, 1):
        raise BadDiscriminant(f"{D} is not a negative discriminant")


def reduced_forms(D: int) -> List[Form]:
    """
    All reduced forms (a, b, c) with b² − 4ac = D

    |b| ≤ a ≤ c, and b ≥ 0 when |b| = a or a = c. Sorted by (a, b).
    """
    _check_discriminant(D)
    out: List[Form] = []
    for a in range(1, isqrt(-D // 3) + 1):
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (b < 0 and a == c):
                continue
            out.append((a, b, c))
    return out


def primitive_reduced_forms(D: int) -> List[Form]:
    return [f for f in reduced_forms(D) if gcd(*f) == 1]


def form_weight(form: Form) -> Fraction:
    a, b, c = form
    if b == 0 and a == c:
        return Fraction(1, 2)
    if a == b == c:
        return Fraction(1, 3)
    return Fraction(1)


def class_number(D: int) -> Fraction:
    """Weighted count of primitive classes of discriminant D"""
    return sum((form_weight(f) for f in primitive_reduced_forms(D)), Fraction(0))


@lru_cache(maxsize=4096)
def hurwitz(N: int) -> Fraction:
    """H(N) as a sum of weighted class numbers over the squares f² | N"""
    if N < 0:
        raise BadDiscriminant(f"H({N}) is undefined")
    if N == 0:
        return HURWITZ_ZERO
    if N % 4 not in (0, 3):
        return Fraction(0)
    total = Fraction(0)
    for f in range(1, isqrt(N) + 1):
        if N % (f * f):
            continue
        D = -(N // (f * f))
        if D % 4 in (0, 1):
            total += class_number(D)
    return total


def hurwitz_values(bound: int, threads: int = 1) -> Dict[int, Fraction]:
    values = range(bound + 1)
    if threads > 1 and bound > 0:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return dict(zip(values, pool.map(hurwitz, values)))
    return {N: hurwitz(N) for N in values}


def zagier_coeffs(bound: int, threads: int = 1) -> QExpansion:
    """Holomorphic part Σ_{N ≤ bound} H(N) qᴺ of the weight 3/2 Eisenstein series"""
    if bound < 0:
        raise BadDiscriminant("bound must be nonnegative")
    series = scalar_expansion(hurwitz_values(bound, threads), WEIGHT, Fraction(bound), mock=True)
    logger.info(f"[Zagier] ✅ {len(series)} nonzero coefficients through q^{bound}")
    return series


def class_number_relation(n: int) -> Tuple[Fraction, Fraction]:
    """
    Both sides of Σ_r H(4n − r²) = 2σ(n) − Σ_{d | n} min(d, n/d), n ≥ 1
    """
    lhs = sum((hurwitz(4 * n - r * r) for r in range(-isqrt(4 * n), isqrt(4 * n) + 1)), Fraction(0))
    ds = divisors(n)
    rhs = Fraction(2 * sum(ds) - sum(min(d, n // d) for d in ds))
    return lhs, rhs
