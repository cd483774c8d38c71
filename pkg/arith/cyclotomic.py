"""
Exact scalars c·d^(-k/2) with c in the cyclotomic field Q(ζ_N)

c is stored over the power basis 1, ζ, …, ζ^(φ(N)-1) reduced modulo Φ_N,
as integer numerators over one common denominator. The radical d^(-1/2)
(d squarefree) stays symbolic until two scalars with different radicals
are added or the canonical form is taken; both expand it into Gauss sums.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import cyclotomic_poly, divisors, factorint, legendre_symbol, symbols, Poly

from arith import linalg
from arith.intervals import ComplexInterval, exp_2pi_i, interval, sqrt_real, working_precision
from utils import constants
from utils.errors import CyclotomicOrderExceeded

Number = Union[int, Fraction]

_x = symbols("x")


# ===== CYCLOTOMIC TABLES =====

@lru_cache(maxsize=None)
def _phi_coefficients(order: int) -> Tuple[int, ...]:
    """Coefficients of Φ_order, constant term first"""
    poly = Poly(cyclotomic_poly(order, _x), _x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def _power_table(order: int) -> Tuple[Tuple[int, ...], ...]:
    """Row a holds the reduced coordinates of ζ^a, a = 0..order-1"""
    phi = _phi_coefficients(order)
    degree = len(phi) - 1
    rows: List[Tuple[int, ...]] = []
    current = [1] + [0] * (degree - 1)
    for _ in range(order):
        rows.append(tuple(current))
        carry = current[-1]
        shifted = [0] + current[:-1]
        current = [s - carry * phi[k] for k, s in enumerate(shifted)]
    return tuple(rows)


def _degree(order: int) -> int:
    return len(_phi_coefficients(order)) - 1


def _check_order(order: int) -> None:
    if order > constants.MAX_CYCLO_ORDER:
        raise CyclotomicOrderExceeded(
            f"cyclotomic order {order} exceeds the bound {constants.MAX_CYCLO_ORDER}"
        )


def _reduce(order: int, accumulator: Dict[int, int]) -> List[int]:
    """Fold Σ acc[a]·ζ^a into the power basis"""
    table = _power_table(order)
    out = [0] * _degree(order)
    for exponent, value in accumulator.items():
        if value:
            for k, t in enumerate(table[exponent % order]):
                if t:
                    out[k] += value * t
    return out


def _squarefree_split(n: int) -> Tuple[int, int]:
    """n = s²·d with d squarefree; returns (s, d)"""
    s, d = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


# ===== SCALAR =====

class ExactScalar:
    """Immutable c·d^(-k/2); equality by exact zero test, unhashable"""

    __slots__ = ("order", "nums", "den", "radicand", "radical_power")
    __hash__ = None

    def __init__(self, order: int, nums: Sequence[int], den: int = 1, radicand: int = 1, radical_power: int = 0):
        nums = list(nums)
        if den < 0:
            nums, den = [-v for v in nums], -den
        common = gcd(den, *nums) if nums else den
        if not any(nums):
            order, nums, den, radicand, radical_power = 1, [0], 1, 1, 0
        elif common > 1:
            nums, den = [v // common for v in nums], den // common
        if radicand == 1:
            radical_power = 0
        if radical_power == 0:
            radicand = 1
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "nums", tuple(nums))
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "radicand", radicand)
        object.__setattr__(self, "radical_power", radical_power)

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    # ===== CONSTRUCTORS =====

    @classmethod
    def rational(cls, q: Number) -> "ExactScalar":
        q = Fraction(q)
        return cls(1, [q.numerator], q.denominator)

    @classmethod
    def zero(cls) -> "ExactScalar":
        return cls(1, [0])

    @classmethod
    def one(cls) -> "ExactScalar":
        return cls(1, [1])

    @classmethod
    def from_exponents(cls, order: int, terms: Dict[int, Number]) -> "ExactScalar":
        """Σ terms[a]·ζ_order^a"""
        _check_order(order)
        den = 1
        for value in terms.values():
            den = lcm(den, Fraction(value).denominator)
        scaled = {a: int(Fraction(v) * den) for a, v in terms.items()}
        return cls(order, _reduce(order, scaled), den)

    @classmethod
    def inverse_sqrt(cls, n: int) -> "ExactScalar":
        """n^(-1/2) for a positive integer n"""
        if n <= 0:
            raise ValueError("inverse_sqrt needs a positive integer")
        s, d = _squarefree_split(n)
        return cls(1, [1], s, d, 1)

    @classmethod
    def sqrt(cls, n: int) -> "ExactScalar":
        return cls.inverse_sqrt(n) * n

    # ===== ACCESSORS =====

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.nums)

    def is_zero(self) -> bool:
        return not any(self.nums)

    def is_rational(self) -> bool:
        return self.radical_power == 0 and all(v == 0 for v in self.nums[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("scalar is not rational")
        return Fraction(self.nums[0], self.den)

    def _exponent_terms(self, target: int) -> Iterable[Tuple[int, int]]:
        step = target // self.order
        for j, value in enumerate(self.nums):
            if value:
                yield (j * step) % target, value

    # ===== ARITHMETIC =====

    def _coerce(self, other) -> "ExactScalar":
        if isinstance(other, ExactScalar):
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar.rational(other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return ExactScalar(self.order, [v * q.numerator for v in self.nums], self.den * q.denominator,
                               self.radicand, self.radical_power)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return ExactScalar.zero()
        order = lcm(self.order, other.order)
        _check_order(order)
        acc: Dict[int, int] = {}
        right = list(other._exponent_terms(order))
        for i, a in self._exponent_terms(order):
            for j, b in right:
                key = (i + j) % order
                acc[key] = acc.get(key, 0) + a * b
        den = self.den * other.den
        radicand, power = self.radicand, self.radical_power
        if other.radical_power:
            if power:
                g = gcd(radicand, other.radicand)
                den *= g
                radicand = radicand * other.radicand // (g * g)
                power = 1 if radicand > 1 else 0
            else:
                radicand, power = other.radicand, 1
        return ExactScalar(order, _reduce(order, acc), den, radicand, power)

    __rmul__ = __mul__

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if (self.radicand, self.radical_power) != (other.radicand, other.radical_power):
            return self.to_cyclotomic() + other.to_cyclotomic()
        order = lcm(self.order, other.order)
        _check_order(order)
        acc: Dict[int, int] = {}
        for i, a in self._exponent_terms(order):
            acc[i] = acc.get(i, 0) + a * other.den
        for j, b in other._exponent_terms(order):
            acc[j] = acc.get(j, 0) + b * self.den
        return ExactScalar(order, _reduce(order, acc), self.den * other.den, self.radicand, self.radical_power)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(self.order, [-v for v in self.nums], self.den, self.radicand, self.radical_power)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return NotImplemented

    def conj(self) -> "ExactScalar":
        acc = {(-j) % self.order: v for j, v in enumerate(self.nums) if v}
        return ExactScalar(self.order, _reduce(self.order, acc), self.den, self.radicand, self.radical_power)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self - other).is_zero()

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    # ===== NORMAL FORMS =====

    def to_cyclotomic(self) -> "ExactScalar":
        """Same value with the radical expanded through Gauss sums"""
        if self.radical_power == 0:
            return self
        root = _sqrt_cyclotomic(self.radicand)
        return ExactScalar(self.order, self.nums, self.den * self.radicand) * root

    def canonical(self) -> "ExactScalar":
        """
        Radical expanded, cyclotomic part at its minimal order

        Every value has exactly one such form, so equal scalars render alike
        whatever radicals they were built with.
        """
        if self.is_zero():
            return self
        flat = self.to_cyclotomic()
        for order in divisors(flat.order):
            if order % 4 == 2:
                continue
            if order == flat.order:
                return flat
            coords = _subfield_coordinates(flat.order, order, flat.coeffs)
            if coords is not None:
                den = 1
                for c in coords:
                    den = lcm(den, c.denominator)
                return ExactScalar(order, [int(c * den) for c in coords], den)
        return flat

    # ===== EMBEDDING =====

    def embed(self, precision: int = constants.DEFAULT_PRECISION) -> ComplexInterval:
        """Complex interval containing the value"""
        with working_precision(precision):
            total = ComplexInterval(0, 0)
            for j, value in enumerate(self.nums):
                if value:
                    total = total + exp_2pi_i(ComplexInterval(Fraction(j, self.order), 0)) * value
            total = ComplexInterval(total.re / self.den, total.im / self.den)
            if self.radical_power:
                root = sqrt_real(self.radicand)
                total = ComplexInterval(total.re / root, total.im / root)
            return total

    # ===== RENDERING =====

    def render(self) -> str:
        """'(N:c0,c1,…; d; k)'"""
        c = self.canonical()
        coeffs = ",".join(str(v) for v in c.coeffs)
        return f"({c.order}:{coeffs}; {c.radicand}; {c.radical_power})"

    def __repr__(self):
        return f"ExactScalar{self.render()}"


# ===== ROOTS OF UNITY =====

@lru_cache(maxsize=4096)
def root_of_unity(z: Fraction) -> ExactScalar:
    """e(z) = ζ_b^a for z = a/b, in the field of minimal order"""
    z = Fraction(z) % 1
    a, b = z.numerator, z.denominator
    if b % 4 == 2:
        m = b // 2
        sign = -1 if a % 2 else 1
        if m == 1:
            return ExactScalar.rational(sign)
        return ExactScalar.from_exponents(m, {(a * (m + 1) // 2) % m: sign})
    return ExactScalar.from_exponents(b, {a: 1})


def e(z: Number) -> ExactScalar:
    return root_of_unity(Fraction(z))


# ===== GAUSS SUMS =====

@lru_cache(maxsize=None)
def _sqrt_prime(p: int) -> ExactScalar:
    if p == 2:
        return ExactScalar.from_exponents(8, {1: 1, 7: 1})
    gauss = ExactScalar.from_exponents(p, {a: legendre_symbol(a, p) for a in range(1, p)})
    if p % 4 == 1:
        return gauss
    return gauss * ExactScalar.from_exponents(4, {3: 1})


@lru_cache(maxsize=None)
def _sqrt_cyclotomic(d: int) -> ExactScalar:
    """√d for squarefree d as a pure cyclotomic number"""
    root = ExactScalar.one()
    for p in sorted(factorint(d)):
        root = root * _sqrt_prime(p)
    return root


# ===== SUBFIELDS =====

@lru_cache(maxsize=None)
def _subfield_solver(order: int, sub: int):
    """Pivot rows and inverse block of the embedding Q(ζ_sub) ⊂ Q(ζ_order)"""
    table = _power_table(order)
    step = order // sub
    columns = [tuple(Fraction(v) for v in table[(i * step) % order]) for i in range(_degree(sub))]
    embedding = linalg.transpose(columns)
    _, pivot_rows = linalg.row_reduce(columns)
    block = [embedding[r] for r in pivot_rows]
    return embedding, tuple(pivot_rows), linalg.inverse(block)


def _subfield_coordinates(order: int, sub: int, coeffs: Sequence[Fraction]) -> Optional[Tuple[Fraction, ...]]:
    embedding, pivot_rows, block_inverse = _subfield_solver(order, sub)
    candidate = linalg.matvec(block_inverse, [coeffs[r] for r in pivot_rows])
    if tuple(linalg.matvec(embedding, candidate)) != tuple(coeffs):
        return None
    return tuple(candidate)
