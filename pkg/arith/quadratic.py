"""
Imaginary quadratic fields K = Q(√d) and their elements a + b·ω

ω is the standard integral generator: (1+√d)/2 when d ≡ 1 mod 4, else √d,
embedded in C with positive imaginary part. Q(i) doubles as the field of
Gaussian rationals used for points of the half-spaces.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple, Union

from sympy import factorint

from utils.errors import ParseError

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class QuadraticField:
    d: int

    def __post_init__(self):
        if self.d >= 0:
            raise ParseError(f"field_disc must be negative, got {self.d}")
        if any(e > 1 for e in factorint(-self.d).values()):
            raise ParseError(f"field_disc must be squarefree, got {self.d}")

    @property
    def omega_trace(self) -> int:
        return 1 if self.d % 4 == 1 else 0

    @property
    def omega_norm(self) -> Fraction:
        return Fraction(1 - self.d, 4) if self.d % 4 == 1 else Fraction(-self.d)

    @property
    def discriminant(self) -> int:
        """Absolute discriminant |D_K|"""
        return -self.d if self.d % 4 == 1 else -4 * self.d

    def element(self, a: Rational = 0, b: Rational = 0) -> "KElement":
        return KElement(self.d, Fraction(a), Fraction(b))

    @property
    def zero(self) -> "KElement":
        return self.element()

    @property
    def one(self) -> "KElement":
        return self.element(1)

    @property
    def omega(self) -> "KElement":
        return self.element(0, 1)

    @property
    def unit_order(self) -> int:
        """Number of roots of unity in O_K"""
        return {-1: 4, -3: 6}.get(self.d, 2)

    def units(self) -> List["KElement"]:
        """Roots of unity u_k = e(k/w), k = 0..w-1"""
        return list(_units(self.d))

    def unit_exponent(self, u: "KElement") -> Fraction:
        """k/w with u = e(k/w); raises ValueError if u is not a root of unity"""
        for k, candidate in enumerate(_units(self.d)):
            if candidate == u:
                return Fraction(k, self.unit_order)
        raise ValueError(f"{u} is not a root of unity in Q(√{self.d})")


@lru_cache(maxsize=None)
def _units(d: int) -> Tuple["KElement", ...]:
    if d in (-1, -3):
        generator = KElement(d, Fraction(0), Fraction(1))
    else:
        generator = KElement(d, Fraction(-1), Fraction(0))
    order = {-1: 4, -3: 6}.get(d, 2)
    powers = [KElement(d, Fraction(1), Fraction(0))]
    for _ in range(order - 1):
        powers.append(powers[-1] * generator)
    return tuple(powers)


@dataclass(frozen=True)
class KElement:
    d: int
    a: Fraction
    b: Fraction

    # ===== STRUCTURE =====

    @property
    def _t(self) -> int:
        return 1 if self.d % 4 == 1 else 0

    @property
    def _n(self) -> Fraction:
        return Fraction(1 - self.d, 4) if self.d % 4 == 1 else Fraction(-self.d)

    def _coerce(self, other) -> "KElement":
        if isinstance(other, KElement):
            if other.d != self.d:
                raise ValueError(f"mixing Q(√{self.d}) and Q(√{other.d})")
            return other
        if isinstance(other, (int, Fraction)):
            return KElement(self.d, Fraction(other), Fraction(0))
        return NotImplemented

    # ===== ARITHMETIC =====

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return KElement(self.d, self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return KElement(self.d, -self.a, -self.b)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return KElement(self.d, self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        be = self.b * other.b
        return KElement(
            self.d,
            self.a * other.a - be * self._n,
            self.a * other.b + self.b * other.a + be * self._t,
        )

    __rmul__ = __mul__

    def conj(self) -> "KElement":
        return KElement(self.d, self.a + self.b * self._t, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a + self.a * self.b * self._t + self.b * self.b * self._n

    def trace(self) -> Fraction:
        return 2 * self.a + self.b * self._t

    def inverse(self) -> "KElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in K")
        c = self.conj()
        return KElement(self.d, c.a / n, c.b / n)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    # ===== PREDICATES =====

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, KElement):
            return self.d == other.d and self.a == other.a and self.b == other.b
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash((self.d, self.a, self.b))

    def is_rational(self) -> bool:
        return self.b == 0

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    # ===== EMBEDDING =====

    def real_imag(self) -> Tuple[Fraction, Fraction, Fraction]:
        """(x, y, s) with self = x + y·√s·i, s = |d|"""
        s = -self.d
        if self.d % 4 == 1:
            return self.a + self.b / 2, self.b / 2, Fraction(s)
        return self.a, self.b, Fraction(s)

    def gaussian_parts(self) -> Tuple[Fraction, Fraction]:
        """(re, im) for elements of Q(i)"""
        if self.d != -1:
            raise ValueError("gaussian_parts needs Q(i)")
        return self.a, self.b

    def sort_key(self) -> Tuple[Fraction, Fraction]:
        return (self.a, self.b)

    def __repr__(self):
        if self.b == 0:
            return f"{self.a}"
        return f"({self.a}+{self.b}ω)"


GAUSSIAN = QuadraticField(-1)


def gaussian(re: Rational, im: Rational = 0) -> KElement:
    return GAUSSIAN.element(re, im)


def parse_gaussian(text: str) -> KElement:
    """Read 're,im' (rationals) into a Gaussian rational"""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 2:
        raise ParseError(f"expected 're,im', got {text!r}")
    try:
        return gaussian(Fraction(parts[0]), Fraction(parts[1]))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad complex point {text!r}: {exc}") from exc
