"""
Complex intervals on top of mpmath's real interval context

All numerics that feed a pass/fail decision go through these boxes.
The iv context precision is process-global; working_precision restores it.
"""
from contextlib import contextmanager
from fractions import Fraction
from typing import Iterator, Union

from mpmath import iv, mp

Real = Union[int, Fraction, float]


def interval(x) -> "iv.mpf":
    """Enclose an exact rational (or a float, taken exactly) in a real interval"""
    if isinstance(x, Fraction):
        return iv.mpf(x.numerator) / x.denominator
    if hasattr(x, "_mpi_"):
        return x
    return iv.mpf(x)


def lower(x) -> "mp.mpf":
    return mp.make_mpf(x._mpi_[0])


def upper(x) -> "mp.mpf":
    return mp.make_mpf(x._mpi_[1])


def _nonnegative(x):
    """Clamp an interval that is nonnegative in exact arithmetic"""
    hi = upper(x)
    lo = lower(x)
    if lo >= 0:
        return x
    return iv.mpf([0, max(hi, mp.mpf(0))])


def _square(x):
    """Enclosure of x² that stays nonnegative when x straddles 0"""
    lo, hi = lower(x), upper(x)
    top = max(abs(lo), abs(hi))
    bottom = mp.mpf(0) if lo <= 0 <= hi else min(abs(lo), abs(hi))
    low, high = iv.mpf([bottom, bottom]), iv.mpf([top, top])
    return iv.mpf([lower(low * low), upper(high * high)])


def _modulus(re, im):
    return iv.sqrt(_square(re) + _square(im))


@contextmanager
def working_precision(bits: int) -> Iterator[None]:
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


class ComplexInterval:
    """Rectangle re + i·im with real interval sides"""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = interval(re)
        self.im = interval(im)

    # ===== ARITHMETIC =====

    def _coerce(self, other) -> "ComplexInterval":
        if isinstance(other, ComplexInterval):
            return other
        return ComplexInterval(other, 0)

    def __add__(self, other):
        other = self._coerce(other)
        return ComplexInterval(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return ComplexInterval(-self.re, -self.im)

    def __mul__(self, other):
        other = self._coerce(other)
        return ComplexInterval(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def conj(self) -> "ComplexInterval":
        return ComplexInterval(self.re, -self.im)

    def __truediv__(self, other):
        other = self._coerce(other)
        denominator = _square(other.re) + _square(other.im)
        numerator = self * other.conj()
        return ComplexInterval(numerator.re / denominator, numerator.im / denominator)

    def __pow__(self, n: int) -> "ComplexInterval":
        if n < 0:
            return ComplexInterval(1) / (self ** (-n))
        result = ComplexInterval(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # ===== MAGNITUDES =====

    def abs_upper(self) -> float:
        """Upper bound for |z|"""
        return float(upper(_modulus(self.re, self.im)))

    def width(self) -> float:
        return float(max(upper(self.re) - lower(self.re), upper(self.im) - lower(self.im)))

    def contains_zero(self) -> bool:
        return lower(self.re) <= 0 <= upper(self.re) and lower(self.im) <= 0 <= upper(self.im)

    def midpoint(self) -> complex:
        return complex(float(self.re.mid), float(self.im.mid))

    def __repr__(self):
        return f"ComplexInterval({self.re}, {self.im})"


def exp_2pi_i(z: ComplexInterval) -> ComplexInterval:
    """e(z) = exp(2πiz)"""
    two_pi = 2 * iv.pi
    modulus = iv.exp(-two_pi * z.im)
    angle = two_pi * z.re
    return ComplexInterval(modulus * iv.cos(angle), modulus * iv.sin(angle))


def sqrt_principal(z: ComplexInterval) -> ComplexInterval:
    """Principal square root, continuous off the negative real axis"""
    modulus = _modulus(z.re, z.im)
    p = iv.sqrt(_nonnegative((modulus + z.re) / 2))
    q = iv.sqrt(_nonnegative((modulus - z.re) / 2))
    if lower(z.im) >= 0:
        return ComplexInterval(p, q)
    if upper(z.im) <= 0:
        return ComplexInterval(p, -q)
    return ComplexInterval(p, iv.mpf([-upper(q), upper(q)]))


def sqrt_real(x: Real) -> "iv.mpf":
    return iv.sqrt(interval(x))
