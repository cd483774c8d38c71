"""
Isotropy and Witt index of rational quadratic forms

Local solubility uses Hilbert symbols and Hasse invariants of a diagonal
model; global isotropy follows from the local data by Hasse-Minkowski, and
every indefinite form of rank ≥ 5 is isotropic (Meyer). The index itself is
found by splitting off hyperbolic planes around explicit isotropic vectors.
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, isqrt, lcm
from typing import List, Optional, Sequence, Tuple, Union

from sympy import factorint, legendre_symbol, multiplicity, oo

from arith import linalg
from arith.quadratic import QuadraticField
from lattices.lattice import Lattice, hermitian_trace_gram
from lattices.signature import Signature, diagonalize
from utils import constants
from utils.dataclasses import WittStatus
from utils.errors import DegenerateForm, ParseError, VerificationFailure, WrongCase
from utils.logging_utils import get_logger

logger = get_logger(__name__)

INFINITY = oo
Place = Union[int, type(oo)]
Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class WittReport:
    rank: int
    signature: Signature
    witt_index: int
    isotropic_witness: Optional[Vector] = None
    status: WittStatus = WittStatus.EXACT
    obstruction: Optional[Place] = None

    @property
    def inconclusive(self) -> bool:
        return self.status is WittStatus.INCONCLUSIVE

    def __repr__(self):
        return (f"WittReport(rank={self.rank}, signature={tuple(self.signature)}, "
                f"index={self.witt_index}, status={self.status.value})")


# ===== LOCAL SQUARES AND SYMBOLS =====

def _split(x: Fraction, p: int) -> Tuple[int, int]:
    """(v, u) with x = p^v·(unit), u an integer congruent to the unit"""
    x = Fraction(x)
    sign = -1 if x < 0 else 1
    num, den = abs(x.numerator), x.denominator
    a, b = multiplicity(p, num), multiplicity(p, den)
    # den is a unit and den² ≡ 1 mod 8, so num·den stands in for num/den
    return a - b, sign * (num // p ** a) * (den // p ** b)


def is_square_in_qp(x: Fraction, p: Place) -> bool:
    x = Fraction(x)
    if x == 0:
        return True
    if p is INFINITY:
        return x > 0
    v, u = _split(x, p)
    if v % 2:
        return False
    if p == 2:
        return u % 8 == 1
    return legendre_symbol(u % p, p) == 1


def hilbert_symbol(a: Fraction, b: Fraction, p: Place) -> int:
    """(a, b)_p for nonzero rationals at a prime or at INFINITY"""
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("hilbert_symbol needs nonzero arguments")
    if p is INFINITY:
        return -1 if a < 0 and b < 0 else 1
    alpha, u = _split(a, p)
    beta, v = _split(b, p)
    if p == 2:
        u, v = u % 8, v % 8

        def eps(t):
            return ((t - 1) // 2) % 2

        def omega(t):
            return ((t * t - 1) // 8) % 2

        exponent = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if exponent % 2 else 1
    sign = -1 if (alpha * beta * ((p - 1) // 2)) % 2 else 1
    if beta % 2:
        sign *= legendre_symbol(u % p, p)
    if alpha % 2:
        sign *= legendre_symbol(v % p, p)
    return sign


def hasse_invariant(diag: Sequence[Fraction], p: Place) -> int:
    result = 1
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            result *= hilbert_symbol(diag[i], diag[j], p)
    return result


# ===== LOCAL ISOTROPY =====

def _product(values: Sequence[Fraction]) -> Fraction:
    out = Fraction(1)
    for v in values:
        out *= v
    return out


def _isotropic_at(diag: Sequence[Fraction], p: Place) -> bool:
    n = len(diag)
    if p is INFINITY:
        return any(a > 0 for a in diag) and any(a < 0 for a in diag)
    if n <= 1:
        return False
    d = _product(diag)
    if n == 2:
        return is_square_in_qp(-d, p)
    eps = hasse_invariant(diag, p)
    if n == 3:
        return hilbert_symbol(-1, -d, p) == eps
    if n == 4:
        return not is_square_in_qp(d, p) or eps == hilbert_symbol(-1, -1, p)
    return True


def _diagonal_model(form: Sequence[Sequence]) -> Tuple[List[Fraction], List[Vector]]:
    if not linalg.is_symmetric(linalg.fraction_matrix(form)):
        raise ParseError("quadratic form is not symmetric")
    diag, basis = diagonalize(form)
    if any(a == 0 for a in diag):
        raise DegenerateForm("form has a zero eigenvalue")
    return diag, basis


def local_isotropy(form: Sequence[Sequence], p: Place) -> bool:
    """Whether the form represents 0 nontrivially over Q_p (R at INFINITY)"""
    diag, _ = _diagonal_model(form)
    return _isotropic_at(diag, p)


def relevant_places(diag: Sequence[Fraction]) -> List[Place]:
    """∞, 2 and the odd primes dividing some coefficient"""
    primes = {2}
    for a in diag:
        a = Fraction(a)
        primes.update(factorint(abs(a.numerator)))
        primes.update(factorint(a.denominator))
    return [INFINITY] + sorted(primes)


def first_obstruction(diag: Sequence[Fraction]) -> Optional[Place]:
    """The first place where the form is anisotropic, or None"""
    for p in relevant_places(diag):
        if not _isotropic_at(diag, p):
            return p
    return None


# ===== WITNESSES =====

def _squarefree_model(diag: Sequence[Fraction]) -> Tuple[List[int], List[Fraction]]:
    """
    Squarefree integers s_i and scales c_i with a_i·(c_i·y)² = s_i·y²

    a = p/q is rewritten as p·q/q², and p·q = s·f² with s squarefree, so
    x_i = c_i·y_i with c_i = q/f turns integer solutions y into solutions x.
    """
    squarefree, scales = [], []
    for a in diag:
        a = Fraction(a)
        m = a.numerator * a.denominator
        s, f = (1 if m > 0 else -1), 1
        for p, e in factorint(abs(m)).items():
            s *= p ** (e % 2)
            f *= p ** (e // 2)
        squarefree.append(s)
        scales.append(Fraction(a.denominator, f))
    return squarefree, scales


def _search_coordinates(diag: Sequence) -> List[int]:
    """At most free+1 coordinates carrying both signs"""
    size = constants.WITNESS_SEARCH_FREE_COORDS + 1
    if len(diag) <= size:
        return list(range(len(diag)))
    chosen = [next(i for i, a in enumerate(diag) if a > 0), next(i for i, a in enumerate(diag) if a < 0)]
    for i in range(len(diag)):
        if len(chosen) == size:
            break
        if i not in chosen:
            chosen.append(i)
    return sorted(chosen)


def _shell(size: int, radius: int) -> List[Tuple[int, ...]]:
    """Integer tails with max |t_i| = radius, smallest first"""
    tails = [t for t in product(range(-radius, radius + 1), repeat=size) if max(map(abs, t)) == radius]
    tails.sort(key=lambda t: (sum(map(abs, t)), tuple(-abs(x) for x in t), tuple(-x for x in t)))
    return tails


def _search_bound(squarefree: Sequence[int]) -> int:
    """10 times the product of the prime powers dividing the determinant"""
    det = 1
    for s in squarefree:
        det *= s
    return 10 * abs(det)


def _diagonal_witness(diag: Sequence[Fraction]) -> Optional[List[Fraction]]:
    """
    Bounded search for a nonzero solution of Σ a_i x_i² = 0

    Runs on the squarefree integer model; every chosen coordinate takes a
    turn as the pivot whose square is solved for. The search stops at the
    radius bound or when the work budget is spent.
    """
    squarefree, scales = _squarefree_model(diag)
    coords = _search_coordinates(squarefree)
    if len(coords) < 2:
        return None
    budget = constants.WITNESS_SEARCH_BUDGET
    for radius in range(1, _search_bound(squarefree) + 1):
        for k, pivot in enumerate(coords):
            tail_coords = coords[:k] + coords[k + 1:]
            for tail in _shell(len(tail_coords), radius):
                budget -= 1
                if budget < 0:
                    return None
                rest = sum(squarefree[i] * t * t for i, t in zip(tail_coords, tail))
                if rest % squarefree[pivot]:
                    continue
                square = -rest // squarefree[pivot]
                if square < 0 or isqrt(square) ** 2 != square:
                    continue
                y = [0] * len(diag)
                y[pivot] = isqrt(square)
                for i, t in zip(tail_coords, tail):
                    y[i] = t
                return [scales[i] * y[i] for i in range(len(diag))]
    return None


def primitive(v: Sequence[Fraction]) -> Vector:
    """Primitive integer multiple with positive first nonzero entry"""
    v = [Fraction(x) for x in v]
    scale = lcm(*(x.denominator for x in v))
    ints = [int(x * scale) for x in v]
    g = gcd(*ints) or 1
    ints = [x // g for x in ints]
    lead = next((x for x in ints if x), 1)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(Fraction(x) for x in ints)


def find_isotropic_vector(form: Sequence[Sequence]) -> Optional[Vector]:
    """An isotropic vector of the form in its own coordinates, if one is found"""
    diag, basis = _diagonal_model(form)
    x = _diagonal_witness(diag)
    if x is None:
        return None
    n = len(diag)
    v = [sum((x[k] * basis[k][i] for k in range(n)), Fraction(0)) for i in range(n)]
    v = primitive(v)
    if linalg.bilinear(v, linalg.fraction_matrix(form), v) != 0:
        raise VerificationFailure(f"witness {v} is not isotropic")
    return v


# ===== HYPERBOLIC SPLITTING =====

def hyperbolic_complement(form: Sequence[Sequence], v: Sequence[Fraction]) -> Tuple[Tuple[Fraction, ...], ...]:
    """Gram matrix of H^⊥ for a hyperbolic plane H through the isotropic v"""
    gram = linalg.fraction_matrix(form)
    gv = linalg.matvec(gram, v)
    partner = next(i for i, x in enumerate(gv) if x != 0)
    rows = [gv, gram[partner]]
    basis = linalg.nullspace(rows, len(gram))
    return tuple(
        tuple(linalg.bilinear(b, gram, c) for c in basis)
        for b in basis
    )


def _signature_of(diag: Sequence[Fraction]) -> Signature:
    return Signature(sum(1 for a in diag if a > 0), sum(1 for a in diag if a < 0))


def witt_index(form: Union[Lattice, Sequence[Sequence]]) -> WittReport:
    """
    Witt index of a non-degenerate rational form

    An anisotropic verdict names the place where local solubility fails.
    When local data say isotropic but the bounded search finds no vector,
    the report is INCONCLUSIVE and its index is a lower bound.
    """
    if isinstance(form, Lattice):
        form = form.gram
    diag, _ = _diagonal_model(form)
    sig = _signature_of(diag)
    n = len(diag)
    if sig.is_definite():
        return WittReport(n, sig, 0, obstruction=INFINITY)
    if n < 5:
        place = first_obstruction(diag)
        if place is not None:
            logger.debug(f"[Witt] anisotropic at {place}")
            return WittReport(n, sig, 0, obstruction=place)
    witness = find_isotropic_vector(form)
    if witness is None:
        logger.warning(f"[Witt] ❌ no isotropic vector within the search bound (rank {n})")
        return WittReport(n, sig, 1 if n >= 5 else 0, status=WittStatus.INCONCLUSIVE)
    rest = witt_index(hyperbolic_complement(form, witness)) if n > 2 else None
    if rest is None:
        return WittReport(n, sig, 1, witness)
    return WittReport(n, sig, 1 + rest.witt_index, witness, rest.status)


def hermitian_witt_index(form: Union[Lattice, Sequence[Sequence]], field_disc: Optional[int] = None) -> int:
    """Witt index over K: half the index of the trace form"""
    if isinstance(form, Lattice):
        if not form.is_unitary:
            raise WrongCase("hermitian_witt_index needs a unitary lattice")
        gram = form.gram
    else:
        if field_disc is None:
            raise WrongCase("a Hermitian matrix needs its field")
        field = QuadraticField(field_disc)
        gram_h = tuple(tuple(field.element(*e) if isinstance(e, tuple) else e for e in row) for row in form)
        gram = hermitian_trace_gram(field, gram_h)
    return witt_index(gram).witt_index // 2
