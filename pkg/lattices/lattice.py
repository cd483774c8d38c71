"""
Even lattices given by a Gram matrix in a fixed basis

Orthogonal lattices carry a symmetric rational Gram matrix. Unitary lattices
carry a Hermitian Gram matrix over K = Q(√d) and, in `gram`, the Gram matrix
of their trace form in the Z-basis (b_1..b_m, ωb_1..ωb_m). Every discriminant
computation runs on `gram`.
"""
import hashlib
import dataclasses
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from arith import linalg
from arith.quadratic import KElement, QuadraticField
from utils.dataclasses import Case
from utils.errors import Degenerate, NotEven, ParseError, WrongCase

Vector = Tuple[Fraction, ...]
Matrix = Tuple[Tuple[Fraction, ...], ...]
KMatrix = Tuple[Tuple[KElement, ...], ...]


@dataclass(frozen=True)
class Lattice:
    gram: Matrix
    case: Case = Case.ORTHOGONAL
    field_disc: Optional[int] = None
    gram_h: Optional[KMatrix] = None
    label: str = dataclasses.field(default="", compare=False)

    @property
    def rank(self) -> int:
        """Z-rank"""
        return len(self.gram)

    @property
    def is_unitary(self) -> bool:
        return self.case is Case.UNITARY

    @property
    def hermitian_rank(self) -> int:
        if not self.is_unitary:
            raise WrongCase("hermitian_rank needs a unitary lattice")
        return len(self.gram_h)

    @property
    def field(self) -> QuadraticField:
        if not self.is_unitary:
            raise WrongCase("orthogonal lattices carry no imaginary quadratic field")
        return QuadraticField(self.field_disc)

    def pairing(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        """⟨x, y⟩ (trace form for unitary lattices)"""
        return linalg.bilinear(x, self.gram, y)

    def quadratic(self, x: Sequence[Fraction]) -> Fraction:
        """Q(x) = ½⟨x, x⟩"""
        return self.pairing(x, x) / 2

    def fingerprint(self) -> str:
        """Stable hash of the defining data"""
        parts = [self.case.value, str(self.field_disc)]
        if self.is_unitary:
            parts += [f"{e.a}:{e.b}" for row in self.gram_h for e in row]
        else:
            parts += [str(v) for row in self.gram for v in row]
        return hashlib.sha256("|".join(parts).encode("utf-8")).hexdigest()[:16]

    def __repr__(self):
        name = self.label or "Lattice"
        return f"{name}(case={self.case.value}, rank={self.rank})"


# ===== VALIDATION =====

def _check_square(rows: Sequence[Sequence], what: str) -> None:
    n = len(rows)
    if n == 0:
        raise ParseError(f"{what} is empty")
    if any(len(row) != n for row in rows):
        raise ParseError(f"{what} is not square")


def check_even(gram: Sequence[Sequence[Fraction]]) -> None:
    """Integral pairing and even diagonal, or NotEven"""
    for i, row in enumerate(gram):
        for j, v in enumerate(row):
            if Fraction(v).denominator != 1:
                raise NotEven(f"pairing ⟨b_{i},b_{j}⟩ = {v} is not integral")
        if Fraction(row[i]) % 2:
            raise NotEven(f"Q(b_{i}) = {Fraction(row[i]) / 2} is not integral")


def _check_nondegenerate(gram: Matrix) -> None:
    if linalg.determinant(gram) == 0:
        raise Degenerate("Gram matrix has zero determinant")


def orthogonal_lattice(gram: Sequence[Sequence], label: str = "") -> Lattice:
    _check_square(gram, "gram")
    gram = linalg.fraction_matrix(gram)
    if not linalg.is_symmetric(gram):
        raise ParseError("gram is not symmetric")
    check_even(gram)
    _check_nondegenerate(gram)
    return Lattice(gram=gram, label=label)


def hermitian_trace_gram(field: QuadraticField, gram_h: KMatrix) -> Matrix:
    """Gram matrix of (x, y) = tr⟨x, y⟩ in the basis (b_1..b_m, ωb_1..ωb_m)"""
    m = len(gram_h)
    scalars = [field.one] * m + [field.omega] * m
    return tuple(
        tuple(
            (scalars[i] * gram_h[i % m][j % m] * scalars[j].conj()).trace()
            for j in range(2 * m)
        )
        for i in range(2 * m)
    )


def unitary_lattice(field_disc: int, gram_h: Sequence[Sequence], label: str = "") -> Lattice:
    field = QuadraticField(field_disc)
    _check_square(gram_h, "gram_h")
    gram_h = tuple(
        tuple(e if isinstance(e, KElement) else field.element(*e) for e in row)
        for row in gram_h
    )
    m = len(gram_h)
    for i in range(m):
        for j in range(i, m):
            if gram_h[i][j] != gram_h[j][i].conj():
                raise ParseError(f"gram_h is not Hermitian at ({i},{j})")
    gram = hermitian_trace_gram(field, gram_h)
    check_even(gram)
    _check_nondegenerate(gram)
    return Lattice(gram=gram, case=Case.UNITARY, field_disc=field_disc, gram_h=gram_h, label=label)


# ===== DERIVED LATTICES =====

def trace_form(lattice: Lattice) -> Lattice:
    if not lattice.is_unitary:
        raise WrongCase("trace_form needs a unitary lattice")
    label = f"tr({lattice.label})" if lattice.label else ""
    return Lattice(gram=lattice.gram, label=label)


def dual_transition(lattice: Lattice) -> Matrix:
    """Columns express the dual basis in the lattice basis"""
    return linalg.inverse(lattice.gram)


def determinant(lattice: Lattice) -> Fraction:
    return linalg.determinant(lattice.gram)


def direct_sum(first: Lattice, second: Lattice, label: str = "") -> Lattice:
    if first.is_unitary or second.is_unitary:
        raise WrongCase("direct_sum is implemented for orthogonal lattices")
    n, m = first.rank, second.rank
    zero = Fraction(0)
    gram = tuple(row + (zero,) * m for row in first.gram) + tuple((zero,) * n + row for row in second.gram)
    return Lattice(gram=gram, label=label)


def rescale(lattice: Lattice, factor: int, label: str = "") -> Lattice:
    """L(factor): the same module with the form multiplied by factor"""
    if lattice.is_unitary:
        return unitary_lattice(
            lattice.field_disc,
            [[e * factor for e in row] for row in lattice.gram_h],
            label=label,
        )
    return orthogonal_lattice([[v * factor for v in row] for row in lattice.gram], label=label)


# ===== K-STRUCTURE OF UNITARY LATTICES =====

def omega_matrix(lattice: Lattice) -> Tuple[Tuple[int, ...], ...]:
    """Integer matrix of multiplication by ω on trace-form coordinates"""
    field = lattice.field
    m = lattice.hermitian_rank
    t, n = field.omega_trace, int(field.omega_norm)
    rows = [[0] * (2 * m) for _ in range(2 * m)]
    # ω·b_j = ωb_j and ω·ωb_j = t·ωb_j − n·b_j
    for j in range(m):
        rows[m + j][j] = 1
        rows[j][m + j] = -n
        rows[m + j][m + j] = t
    return tuple(tuple(r) for r in rows)


def k_scale(lattice: Lattice, alpha: KElement, v: Sequence[Fraction]) -> Vector:
    """Trace-form coordinates of α·v"""
    w = linalg.matvec(omega_matrix(lattice), v)
    return tuple(alpha.a * x + alpha.b * y for x, y in zip(v, w))


def to_k_coordinates(lattice: Lattice, v: Sequence[Fraction]) -> Tuple[KElement, ...]:
    m = lattice.hermitian_rank
    field = lattice.field
    return tuple(field.element(v[j], v[m + j]) for j in range(m))


def from_k_coordinates(lattice: Lattice, xs: Sequence[KElement]) -> Vector:
    return tuple(x.a for x in xs) + tuple(x.b for x in xs)


def hermitian_pairing(lattice: Lattice, x: Sequence[Fraction], y: Sequence[Fraction]) -> KElement:
    """⟨x, y⟩ over K for trace-form coordinate vectors, K-linear in x"""
    xs, ys = to_k_coordinates(lattice, x), to_k_coordinates(lattice, y)
    total = lattice.field.zero
    for i, xi in enumerate(xs):
        for j, yj in enumerate(ys):
            total = total + xi * lattice.gram_h[i][j] * yj.conj()
    return total
