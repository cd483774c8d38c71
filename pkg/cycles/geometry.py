"""
Spans, orthogonal complements V_x and cusp incidence of special cycles
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence, Tuple

from arith import linalg
from arith.quadratic import QuadraticField
from lattices import lattice as lat
from lattices.lattice import Lattice, hermitian_trace_gram
from lattices.signature import Signature, diagonalize, form_signature
from cycles.witt import witt_index
from utils.dataclasses import Case
from utils.errors import NotIsotropic, NotPosDefSpan
from utils.logging_utils import get_logger

logger = get_logger(__name__)

Matrix = Tuple[Tuple[Any, ...], ...]


@dataclass(frozen=True)
class QuadraticSpace:
    """
    A rational (orthogonal) or K-Hermitian (unitary) form on a subspace

    `basis` is given in lattice coordinates (orthogonal) or in K-coordinates
    (unitary); `gram` is the form on that basis.
    """
    gram: Matrix
    basis: Tuple[Tuple[Any, ...], ...]
    case: Case = Case.ORTHOGONAL
    field_disc: Optional[int] = None

    @property
    def dimension(self) -> int:
        return len(self.gram)

    def rational_gram(self) -> Matrix:
        """The form itself, or its trace form over Q"""
        if self.case is Case.UNITARY:
            return hermitian_trace_gram(QuadraticField(self.field_disc), self.gram)
        return self.gram

    def signature(self) -> Signature:
        if not self.gram:
            return Signature(0, 0)
        sig = form_signature(self.rational_gram())
        if self.case is Case.UNITARY:
            return Signature(sig.positive // 2, sig.negative // 2)
        return sig


# ===== SPANS =====

def _k_rows(lattice: Lattice, x: Sequence[Sequence[Fraction]]):
    return [lat.to_k_coordinates(lattice, v) for v in x]


def span_rank(x: Sequence[Sequence[Fraction]], lattice: Optional[Lattice] = None) -> int:
    """Dimension of the span of x, over K for unitary lattices"""
    if not x:
        return 0
    if lattice is not None and lattice.is_unitary:
        return linalg.rank(_k_rows(lattice, x))
    return linalg.rank([[Fraction(c) for c in v] for v in x])


def _span_basis(rows):
    reduced, pivots = linalg.row_reduce(rows)
    return [tuple(reduced[i]) for i in range(len(pivots))]


def _hermitian_gram(lattice: Lattice, vectors) -> Matrix:
    """(⟨u, v⟩) for K-coordinate vectors"""
    h = lattice.gram_h
    m = len(h)
    return tuple(
        tuple(
            sum((u[a] * h[a][b] * v[b].conj() for a in range(m) for b in range(m)), lattice.field.zero)
            for v in vectors
        )
        for u in vectors
    )


def _check_positive_span(lattice: Lattice, x) -> None:
    if lattice.is_unitary:
        basis = _span_basis(_k_rows(lattice, x))
        form = hermitian_trace_gram(lattice.field, _hermitian_gram(lattice, basis)) if basis else ()
    else:
        basis = _span_basis([[Fraction(c) for c in v] for v in x])
        form = tuple(tuple(lattice.pairing(u, v) for v in basis) for u in basis)
    if not form:
        return
    diag, _ = diagonalize(form)
    if any(d <= 0 for d in diag):
        raise NotPosDefSpan("the span of x is not positive definite")


# ===== COMPLEMENTS =====

def complement_form(lattice: Lattice, x: Sequence[Sequence[Fraction]] = ()) -> QuadraticSpace:
    """V_x = x^⊥ with its form, in a computed rational (K-rational) basis"""
    _check_positive_span(lattice, x)
    if lattice.is_unitary:
        field = lattice.field
        m = lattice.hermitian_rank
        h = lattice.gram_h
        rows = [
            tuple(sum((h[a][b] * v[b].conj() for b in range(m)), field.zero) for a in range(m))
            for v in _k_rows(lattice, x)
        ]
        basis = linalg.nullspace(rows, m, like=field.zero)
        space = QuadraticSpace(_hermitian_gram(lattice, basis), tuple(basis), Case.UNITARY, lattice.field_disc)
    else:
        n = lattice.rank
        rows = [linalg.matvec(lattice.gram, [Fraction(c) for c in v]) for v in x]
        basis = linalg.nullspace(rows, n)
        gram = tuple(tuple(lattice.pairing(u, v) for v in basis) for u in basis)
        space = QuadraticSpace(gram, tuple(basis))
    logger.debug(f"[Complement] V_x of dimension {space.dimension} in {lattice!r}")
    return space


# ===== CUSPS =====

def _pair(lattice: Lattice, u, v):
    if lattice.is_unitary:
        return lat.hermitian_pairing(lattice, u, v)
    return lattice.pairing(u, v)


def cusp_incidence(lattice: Lattice, J: Sequence[Sequence[Fraction]], x: Sequence[Sequence[Fraction]]) -> bool:
    """
    J ⊆ V_x for the isotropic subspace spanned by J

    Only the given representative is tested; Γ-translates of J are not searched.
    """
    for a, u in enumerate(J):
        for v in J[a:]:
            if _pair(lattice, u, v) != 0:
                raise NotIsotropic("J does not span an isotropic subspace")
    return all(_pair(lattice, j, xi) == 0 for j in J for xi in x)


@dataclass(frozen=True)
class BoundaryProfile:
    signature: Signature
    witt_index: int
    case: Case
    inconclusive: bool = False

    @property
    def compact(self) -> bool:
        return self.witt_index == 0

    @property
    def zero_dimensional_cusps(self) -> bool:
        return self.witt_index >= 1

    @property
    def one_dimensional_cusps(self) -> bool:
        return self.case is Case.ORTHOGONAL and self.witt_index >= 2

    @property
    def zero_dim_only(self) -> bool:
        return self.witt_index == 1


def boundary_profile(lattice: Lattice, x: Sequence[Sequence[Fraction]] = ()) -> BoundaryProfile:
    """Which cusps the closure of the cycle of V_x can meet"""
    space = complement_form(lattice, x)
    if not space.gram:
        return BoundaryProfile(Signature(0, 0), 0, lattice.case)
    report = witt_index(space.rational_gram())
    index = report.witt_index // 2 if lattice.is_unitary else report.witt_index
    return BoundaryProfile(space.signature(), index, lattice.case, report.inconclusive)
