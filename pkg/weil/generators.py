"""
Generators m(A), n(B), S of the metaplectic and unitary groups, and words in them

A word g_1·g_2·…·g_k acts on the group ring by the ordered product of the
letter matrices and on the half-space by the product of the letter group
matrices. m(A) = diag(A, A^{-*}), n(B) = [[I, B], [0, I]], S = [[0, −I], [I, 0]].
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Sequence, Tuple

from arith import linalg
from arith.quadratic import KElement, QuadraticField
from utils.dataclasses import Case, GeneratorKind
from utils.errors import NotUnimodular, ParseError, SizeMismatch, WrongCase

Payload = Optional[Tuple[Tuple[Any, ...], ...]]


@dataclass(frozen=True)
class Generator:
    kind: GeneratorKind
    payload: Payload = None

    @property
    def size(self) -> Optional[int]:
        return len(self.payload) if self.payload is not None else None

    def __repr__(self):
        if self.kind is GeneratorKind.S:
            return "S"
        return f"{self.kind.value}({[list(row) for row in self.payload]})"


@dataclass(frozen=True)
class GroupWord:
    """
    Ordered letters with their genus and case

    `source` records the matrix a word was factored from; the metaplectic
    lift a word realizes is always the product of the canonical letter lifts.
    """
    letters: Tuple[Generator, ...]
    genus: int = 1
    case: Case = Case.ORTHOGONAL
    field_disc: Optional[int] = None
    source: Optional[Tuple[Tuple[int, ...], ...]] = None

    def __len__(self):
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __repr__(self):
        return "(" + ", ".join(repr(g) for g in self.letters) + ")"


# ===== CONSTRUCTORS =====

def _matrix(rows) -> Tuple[Tuple[Any, ...], ...]:
    return tuple(tuple(row) for row in rows)


def S() -> Generator:
    return Generator(GeneratorKind.S)


def T(b: int = 1) -> Generator:
    return Generator(GeneratorKind.N, ((b,),))


def m(A: Sequence[Sequence[Any]]) -> Generator:
    return Generator(GeneratorKind.M, _matrix(A))


def n(B: Sequence[Sequence[Any]]) -> Generator:
    return Generator(GeneratorKind.N, _matrix(B))


def word(*letters: Generator, genus: int = 1, case: Case = Case.ORTHOGONAL, field_disc: Optional[int] = None) -> GroupWord:
    w = GroupWord(tuple(letters), genus, case, field_disc)
    validate_word(w)
    return w


# ===== VALIDATION =====

def _is_integral(x: Any) -> bool:
    if isinstance(x, KElement):
        return x.is_integral()
    return Fraction(x).denominator == 1


def _entries_for_case(case: Case, payload) -> None:
    for row in payload:
        for x in row:
            if case is Case.ORTHOGONAL and isinstance(x, KElement) and not x.is_rational():
                raise WrongCase("orthogonal generators need integer payloads")
            if not _is_integral(x):
                raise ParseError(f"payload entry {x} is not integral")


def validate_generator(g: Generator, genus: int, case: Case, field_disc: Optional[int] = None) -> None:
    if g.kind is GeneratorKind.S:
        if g.payload is not None:
            raise ParseError("S takes no payload")
        return
    if g.payload is None or g.size != genus or any(len(row) != genus for row in g.payload):
        raise SizeMismatch(f"{g.kind.value} payload must be {genus}×{genus}")
    _entries_for_case(case, g.payload)
    if case is Case.UNITARY and field_disc is None:
        raise WrongCase("unitary generators need the field of the lattice")
    if g.kind is GeneratorKind.M:
        det = linalg.determinant(_lift_payload(g.payload, case, field_disc))
        if case is Case.ORTHOGONAL:
            if det not in (1, -1):
                raise NotUnimodular(f"det A = {det} is not ±1")
        else:
            try:
                QuadraticField(field_disc).unit_exponent(det)
            except ValueError:
                raise NotUnimodular(f"det A = {det} is not a unit of O_K")
    else:
        B = _lift_payload(g.payload, case, field_disc)
        for i in range(genus):
            for j in range(genus):
                partner = B[j][i].conj() if case is Case.UNITARY else B[j][i]
                if B[i][j] != partner:
                    raise ParseError("n(B) needs a symmetric (Hermitian) B")


def validate_word(w: GroupWord) -> None:
    for g in w.letters:
        validate_generator(g, w.genus, w.case, w.field_disc)


def _lift_payload(payload, case: Case, field_disc: Optional[int]):
    """Payload entries as Fractions (orthogonal) or K-elements (unitary)"""
    if case is Case.ORTHOGONAL:
        return tuple(tuple(Fraction(x.a) if isinstance(x, KElement) else Fraction(x) for x in row) for row in payload)
    field = QuadraticField(field_disc)
    return tuple(
        tuple(x if isinstance(x, KElement) else field.element(x) for x in row)
        for row in payload
    )


def payload_matrix(g: Generator, case: Case, field_disc: Optional[int] = None):
    return _lift_payload(g.payload, case, field_disc)


# ===== GROUP MATRICES =====

def _conj_transpose(M, case: Case):
    t = linalg.transpose(M)
    if case is Case.UNITARY:
        return tuple(tuple(x.conj() for x in row) for row in t)
    return t


def generator_group_matrix(g: Generator, genus: int, case: Case, field_disc: Optional[int] = None):
    """2r×2r matrix of a letter, entries Fraction or KElement"""
    like = QuadraticField(field_disc).zero if case is Case.UNITARY else Fraction(0)
    zero = like - like
    ident = linalg.identity(genus, like)
    zeros = tuple(tuple(zero for _ in range(genus)) for _ in range(genus))

    def block(a, b, c, d):
        return tuple(ra + rb for ra, rb in zip(a, b)) + tuple(rc + rd for rc, rd in zip(c, d))

    if g.kind is GeneratorKind.S:
        minus = tuple(tuple(-x for x in row) for row in ident)
        return block(zeros, minus, ident, zeros)
    payload = _lift_payload(g.payload, case, field_disc)
    if g.kind is GeneratorKind.N:
        return block(ident, payload, zeros, ident)
    inverse_star = linalg.inverse(_conj_transpose(payload, case))
    return block(payload, zeros, zeros, inverse_star)


def word_matrix(w: GroupWord):
    """Product g_1·…·g_k of the letter group matrices"""
    like = QuadraticField(w.field_disc).zero if w.case is Case.UNITARY else Fraction(0)
    result = linalg.identity(2 * w.genus, like)
    for g in w.letters:
        result = linalg.matmul(result, generator_group_matrix(g, w.genus, w.case, w.field_disc))
    return result


def blocks(M) -> Tuple[Any, Any, Any, Any]:
    """(A, B, C, D) of a 2r×2r matrix"""
    r = len(M) // 2
    A = tuple(row[:r] for row in M[:r])
    B = tuple(row[r:] for row in M[:r])
    C = tuple(row[:r] for row in M[r:])
    D = tuple(row[r:] for row in M[r:])
    return A, B, C, D


def as_unitary(w: GroupWord, field_disc: int) -> GroupWord:
    """An integer word read inside U_{r,r}(O_K)"""
    unitary = GroupWord(w.letters, w.genus, Case.UNITARY, field_disc, w.source)
    validate_word(unitary)
    return unitary
