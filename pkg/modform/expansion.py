"""
Vector-valued q-expansions Σ c(T, μ) q^T e_μ

Keys are exact: T is an r×r matrix of Fractions (orthogonal) or of
K-elements (unitary), μ an index tuple into (L*/L)^r. Records are kept in
the canonical order (tr T, T entries, μ). For unitary expansions
q^T = e(exponent_scale·tr(Tτ)).
"""
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

from arith.quadratic import KElement, QuadraticField
from lattices.lattice import hermitian_trace_gram
from lattices.signature import diagonalize
from utils.dataclasses import Case
from utils.errors import FormatError

Matrix = Tuple[Tuple[Any, ...], ...]
Key = Tuple[Matrix, Tuple[int, ...]]
Record = Tuple[Key, Fraction]


def _entry_key(v: Any) -> Tuple[Fraction, Fraction]:
    if isinstance(v, KElement):
        return v.sort_key()
    return (Fraction(v), Fraction(0))


def trace(T: Matrix) -> Fraction:
    total = Fraction(0)
    for i in range(len(T)):
        v = T[i][i]
        total += v.a if isinstance(v, KElement) else Fraction(v)
    return total


def record_key(key: Key) -> Tuple:
    T, mu = key
    return (trace(T), tuple(_entry_key(v) for row in T for v in row), tuple(mu))


def is_positive_semidefinite(T: Matrix, case: Case = Case.ORTHOGONAL, field_disc: Optional[int] = None) -> bool:
    if not T:
        return True
    if case is Case.UNITARY:
        T = hermitian_trace_gram(QuadraticField(field_disc), T)
    diag, _ = diagonalize(T)
    return all(d >= 0 for d in diag)


@dataclass(frozen=True)
class QExpansion:
    genus: int
    weight: Fraction
    case: Case
    truncation: Fraction
    components: int
    coefficients: Tuple[Record, ...] = ()
    lattice_hash: str = ""
    mock: bool = False
    exponent_scale: int = 1
    field_disc: Optional[int] = None

    # ===== ACCESS =====

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self) -> Iterator[Record]:
        return iter(self.coefficients)

    def as_dict(self) -> Dict[Key, Fraction]:
        return dict(self.coefficients)

    def coefficient(self, T: Matrix, mu: Tuple[int, ...]) -> Fraction:
        return self.as_dict().get((T, tuple(mu)), Fraction(0))

    def exponents(self) -> List[Matrix]:
        """Distinct T in canonical order"""
        seen: List[Matrix] = []
        for (T, _), _ in self.coefficients:
            if T not in seen:
                seen.append(T)
        return seen

    def is_zero(self) -> bool:
        return not self.coefficients

    # ===== DERIVED EXPANSIONS =====

    def with_coefficient(self, T: Matrix, mu: Tuple[int, ...], value: Fraction) -> "QExpansion":
        data = self.as_dict()
        data[(T, tuple(mu))] = Fraction(value)
        return replace(self, coefficients=canonical_records(data.items()))

    def truncated(self, bound: Fraction) -> "QExpansion":
        kept = [(k, v) for k, v in self.coefficients if trace(k[0]) <= bound]
        return replace(self, truncation=min(Fraction(bound), self.truncation), coefficients=tuple(kept))

    def __repr__(self):
        flag = ", mock" if self.mock else ""
        return (f"QExpansion(genus={self.genus}, weight={self.weight}, case={self.case.value}, "
                f"truncation={self.truncation}, records={len(self)}{flag})")


def canonical_records(items: Iterable[Record]) -> Tuple[Record, ...]:
    """Drop zero coefficients and sort"""
    kept = [((T, tuple(mu)), Fraction(c)) for (T, mu), c in items if c != 0]
    kept.sort(key=lambda item: record_key(item[0]))
    return tuple(kept)


def build_expansion(
    coefficients: Dict[Key, Fraction],
    *,
    genus: int,
    weight: Fraction,
    case: Case,
    truncation: Fraction,
    components: int,
    lattice_hash: str = "",
    mock: bool = False,
    exponent_scale: int = 1,
    field_disc: Optional[int] = None,
) -> QExpansion:
    """Validate keys and freeze into canonical order"""
    truncation = Fraction(truncation)
    for T, mu in coefficients:
        if len(T) != genus or any(len(row) != genus for row in T):
            raise FormatError(f"exponent {T} does not have genus {genus}")
        if len(mu) != genus or any(not 0 <= i < components for i in mu):
            raise FormatError(f"component {mu} out of range")
        if trace(T) > truncation:
            raise FormatError(f"exponent {T} lies beyond the truncation {truncation}")
        if not is_positive_semidefinite(T, case, field_disc):
            raise FormatError(f"exponent {T} is not positive semi-definite")
    return QExpansion(
        genus=genus,
        weight=Fraction(weight),
        case=case,
        truncation=truncation,
        components=components,
        coefficients=canonical_records(coefficients.items()),
        lattice_hash=lattice_hash,
        mock=mock,
        exponent_scale=exponent_scale,
        field_disc=field_disc,
    )


def scalar_expansion(values: Dict[Fraction, Fraction], weight: Fraction, truncation: Fraction, mock: bool = False) -> QExpansion:
    """Genus-1 scalar series Σ a(N) q^N"""
    data = {(((Fraction(n),),), (0,)): Fraction(c) for n, c in values.items()}
    return build_expansion(
        data, genus=1, weight=weight, case=Case.ORTHOGONAL,
        truncation=truncation, components=1, mock=mock,
    )
