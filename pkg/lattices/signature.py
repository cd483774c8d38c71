"""
Exact diagonalization of symmetric rational forms and sign counts
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from lattices.lattice import Lattice
from utils.errors import Degenerate


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int

    @property
    def rank(self) -> int:
        return self.positive + self.negative

    @property
    def difference(self) -> int:
        """b⁺ − b⁻"""
        return self.positive - self.negative

    def is_definite(self) -> bool:
        return self.positive == 0 or self.negative == 0

    def __iter__(self):
        return iter((self.positive, self.negative))


def _add_multiple(gram: List[List[Fraction]], basis: List[List[Fraction]], target: int, source: int, c: Fraction) -> None:
    """e_target ← e_target + c·e_source, updating the Gram matrix congruently"""
    n = len(gram)
    for k in range(n):
        gram[target][k] += c * gram[source][k]
    for k in range(n):
        gram[k][target] += c * gram[k][source]
    basis[target] = [x + c * y for x, y in zip(basis[target], basis[source])]


def _swap(gram: List[List[Fraction]], basis: List[List[Fraction]], i: int, j: int) -> None:
    gram[i], gram[j] = gram[j], gram[i]
    for row in gram:
        row[i], row[j] = row[j], row[i]
    basis[i], basis[j] = basis[j], basis[i]


def diagonalize(form: Sequence[Sequence]) -> Tuple[List[Fraction], List[Tuple[Fraction, ...]]]:
    """
    Symmetric reduction over Q

    Returns (diag, basis) with ⟨basis_i, basis_j⟩ = 0 for i ≠ j and
    ⟨basis_i, basis_i⟩ = diag_i. A zero pivot is swapped with a later nonzero
    diagonal entry, or repaired by e_k ← e_k + e_j when only an off-diagonal
    entry survives. Degenerate forms give zeros on the diagonal.
    """
    n = len(form)
    gram = [[Fraction(v) for v in row] for row in form]
    basis = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for k in range(n):
        if gram[k][k] == 0:
            swap = next((j for j in range(k + 1, n) if gram[j][j] != 0), None)
            if swap is not None:
                _swap(gram, basis, k, swap)
            else:
                partner = next((j for j in range(k + 1, n) if gram[k][j] != 0), None)
                if partner is None:
                    continue
                _add_multiple(gram, basis, k, partner, Fraction(1))
        pivot = gram[k][k]
        for j in range(k + 1, n):
            if gram[k][j] != 0:
                _add_multiple(gram, basis, j, k, -gram[k][j] / pivot)
    return [gram[i][i] for i in range(n)], [tuple(b) for b in basis]


def form_signature(form: Sequence[Sequence]) -> Signature:
    diag, _ = diagonalize(form)
    if any(d == 0 for d in diag):
        raise Degenerate("form has a zero eigenvalue")
    return Signature(sum(1 for d in diag if d > 0), sum(1 for d in diag if d < 0))


def signature(lattice: Lattice) -> Signature:
    """Signature of the real Gram form (trace form for unitary lattices)"""
    return form_signature(lattice.gram)


def hermitian_signature(lattice: Lattice) -> Signature:
    """Signature over K; each sign of the trace form is doubled"""
    sig = signature(lattice)
    return Signature(sig.positive // 2, sig.negative // 2)
