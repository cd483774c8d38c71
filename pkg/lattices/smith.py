"""
Smith normal form of an integer matrix with unimodular transforms

D = P·A·Q with P, Q unimodular and D diagonal, d_1 | d_2 | … , d_i ≥ 0.
Elementary row operations accumulate into P, column operations into Q.
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

IntMatrix = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class SmithForm:
    D: IntMatrix
    P: IntMatrix
    Q: IntMatrix

    @property
    def diagonal(self) -> Tuple[int, ...]:
        return tuple(self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0)))


class _SNF:
    """Smith normal form for an n×m integer matrix"""

    def __init__(self, a: Sequence[Sequence[int]]):
        self._A = [[int(x) for x in row] for row in a]
        self._n = len(self._A)
        self._m = len(self._A[0]) if self._A else 0
        self._P = [[int(i == j) for j in range(self._n)] for i in range(self._n)]
        self._Q = [[int(i == j) for j in range(self._m)] for i in range(self._m)]

    # ===== ELEMENTARY OPERATIONS =====

    def _swap_rows(self, i: int, j: int) -> None:
        if i != j:
            self._A[i], self._A[j] = self._A[j], self._A[i]
            self._P[i], self._P[j] = self._P[j], self._P[i]

    def _swap_cols(self, i: int, j: int) -> None:
        if i != j:
            for row in self._A:
                row[i], row[j] = row[j], row[i]
            for row in self._Q:
                row[i], row[j] = row[j], row[i]

    def _add_row(self, target: int, source: int, factor: int) -> None:
        """row_target += factor·row_source"""
        if factor:
            self._A[target] = [x + factor * y for x, y in zip(self._A[target], self._A[source])]
            self._P[target] = [x + factor * y for x, y in zip(self._P[target], self._P[source])]

    def _add_col(self, target: int, source: int, factor: int) -> None:
        """col_target += factor·col_source"""
        if factor:
            for row in self._A:
                row[target] += factor * row[source]
            for row in self._Q:
                row[target] += factor * row[source]

    def _negate_row(self, i: int) -> None:
        self._A[i] = [-x for x in self._A[i]]
        self._P[i] = [-x for x in self._P[i]]

    # ===== ALGORITHM =====

    def _smallest_pivot(self, t: int) -> Optional[Tuple[int, int]]:
        best = None
        for i in range(t, self._n):
            for j in range(t, self._m):
                v = self._A[i][j]
                if v and (best is None or abs(v) < abs(self._A[best[0]][best[1]])):
                    best = (i, j)
        return best

    def _clear_cross(self, t: int) -> bool:
        """Reduce row t and column t modulo the pivot; True when both are clear"""
        pivot = self._A[t][t]
        clear = True
        for i in range(t + 1, self._n):
            self._add_row(i, t, -(self._A[i][t] // pivot))
            clear &= self._A[i][t] == 0
        for j in range(t + 1, self._m):
            self._add_col(j, t, -(self._A[t][j] // pivot))
            clear &= self._A[t][j] == 0
        return clear

    def _non_divisible_row(self, t: int) -> Optional[int]:
        pivot = self._A[t][t]
        for i in range(t + 1, self._n):
            for j in range(t + 1, self._m):
                if self._A[i][j] % pivot:
                    return i
        return None

    def run(self) -> SmithForm:
        for t in range(min(self._n, self._m)):
            while True:
                pivot = self._smallest_pivot(t)
                if pivot is None:
                    return self._result()
                self._swap_rows(t, pivot[0])
                self._swap_cols(t, pivot[1])
                if not self._clear_cross(t):
                    continue
                bad_row = self._non_divisible_row(t)
                if bad_row is None:
                    break
                self._add_row(t, bad_row, 1)
            if self._A[t][t] < 0:
                self._negate_row(t)
        return self._result()

    def _result(self) -> SmithForm:
        freeze = lambda rows: tuple(tuple(r) for r in rows)  # noqa: E731
        return SmithForm(D=freeze(self._A), P=freeze(self._P), Q=freeze(self._Q))


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithForm:
    return _SNF(a).run()


def unimodular_inverse(m: Sequence[Sequence[int]]) -> IntMatrix:
    """Inverse of a unimodular integer matrix, by the same reduction"""
    n = len(m)
    form = smith_normal_form(m)
    # D = P·M·Q = ±1 on the diagonal, so M⁻¹ = Q·D⁻¹·P
    signs: List[int] = [form.D[i][i] for i in range(n)]
    if any(abs(s) != 1 for s in signs):
        raise ValueError("matrix is not unimodular")
    return tuple(
        tuple(sum(form.Q[i][k] * signs[k] * form.P[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )
