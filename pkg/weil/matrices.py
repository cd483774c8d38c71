"""
Sparse square matrices of exact scalars

Stored by columns: column j maps row i to the nonzero entry M[i][j], so
M·e_j is column j. Monomial and diagonal Weil matrices stay cheap to
multiply; only Gauss-sum factors are dense.
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from arith.cyclotomic import ExactScalar
from arith.intervals import ComplexInterval

Column = Dict[int, ExactScalar]


class WeilMatrix:
    """Immutable dim×dim matrix of ExactScalar"""

    __slots__ = ("dim", "_columns")

    def __init__(self, dim: int, columns: Sequence[Column]):
        if len(columns) != dim:
            raise ValueError(f"expected {dim} columns, got {len(columns)}")
        self.dim = dim
        self._columns: Tuple[Column, ...] = tuple(
            {i: v for i, v in column.items() if not v.is_zero()} for column in columns
        )

    # ===== CONSTRUCTORS =====

    @classmethod
    def identity(cls, dim: int) -> "WeilMatrix":
        return cls(dim, [{j: ExactScalar.one()} for j in range(dim)])

    @classmethod
    def from_column_function(cls, dim: int, column: Callable[[int], Column], threads: int = 1) -> "WeilMatrix":
        """Build column by column; results are assembled in column order"""
        if threads > 1 and dim > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                columns = list(pool.map(column, range(dim)))
        else:
            columns = [column(j) for j in range(dim)]
        return cls(dim, columns)

    # ===== ACCESS =====

    def column(self, j: int) -> Column:
        return dict(self._columns[j])

    def entry(self, i: int, j: int) -> ExactScalar:
        return self._columns[j].get(i, ExactScalar.zero())

    def rows(self) -> List[List[ExactScalar]]:
        """Dense row-major copy"""
        zero = ExactScalar.zero()
        out = [[zero] * self.dim for _ in range(self.dim)]
        for j, column in enumerate(self._columns):
            for i, v in column.items():
                out[i][j] = v
        return out

    def nonzero_count(self) -> int:
        return sum(len(c) for c in self._columns)

    # ===== ALGEBRA =====

    def _apply_to_column(self, column: Column) -> Column:
        out: Column = {}
        for k, coeff in column.items():
            for i, v in self._columns[k].items():
                term = v * coeff
                out[i] = out[i] + term if i in out else term
        return out

    def matmul(self, other: "WeilMatrix", threads: int = 1) -> "WeilMatrix":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        return WeilMatrix.from_column_function(
            self.dim, lambda j: self._apply_to_column(other._columns[j]), threads
        )

    def __matmul__(self, other: "WeilMatrix") -> "WeilMatrix":
        return self.matmul(other)

    def apply(self, vector: Sequence[ExactScalar]) -> List[ExactScalar]:
        column = {k: v for k, v in enumerate(vector) if not v.is_zero()}
        image = self._apply_to_column(column)
        return [image.get(i, ExactScalar.zero()) for i in range(self.dim)]

    def scale(self, c: ExactScalar) -> "WeilMatrix":
        return WeilMatrix(self.dim, [{i: v * c for i, v in column.items()} for column in self._columns])

    def conj_transpose(self) -> "WeilMatrix":
        columns: List[Column] = [{} for _ in range(self.dim)]
        for j, column in enumerate(self._columns):
            for i, v in column.items():
                columns[i][j] = v.conj()
        return WeilMatrix(self.dim, columns)

    def power(self, k: int) -> "WeilMatrix":
        result = WeilMatrix.identity(self.dim)
        for _ in range(k):
            result = result @ self
        return result

    # ===== PREDICATES =====

    def __eq__(self, other):
        if not isinstance(other, WeilMatrix):
            return NotImplemented
        if other.dim != self.dim:
            return False
        for mine, theirs in zip(self._columns, other._columns):
            for i in set(mine) | set(theirs):
                if mine.get(i, ExactScalar.zero()) != theirs.get(i, ExactScalar.zero()):
                    return False
        return True

    __hash__ = None

    def scalar_value(self) -> Optional[ExactScalar]:
        """c when the matrix equals c·I, else None"""
        if self.dim == 0:
            return None
        c = self.entry(0, 0)
        for j, column in enumerate(self._columns):
            if set(column) - {j}:
                return None
            if self.entry(j, j) != c:
                return None
        return c

    def is_kronecker(self, left: "WeilMatrix", right: "WeilMatrix") -> bool:
        """Whether self = left ⊗ right in mixed-radix order, entry by entry"""
        if self.dim != left.dim * right.dim:
            return False
        for j, column in enumerate(self._columns):
            j1, j2 = divmod(j, right.dim)
            expected: Column = {}
            for i1, a in left._columns[j1].items():
                for i2, b in right._columns[j2].items():
                    expected[i1 * right.dim + i2] = a * b
            for i in set(column) | set(expected):
                if column.get(i, ExactScalar.zero()) != expected.get(i, ExactScalar.zero()):
                    return False
        return True

    def is_identity(self) -> bool:
        c = self.scalar_value()
        return c is not None and c == 1

    # ===== NUMERICS =====

    def embed_apply(self, vector: Sequence[ComplexInterval], precision: int) -> List[ComplexInterval]:
        """Interval image of an interval vector"""
        out = [ComplexInterval(0, 0) for _ in range(self.dim)]
        for j, column in enumerate(self._columns):
            for i, v in column.items():
                out[i] = out[i] + v.embed(precision) * vector[j]
        return out

    def abs_row_sums(self, precision: int) -> List[float]:
        """Upper bounds for Σ_j |M[i][j]|"""
        out = [0.0] * self.dim
        for column in self._columns:
            for i, v in column.items():
                out[i] += v.embed(precision).abs_upper()
        return out

    def __repr__(self):
        return f"WeilMatrix(dim={self.dim}, nonzero={self.nonzero_count()})"


def product(matrices: Iterable[WeilMatrix], dim: int, threads: int = 1) -> WeilMatrix:
    """Ordered product M_1·M_2·…"""
    result = WeilMatrix.identity(dim)
    for matrix in matrices:
        result = result.matmul(matrix, threads)
    return result
