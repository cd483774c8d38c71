"""
Exact linear algebra over any field element type

Works with Fraction, GaussianRational and KElement alike: elements need
+, -, *, / and comparison against 0. Matrices are row-major sequences;
results are tuples of tuples.
"""
from fractions import Fraction
from typing import Any, List, Sequence, Tuple

Matrix = Tuple[Tuple[Any, ...], ...]


def as_matrix(rows: Sequence[Sequence[Any]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def fraction_matrix(rows: Sequence[Sequence[Any]]) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def _lift(x: Any) -> Any:
    return Fraction(x) if isinstance(x, int) else x


def _zero_like(x: Any) -> Any:
    return x - x


def _one_like(x: Any) -> Any:
    zero = x - x
    return zero + 1


def identity(n: int, like: Any = Fraction(0)) -> Matrix:
    zero, one = _zero_like(like), _one_like(like)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[Any]]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> Matrix:
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            acc = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                acc = acc + x * y
            out_row.append(acc)
        out.append(tuple(out_row))
    return tuple(out)


def matvec(a: Sequence[Sequence[Any]], v: Sequence[Any]) -> Tuple[Any, ...]:
    out = []
    for row in a:
        acc = row[0] * v[0]
        for x, y in zip(row[1:], v[1:]):
            acc = acc + x * y
        out.append(acc)
    return tuple(out)


def bilinear(x: Sequence[Any], gram: Sequence[Sequence[Any]], y: Sequence[Any]) -> Any:
    """xᵗ·gram·y"""
    return sum((xi * gij * yj for xi, row in zip(x, gram) for gij, yj in zip(row, y)), Fraction(0))


def mat_add(a: Sequence[Sequence[Any]], b: Sequence[Sequence[Any]]) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c: Any, a: Sequence[Sequence[Any]]) -> Matrix:
    return tuple(tuple(c * x for x in row) for row in a)


def is_symmetric(m: Sequence[Sequence[Any]]) -> bool:
    n = len(m)
    return all(m[i][j] == m[j][i] for i in range(n) for j in range(i + 1, n))


def row_reduce(m: Sequence[Sequence[Any]]) -> Tuple[List[List[Any]], List[int]]:
    """Reduced row echelon form and the pivot columns"""
    rows = [[_lift(x) for x in r] for r in m]
    if not rows:
        return rows, []
    n_rows, n_cols = len(rows), len(rows[0])
    pivots: List[int] = []
    r = 0
    for c in range(n_cols):
        pivot = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return rows, pivots


def rank(m: Sequence[Sequence[Any]]) -> int:
    if not m or not m[0]:
        return 0
    return len(row_reduce(m)[1])


def nullspace(m: Sequence[Sequence[Any]], n_cols: int, like: Any = Fraction(0)) -> List[Tuple[Any, ...]]:
    """Basis of {v : m·v = 0}, one vector per free column, in column order"""
    zero, one = _zero_like(like), _one_like(like)
    if not m:
        return [tuple(one if i == j else zero for i in range(n_cols)) for j in range(n_cols)]
    reduced, pivots = row_reduce(m)
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for f in free:
        v = [zero] * n_cols
        v[f] = one
        for row_idx, p in enumerate(pivots):
            v[p] = -reduced[row_idx][f]
        basis.append(tuple(v))
    return basis


def determinant(m: Sequence[Sequence[Any]]) -> Any:
    n = len(m)
    if n == 0:
        return Fraction(1)
    rows = [[_lift(x) for x in r] for r in m]
    det = _one_like(rows[0][0])
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return _zero_like(rows[0][0])
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det = det * rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[c][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def inverse(m: Sequence[Sequence[Any]]) -> Matrix:
    """Gauss-Jordan inverse; raises ZeroDivisionError when singular"""
    n = len(m)
    if n == 0:
        return ()
    like = m[0][0]
    ident = identity(n, like)
    augmented = [list(row) + list(id_row) for row, id_row in zip(m, ident)]
    reduced, pivots = row_reduce(augmented)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(tuple(row[n:]) for row in reduced)


def solve(m: Sequence[Sequence[Any]], b: Sequence[Any]) -> Tuple[Any, ...]:
    """A solution of m·x = b, raising ValueError when inconsistent"""
    n_cols = len(m[0])
    augmented = [list(row) + [bi] for row, bi in zip(m, b)]
    reduced, pivots = row_reduce(augmented)
    if n_cols in pivots:
        raise ValueError("inconsistent system")
    zero = _zero_like(b[0])
    x = [zero] * n_cols
    for row_idx, p in enumerate(pivots):
        x[p] = reduced[row_idx][n_cols]
    return tuple(x)


def leading_minors(m: Sequence[Sequence[Any]]) -> List[Any]:
    return [determinant([row[:k] for row in m[:k]]) for k in range(1, len(m) + 1)]
