"""
Factorization of SL₂(Z) matrices into S and T = n(1)

The bottom row is reduced by continued fractions from the right:
M·T^q·S·T^q'·S… becomes ±[[1, b], [0, 1]], then the right factors are
inverted back onto the word.
"""
from typing import List, Sequence, Tuple

from utils.errors import NotUnimodular
from weil.generators import Generator, GroupWord, S, T

IntMatrix = Tuple[Tuple[int, int], Tuple[int, int]]

_S = ((0, -1), (1, 0))


def _mul(x: IntMatrix, y: IntMatrix) -> IntMatrix:
    return (
        (x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]),
        (x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]),
    )


def _t(q: int) -> IntMatrix:
    return ((1, q), (0, 1))


def _simplify(letters: List[Tuple[str, int]]) -> List[Tuple[str, int]]:
    """Merge T-powers, reduce S-runs mod 4, drop trivial letters"""
    out: List[Tuple[str, int]] = []
    for kind, value in letters:
        if out and out[-1][0] == kind:
            merged = out[-1][1] + value
            out.pop()
            value = merged
        if kind == "S":
            value %= 4
        if value:
            out.append((kind, value))
    return out


def factor_sl2(matrix: Sequence[Sequence[int]]) -> GroupWord:
    """Word in S and N(b) whose product is the matrix"""
    (a, b), (c, d) = (tuple(int(v) for v in row) for row in matrix)
    if a * d - b * c != 1:
        raise NotUnimodular(f"det = {a * d - b * c}, expected 1")
    current: IntMatrix = ((a, b), (c, d))
    right: List[Tuple[str, int]] = []
    while current[1][0] != 0:
        q = -(current[1][1] // current[1][0])
        if q:
            current = _mul(current, _t(q))
            right.append(("T", q))
        current = _mul(current, _S)
        right.append(("S", 1))
    # current = ±[[1, b'], [0, 1]]
    head: List[Tuple[str, int]] = []
    if current[0][0] == -1:
        head.append(("S", 2))
        head.append(("T", -current[0][1]))
    else:
        head.append(("T", current[0][1]))
    inverses = [("S", 3) if kind == "S" else ("T", -value) for kind, value in reversed(right)]
    letters = _simplify(head + inverses)
    generators: List[Generator] = []
    for kind, value in letters:
        if kind == "S":
            generators.extend([S()] * value)
        else:
            generators.append(T(value))
    return GroupWord(tuple(generators), source=((a, b), (c, d)))


def sl2_product(w: GroupWord) -> IntMatrix:
    """Multiply out an S/T word of genus 1"""
    result: IntMatrix = ((1, 0), (0, 1))
    for g in w.letters:
        if g.payload is None:
            result = _mul(result, _S)
        else:
            result = _mul(result, _t(int(g.payload[0][0])))
    return result
