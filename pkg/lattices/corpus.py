"""
Named lattices used by the verification suites and the tests
"""
import random
from typing import Dict, List, Optional

from lattices.lattice import Lattice, determinant, direct_sum, orthogonal_lattice, rescale, unitary_lattice
from lattices.signature import form_signature
from utils.errors import Degenerate

_E8_EDGES = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)]


def _cartan(rank: int, edges) -> List[List[int]]:
    gram = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]
    for i, j in edges:
        gram[i][j] = gram[j][i] = -1
    return gram


def a1() -> Lattice:
    return orthogonal_lattice([[2]], label="A1")


def a2() -> Lattice:
    return orthogonal_lattice([[2, 1], [1, 2]], label="A2")


def d4() -> Lattice:
    return orthogonal_lattice(_cartan(4, [(0, 1), (1, 2), (1, 3)]), label="D4")


def e8() -> Lattice:
    return orthogonal_lattice(_cartan(8, _E8_EDGES), label="E8")


def hyperbolic_plane() -> Lattice:
    return orthogonal_lattice([[0, 1], [1, 0]], label="U")


def a1_negative() -> Lattice:
    return rescale(a1(), -1, label="A1(-1)")


def gaussian_integers(scale: int = 1) -> Lattice:
    """O_K for K = Q(i) with ⟨x, y⟩ = scale·x·conj(y)"""
    return unitary_lattice(-1, [[(scale, 0)]], label=f"O_Q(i)({scale})")


def eisenstein_integers() -> Lattice:
    return unitary_lattice(-3, [[(1, 0)]], label="O_Q(√-3)")


def kleinian_integers() -> Lattice:
    return unitary_lattice(-7, [[(1, 0)]], label="O_Q(√-7)")


def hermitian_hyperbolic() -> Lattice:
    """O_K² over Q(i) with Gram diag(1, −1)"""
    return unitary_lattice(-1, [[(1, 0), (0, 0)], [(0, 0), (-1, 0)]], label="H_Q(i)(1,-1)")


def random_even_lattice(
    rng: random.Random,
    rank: int,
    entry_bound: int = 2,
    positive_definite: Optional[bool] = None,
    max_determinant: int = 25,
) -> Lattice:
    """Seeded random even lattice with |det| ≤ max_determinant"""
    while True:
        gram = [[0] * rank for _ in range(rank)]
        for i in range(rank):
            if positive_definite:
                gram[i][i] = 2 * rng.randint(1, entry_bound)
            else:
                gram[i][i] = 2 * rng.randint(-entry_bound, entry_bound)
            for j in range(i + 1, rank):
                gram[i][j] = gram[j][i] = rng.randint(-entry_bound, entry_bound)
        try:
            sig = form_signature(gram)
        except Degenerate:
            continue
        if positive_definite and sig.negative:
            continue
        if positive_definite is False and sig.negative == 0:
            continue
        lattice = orthogonal_lattice(gram, label=f"rand{rank}")
        if abs(determinant(lattice)) <= max_determinant:
            return lattice


def standard_corpus() -> Dict[str, Lattice]:
    """Fixed lattices of both signs of signature"""
    corpus = {
        "A1": a1(),
        "A2": a2(),
        "D4": d4(),
        "E8": e8(),
        "U": hyperbolic_plane(),
        "A1(-1)": a1_negative(),
    }
    corpus["U+A1"] = direct_sum(corpus["U"], corpus["A1"], label="U+A1")
    corpus["A1+A1(-1)"] = direct_sum(corpus["A1"], corpus["A1(-1)"], label="A1+A1(-1)")
    corpus["A2(-1)"] = rescale(corpus["A2"], -1, label="A2(-1)")
    return corpus


def random_corpus(seed: int, count: int = 10, max_rank: int = 4) -> Dict[str, Lattice]:
    rng = random.Random(seed)
    out: Dict[str, Lattice] = {}
    for k in range(count):
        rank = rng.randint(1, max_rank)
        lattice = random_even_lattice(rng, rank, positive_definite=(None if k % 2 else True))
        out[f"rand{k}"] = lattice
    return out


def positive_definite_corpus(seed: int, count: int = 6, max_rank: int = 4) -> Dict[str, Lattice]:
    rng = random.Random(seed)
    out = {"A1": a1(), "A2": a2(), "D4": d4()}
    for k in range(count):
        lattice = random_even_lattice(rng, rng.randint(1, max_rank), positive_definite=True)
        out[f"posrand{k}"] = lattice
    return out


def hermitian_corpus() -> Dict[str, Lattice]:
    return {
        "O_Q(i)": gaussian_integers(),
        "O_Q(i)(2)": gaussian_integers(2),
        "O_Q(√-3)": eisenstein_integers(),
        "O_Q(√-7)": kleinian_integers(),
        "H_Q(i)(1,-1)": hermitian_hyperbolic(),
    }
