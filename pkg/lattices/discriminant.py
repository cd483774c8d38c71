"""
Discriminant groups L*/L with their quadratic and bilinear forms

The Smith normal form D = P·G·Q of the Gram matrix gives generators
g_i = Q[:, i] / d_i of L*/L ≅ ⊕ Z/d_i (factors with d_i = 1 dropped).
Elements are coordinate tuples a with 0 ≤ a_i < d_i, enumerated in
lexicographic order; tuples of elements use the mixed-radix order.
"""
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import product
from typing import Dict, Iterator, List, Sequence, Tuple

from arith import linalg
from arith.quadratic import KElement
from lattices import lattice as lat
from lattices.lattice import Lattice
from lattices.smith import smith_normal_form, unimodular_inverse

Coords = Tuple[int, ...]
Vector = Tuple[Fraction, ...]


@dataclass(frozen=True)
class DiscriminantGroup:
    lattice: Lattice
    elementary_divisors: Tuple[int, ...]
    generators: Tuple[Vector, ...]
    coordinate_rows: Tuple[Tuple[int, ...], ...]

    # ===== STRUCTURE =====

    @property
    def order(self) -> int:
        total = 1
        for d in self.elementary_divisors:
            total *= d
        return total

    @property
    def is_trivial(self) -> bool:
        return not self.elementary_divisors

    @cached_property
    def elements(self) -> Tuple[Coords, ...]:
        return tuple(product(*(range(d) for d in self.elementary_divisors)))

    @cached_property
    def _positions(self) -> Dict[Coords, int]:
        return {c: i for i, c in enumerate(self.elements)}

    def index(self, coords: Coords) -> int:
        return self._positions[tuple(coords)]

    @property
    def zero(self) -> Coords:
        return tuple(0 for _ in self.elementary_divisors)

    # ===== LIFTS =====

    def lift(self, coords: Coords) -> Vector:
        """Representative in L*, in lattice coordinates"""
        n = self.lattice.rank
        out = [Fraction(0)] * n
        for a, g in zip(coords, self.generators):
            if a:
                out = [x + a * y for x, y in zip(out, g)]
        return tuple(out)

    def coords_of(self, v: Sequence[Fraction]) -> Coords:
        """Class of a dual vector; ValueError when v ∉ L*"""
        out = []
        for d, row in zip(self.elementary_divisors, self.coordinate_rows):
            w = sum((c * Fraction(x) for c, x in zip(row, v)), Fraction(0)) * d
            if w.denominator != 1:
                raise ValueError(f"{v} is not in the dual lattice")
            out.append(int(w) % d)
        self._check_in_dual(v)
        return tuple(out)

    def _check_in_dual(self, v: Sequence[Fraction]) -> None:
        for value in linalg.matvec(self.lattice.gram, v):
            if Fraction(value).denominator != 1:
                raise ValueError(f"{v} is not in the dual lattice")

    # ===== GROUP LAW =====

    def add(self, x: Coords, y: Coords) -> Coords:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.elementary_divisors))

    def neg(self, x: Coords) -> Coords:
        return tuple((-a) % d for a, d in zip(x, self.elementary_divisors))

    def scale(self, k: int, x: Coords) -> Coords:
        return tuple((k * a) % d for a, d in zip(x, self.elementary_divisors))

    def k_scale(self, alpha: KElement, x: Coords) -> Coords:
        """α·x for α ∈ O_K on a unitary lattice"""
        return self.coords_of(lat.k_scale(self.lattice, alpha, self.lift(x)))

    # ===== FORMS =====

    def q(self, x: Coords) -> Fraction:
        """Q(lift) mod 1"""
        return self.lattice.quadratic(self.lift(x)) % 1

    def b(self, x: Coords, y: Coords) -> Fraction:
        """⟨lift, lift⟩ mod 1"""
        return self.lattice.pairing(self.lift(x), self.lift(y)) % 1

    @cached_property
    def q_values(self) -> Tuple[Fraction, ...]:
        return tuple(self.q(x) for x in self.elements)

    @cached_property
    def b_table(self) -> Tuple[Tuple[Fraction, ...], ...]:
        lifts = [self.lift(x) for x in self.elements]
        images = [linalg.matvec(self.lattice.gram, v) for v in lifts]
        return tuple(
            tuple(sum((a * c for a, c in zip(u, image)), Fraction(0)) % 1 for image in images)
            for u in lifts
        )

    def hermitian_pairing(self, x: Coords, y: Coords) -> KElement:
        """⟨lift(x), lift(y)⟩ over K, not reduced"""
        return lat.hermitian_pairing(self.lattice, self.lift(x), self.lift(y))

    # ===== TUPLES =====

    def tuples(self, r: int) -> Iterator[Tuple[int, ...]]:
        """Index tuples (i_1..i_r) of (L*/L)^r in canonical order"""
        return product(range(self.order), repeat=r)

    def tuple_index(self, indices: Sequence[int]) -> int:
        """Mixed-radix position of an index tuple"""
        position = 0
        for i in indices:
            position = position * self.order + i
        return position

    def __repr__(self):
        factors = " ⊕ ".join(f"Z/{d}" for d in self.elementary_divisors) or "0"
        return f"DiscriminantGroup({factors})"


@lru_cache(maxsize=256)
def discriminant_group(lattice: Lattice) -> DiscriminantGroup:
    gram = [[int(v) for v in row] for row in lattice.gram]
    form = smith_normal_form(gram)
    q_inverse = unimodular_inverse(form.Q)
    n = lattice.rank
    divisors: List[int] = []
    generators: List[Vector] = []
    rows: List[Tuple[int, ...]] = []
    for i, d in enumerate(form.diagonal):
        if d == 1:
            continue
        divisors.append(d)
        generators.append(tuple(Fraction(form.Q[k][i], d) for k in range(n)))
        rows.append(q_inverse[i])
    return DiscriminantGroup(
        lattice=lattice,
        elementary_divisors=tuple(divisors),
        generators=tuple(generators),
        coordinate_rows=tuple(rows),
    )
