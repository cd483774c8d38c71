"""
Lattice points of cosets μ + L in a positive definite lattice

Fincke-Pohst in exact arithmetic: Q(x) = Σ q_ii (x_i + Σ_{j>i} q_ij x_j)² is
expanded once per Gram matrix, then coordinates are fixed from the last one
down, each inside an integer window around its center. Tuples of vectors
(genus r) are assembled slot by slot from per-slot candidate lists, pruned
by the off-diagonal entries of T.

Unitary lattices enumerate on their trace form. T there is literal,
T = (½⟨x_j, x_i⟩) over K, so the trace-form value of slot i is 2·T_ii.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, isqrt
from typing import Any, Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from arith.quadratic import KElement
from lattices import lattice as lat
from lattices.discriminant import discriminant_group
from lattices.lattice import Lattice, hermitian_trace_gram
from lattices.signature import diagonalize
from modform.expansion import QExpansion, build_expansion
from utils.errors import IndefiniteLattice, NotPosDef, SizeMismatch
from utils.logging_utils import get_logger

logger = get_logger(__name__)

Vector = Tuple[Fraction, ...]
TupleVector = Tuple[Vector, ...]
Matrix = Tuple[Tuple[Any, ...], ...]


# ===== DECOMPOSITION =====

@dataclass(frozen=True)
class Decomposition:
    """Q(x) = Σ_i diagonal_i·(x_i + Σ_{j>i} upper_ij·x_j)²"""
    diagonal: Tuple[Fraction, ...]
    upper: Tuple[Tuple[Fraction, ...], ...]


@lru_cache(maxsize=128)
def quadratic_decomposition(gram: Matrix) -> Decomposition:
    """Square completion of Q = ½xᵗGx; IndefiniteLattice unless G > 0"""
    n = len(gram)
    q = [[Fraction(gram[i][j]) / 2 for j in range(n)] for i in range(n)]
    for i in range(n):
        if q[i][i] <= 0:
            raise IndefiniteLattice("enumeration needs a positive definite lattice")
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] = q[i][j] / q[i][i]
        for k in range(i + 1, n):
            for m in range(k, n):
                q[k][m] -= q[k][i] * q[i][m]
    return Decomposition(
        diagonal=tuple(q[i][i] for i in range(n)),
        upper=tuple(tuple(q[i][j] if j > i else Fraction(0) for j in range(n)) for i in range(n)),
    )


def _integer_window(shift: Fraction, radius_sq: Fraction) -> range:
    """Integers z with (z − shift)² ≤ radius_sq"""
    if radius_sq < 0:
        return range(0)
    r = isqrt(radius_sq.numerator // radius_sq.denominator) + 1
    lo, hi = floor(shift) - r, ceil(shift) + r
    while lo <= hi and (lo - shift) ** 2 > radius_sq:
        lo += 1
    while hi >= lo and (hi - shift) ** 2 > radius_sq:
        hi -= 1
    return range(lo, hi + 1)


def _walk(dec: Decomposition, shift: Vector, target: Fraction, exact: bool, top: Optional[int] = None) -> Iterator[Vector]:
    """
    Points x ∈ shift + Z^n with Q(x) = target (exact) or Q(x) ≤ target

    `top` pins the integer part of the last coordinate.
    """
    n = len(dec.diagonal)
    x = [Fraction(0)] * n

    def level(i: int, remaining: Fraction) -> Iterator[Vector]:
        center = -sum((dec.upper[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        window = _integer_window(center - shift[i], remaining / dec.diagonal[i])
        if i == n - 1 and top is not None:
            window = [top] if top in window else []
        for z in window:
            x[i] = shift[i] + z
            rest = remaining - dec.diagonal[i] * (x[i] - center) ** 2
            if i > 0:
                yield from level(i - 1, rest)
            elif rest == 0 or not exact:
                yield tuple(x)

    if n:
        yield from level(n - 1, Fraction(target))


def _top_window(dec: Decomposition, shift: Vector, target: Fraction) -> range:
    n = len(dec.diagonal)
    return _integer_window(-shift[n - 1], Fraction(target) / dec.diagonal[n - 1])


def _fan_out(dec: Decomposition, shift: Vector, target: Fraction, task: Callable[[int], Any], threads: int) -> List[Any]:
    """Run task over the top-coordinate fibers, results in fiber order"""
    fibers = list(_top_window(dec, shift, target))
    if threads > 1 and len(fibers) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(task, fibers))
    return [task(z) for z in fibers]


def _decomposition(lattice: Lattice) -> Decomposition:
    try:
        return quadratic_decomposition(lattice.gram)
    except IndefiniteLattice:
        raise IndefiniteLattice(f"{lattice!r} is not positive definite; its cycles are infinite")


def short_vectors(lattice: Lattice, coset: int, target: Fraction, exact: bool = True, threads: int = 1) -> List[Vector]:
    """
    Vectors of the coset with Q(x) = target, or Q(x) ≤ target when not exact

    Q is the lattice quadratic form (the trace form for unitary lattices).
    Sorted lexicographically.
    """
    dec = _decomposition(lattice)
    disc = discriminant_group(lattice)
    shift = disc.lift(disc.elements[coset])
    parts = _fan_out(dec, shift, target, lambda z: list(_walk(dec, shift, target, exact, z)), threads)
    vectors = sorted(v for part in parts for v in part)
    logger.debug(f"[Enumerator] ✅ {len(vectors)} vectors in coset {coset} at Q {'=' if exact else '≤'} {target}")
    return vectors


def count_vectors(lattice: Lattice, coset: int, target: Fraction, threads: int = 1) -> int:
    dec = _decomposition(lattice)
    disc = discriminant_group(lattice)
    shift = disc.lift(disc.elements[coset])
    counts = _fan_out(dec, shift, target, lambda z: sum(1 for _ in _walk(dec, shift, target, True, z)), threads)
    return sum(counts)


# ===== INTERSECTION MATRICES =====

def _coerce_entry(lattice: Lattice, v: Any) -> Any:
    if not lattice.is_unitary:
        return Fraction(v.a) if isinstance(v, KElement) else Fraction(v)
    if isinstance(v, KElement):
        return v
    if isinstance(v, (tuple, list)):
        return lattice.field.element(*v)
    return lattice.field.element(v)


def normalize_t(lattice: Lattice, T: Sequence[Sequence[Any]]) -> Matrix:
    """Exact, validated T: square, symmetric (Hermitian), positive semi-definite"""
    r = len(T)
    if any(len(row) != r for row in T):
        raise SizeMismatch("T must be square")
    T = tuple(tuple(_coerce_entry(lattice, v) for v in row) for row in T)
    limit = lattice.hermitian_rank if lattice.is_unitary else lattice.rank
    if r > limit:
        raise SizeMismatch(f"T of size {r} exceeds the rank {limit}")
    for i in range(r):
        for j in range(r):
            partner = T[j][i].conj() if lattice.is_unitary else T[j][i]
            if T[i][j] != partner:
                raise NotPosDef("T is not symmetric (Hermitian)")
    if not r:
        return T
    form = hermitian_trace_gram(lattice.field, T) if lattice.is_unitary else T
    diag, _ = diagonalize(form)
    if any(d < 0 for d in diag):
        raise NotPosDef(f"T = {[list(row) for row in T]} is not positive semi-definite")
    return T


def intersection_matrix(lattice: Lattice, x: Sequence[Sequence[Fraction]]) -> Matrix:
    """T = (½⟨x_j, x_i⟩), over K for unitary lattices"""
    r = len(x)
    if lattice.is_unitary:
        return tuple(
            tuple(lat.hermitian_pairing(lattice, x[j], x[i]) * Fraction(1, 2) for j in range(r))
            for i in range(r)
        )
    return tuple(tuple(lattice.pairing(x[j], x[i]) / 2 for j in range(r)) for i in range(r))


def _slot_target(lattice: Lattice, T: Matrix, i: int) -> Fraction:
    if lattice.is_unitary:
        return 2 * T[i][i].a
    return T[i][i]


def _pair_matches(lattice: Lattice, T: Matrix, xs: Sequence[Vector], j: int, x: Vector) -> bool:
    """Slot j against every earlier slot"""
    for i in range(j):
        if lattice.is_unitary:
            if lat.hermitian_pairing(lattice, x, xs[i]) != 2 * T[i][j]:
                return False
        elif lattice.pairing(xs[i], x) != 2 * T[i][j]:
            return False
    return True


# ===== REPRESENTATIONS =====

def _check_mu(lattice: Lattice, T: Matrix, mu: Sequence[int]) -> Tuple[int, ...]:
    mu = tuple(int(i) for i in mu)
    if len(mu) != len(T):
        raise SizeMismatch(f"μ has length {len(mu)}, T has size {len(T)}")
    order = discriminant_group(lattice).order
    if any(not 0 <= i < order for i in mu):
        raise SizeMismatch(f"μ = {mu} is out of range for |L*/L| = {order}")
    return mu


def _candidates(lattice: Lattice, T: Matrix, mu: Tuple[int, ...], threads: int) -> List[List[Vector]]:
    return [short_vectors(lattice, mu[i], _slot_target(lattice, T, i), threads=threads) for i in range(len(T))]


def _extend(lattice: Lattice, T: Matrix, candidates: List[List[Vector]], prefix: List[Vector]) -> Iterator[TupleVector]:
    j = len(prefix)
    if j == len(candidates):
        yield tuple(prefix)
        return
    for x in candidates[j]:
        if _pair_matches(lattice, T, prefix, j, x):
            prefix.append(x)
            yield from _extend(lattice, T, candidates, prefix)
            prefix.pop()


def _over_first_slot(candidates: List[List[Vector]], task: Callable[[Vector], Any], threads: int) -> List[Any]:
    if threads > 1 and len(candidates[0]) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(task, candidates[0]))
    return [task(x) for x in candidates[0]]


def enumerate_reps(lattice: Lattice, T: Sequence[Sequence[Any]], mu: Sequence[int], threads: int = 1) -> List[TupleVector]:
    """L_{T,μ} = {x ∈ μ + L^r : Q(x) = T}, sorted lexicographically"""
    _decomposition(lattice)
    T = normalize_t(lattice, T)
    mu = _check_mu(lattice, T, mu)
    if not T:
        return [()]
    candidates = _candidates(lattice, T, mu, threads)
    parts = _over_first_slot(candidates, lambda x: list(_extend(lattice, T, candidates, [x])), threads)
    reps = sorted(t for part in parts for t in part)
    logger.info(f"[Enumerator] ✅ {len(reps)} representations of T on {lattice!r}")
    return reps


def rep_number(lattice: Lattice, T: Sequence[Sequence[Any]], mu: Sequence[int], threads: int = 1) -> int:
    """|L_{T,μ}| without building the tuples"""
    _decomposition(lattice)
    T = normalize_t(lattice, T)
    mu = _check_mu(lattice, T, mu)
    if not T:
        return 1
    if len(T) == 1:
        return count_vectors(lattice, mu[0], _slot_target(lattice, T, 0), threads)
    candidates = _candidates(lattice, T, mu, threads)
    counts = _over_first_slot(candidates, lambda x: sum(1 for _ in _extend(lattice, T, candidates, [x])), threads)
    return sum(counts)


# ===== THETA SERIES =====

@dataclass(frozen=True)
class _Point:
    coset: int
    vector: Vector
    value: Fraction


def _points_below(lattice: Lattice, bound: Fraction, threads: int) -> List[_Point]:
    """All of L* with Q ≤ bound, tagged by coset"""
    disc = discriminant_group(lattice)
    points = []
    for k in range(disc.order):
        for v in short_vectors(lattice, k, bound, exact=False, threads=threads):
            points.append(_Point(k, v, lattice.quadratic(v)))
    points.sort(key=lambda p: p.value)
    return points


def _theta_key(lattice: Lattice, chosen: Sequence[_Point]) -> Tuple[Matrix, Tuple[int, ...]]:
    T = intersection_matrix(lattice, [p.vector for p in chosen])
    return T, tuple(p.coset for p in chosen)


def theta_expansion(lattice: Lattice, genus: int, bound: Fraction, threads: int = 1) -> QExpansion:
    """
    Σ_T Σ_μ |L_{T,μ}| q^T e_μ over all T with tr T ≤ bound

    Unitary lattices record literal T with q^T = e(2·tr(Tτ)).
    """
    if genus < 1:
        raise SizeMismatch("genus must be at least 1")
    _decomposition(lattice)
    bound = Fraction(bound)
    scale = 2 if lattice.is_unitary else 1
    budget = scale * bound
    points = _points_below(lattice, budget, threads)
    coefficients: Dict[Tuple[Matrix, Tuple[int, ...]], Fraction] = {}

    def fill(prefix: List[_Point], remaining: Fraction) -> Dict:
        found: Dict = {}

        def grow(chosen: List[_Point], left: Fraction) -> None:
            if len(chosen) == genus:
                key = _theta_key(lattice, chosen)
                found[key] = found.get(key, 0) + 1
                return
            for p in points:
                if p.value > left:
                    break
                chosen.append(p)
                grow(chosen, left - p.value)
                chosen.pop()

        grow(prefix, remaining)
        return found

    firsts = [p for p in points if p.value <= budget]
    tasks = [lambda p=p: fill([p], budget - p.value) for p in firsts]
    if threads > 1 and len(tasks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda t: t(), tasks))
    else:
        parts = [t() for t in tasks]
    for part in parts:
        for key, count in part.items():
            coefficients[key] = coefficients.get(key, 0) + count

    expansion = build_expansion(
        coefficients,
        genus=genus,
        weight=Fraction(lattice.rank, 2),
        case=lattice.case,
        truncation=bound,
        components=discriminant_group(lattice).order,
        lattice_hash=lattice.fingerprint(),
        exponent_scale=scale,
        field_disc=lattice.field_disc,
    )
    logger.info(f"[Theta] ✅ genus {genus} theta of {lattice!r} through tr T ≤ {bound}: {len(expansion)} records")
    return expansion
