"""
Weil representation matrices on C[(L*/L)^r]

Entry M[ν][μ] is the coefficient of e_ν in ρ(g)e_μ. Orthogonal lattices:

    ρ(m(A)) e_μ = √(det A)^(−sig) e_{μA⁻¹}        (√1 = 1, √−1 = i)
    ρ(n(B)) e_μ = e(tr(Q(μ)B)) e_μ
    ρ(S)    e_μ = e(−r·sig/8) |D|^(−r/2) Σ_ν e(−Σ_i ⟨μ_i, ν_i⟩) e_ν

with sig = b⁺ − b⁻. Unitary lattices use the trace-normalized Hermitian
matrix (⟨μ_j, μ_i⟩) in n(B), (det A)^(−sig_K−2) in m(A), and the prefactor
γ^r |D|^(−r/2) with the Hermitian kernel e(−Σ_i tr⟨μ_i, ν_i⟩) in S.
"""
from fractions import Fraction
from functools import lru_cache
from typing import Tuple

from arith import linalg
from arith.cyclotomic import ExactScalar, e
from lattices.discriminant import DiscriminantGroup, discriminant_group
from lattices.lattice import Lattice, trace_form
from lattices.signature import hermitian_signature, signature
from utils.dataclasses import Case, GeneratorKind
from utils.errors import NoConsistentIndex, SizeMismatch, WrongCase
from utils.logging_utils import get_logger
from weil.generators import Generator, GroupWord, payload_matrix, validate_generator
from weil.matrices import WeilMatrix, product

logger = get_logger(__name__)

IndexTuple = Tuple[int, ...]


# ===== INDEXING =====

@lru_cache(maxsize=64)
def _index_tuples(disc: DiscriminantGroup, genus: int) -> Tuple[IndexTuple, ...]:
    return tuple(disc.tuples(genus))


def dimension(lattice: Lattice, genus: int) -> int:
    return discriminant_group(lattice).order ** genus


# ===== LETTERS =====

def _m_matrix(lattice: Lattice, disc: DiscriminantGroup, genus: int, g: Generator, threads: int) -> WeilMatrix:
    A = payload_matrix(g, lattice.case, lattice.field_disc)
    A_inv = linalg.inverse(A)
    det = linalg.determinant(A)
    tuples = _index_tuples(disc, genus)
    if lattice.is_unitary:
        u = lattice.field.unit_exponent(det)
        exponent = -hermitian_signature(lattice).difference - 2
        factor = e(u * exponent)
    else:
        factor = ExactScalar.one() if det == 1 else e(Fraction(-signature(lattice).difference, 4))

    def image(mu: IndexTuple) -> IndexTuple:
        coords = [disc.elements[i] for i in mu]
        out = []
        for j in range(genus):
            acc = disc.zero
            for i in range(genus):
                coeff = A_inv[i][j]
                if lattice.is_unitary:
                    acc = disc.add(acc, disc.k_scale(coeff, coords[i]))
                else:
                    acc = disc.add(acc, disc.scale(int(coeff), coords[i]))
            out.append(disc.index(acc))
        return tuple(out)

    def column(j: int):
        return {disc.tuple_index(image(tuples[j])): factor}

    return WeilMatrix.from_column_function(len(tuples), column, threads)


def _n_phase(lattice: Lattice, disc: DiscriminantGroup, B, mu: IndexTuple) -> Fraction:
    """tr(Q(μ)B) mod 1 (trace-normalized for unitary lattices)"""
    genus = len(mu)
    total = Fraction(0)
    for i in range(genus):
        total += disc.q_values[mu[i]] * (B[i][i].a if lattice.is_unitary else B[i][i])
        for j in range(i + 1, genus):
            if lattice.is_unitary:
                pairing = disc.hermitian_pairing(disc.elements[mu[j]], disc.elements[mu[i]])
                total += (pairing * B[j][i]).trace()
            else:
                total += disc.b_table[mu[i]][mu[j]] * B[i][j]
    return total % 1


def n_phase(lattice: Lattice, g: Generator, mu: IndexTuple) -> Fraction:
    """Exponent of the diagonal entry of ρ(n(B)) at e_μ"""
    validate_generator(g, len(mu), lattice.case, lattice.field_disc)
    B = payload_matrix(g, lattice.case, lattice.field_disc)
    return _n_phase(lattice, discriminant_group(lattice), B, tuple(mu))


def _n_matrix(lattice: Lattice, disc: DiscriminantGroup, genus: int, g: Generator, threads: int) -> WeilMatrix:
    B = payload_matrix(g, lattice.case, lattice.field_disc)
    tuples = _index_tuples(disc, genus)

    def column(j: int):
        return {j: e(_n_phase(lattice, disc, B, tuples[j]))}

    return WeilMatrix.from_column_function(len(tuples), column, threads)


@lru_cache(maxsize=64)
def _hermitian_kernel_table(disc: DiscriminantGroup) -> Tuple[Tuple[Fraction, ...], ...]:
    """tr_{K/Q}⟨μ, ν⟩ mod 1 from K-coordinates of lifts"""
    return tuple(
        tuple(disc.hermitian_pairing(x, y).trace() % 1 for y in disc.elements)
        for x in disc.elements
    )


def _gauss_matrix(disc: DiscriminantGroup, genus: int, prefactor: ExactScalar, table, threads: int) -> WeilMatrix:
    tuples = _index_tuples(disc, genus)
    scale = prefactor * ExactScalar.inverse_sqrt(disc.order ** genus)

    def column(j: int):
        mu = tuples[j]
        out = {}
        for i, nu in enumerate(tuples):
            phase = sum((table[a][b] for a, b in zip(mu, nu)), Fraction(0))
            out[i] = scale * e(-phase)
        return out

    return WeilMatrix.from_column_function(len(tuples), column, threads)


def _s_matrix(lattice: Lattice, disc: DiscriminantGroup, genus: int, threads: int) -> WeilMatrix:
    if lattice.is_unitary:
        gamma = unitary_weil_index(lattice)
        prefactor = ExactScalar.one()
        for _ in range(genus):
            prefactor = prefactor * gamma
        return _gauss_matrix(disc, genus, prefactor, _hermitian_kernel_table(disc), threads)
    phase = Fraction(-genus * signature(lattice).difference, 8)
    return _gauss_matrix(disc, genus, e(phase), disc.b_table, threads)


# ===== PUBLIC API =====

def _check_lattice_case(lattice: Lattice, case: Case, field_disc) -> None:
    if case is not lattice.case:
        raise WrongCase(f"{case.value} word on a {lattice.case.value} lattice")
    if lattice.is_unitary and field_disc != lattice.field_disc:
        raise WrongCase(f"word over Q(√{field_disc}) on a lattice over Q(√{lattice.field_disc})")


@lru_cache(maxsize=512)
def _generator_matrix(lattice: Lattice, genus: int, g: Generator, threads: int) -> WeilMatrix:
    disc = discriminant_group(lattice)
    if g.kind is GeneratorKind.M:
        return _m_matrix(lattice, disc, genus, g, threads)
    if g.kind is GeneratorKind.N:
        return _n_matrix(lattice, disc, genus, g, threads)
    return _s_matrix(lattice, disc, genus, threads)


def weil_generator_matrix(lattice: Lattice, genus: int, g: Generator, threads: int = 1) -> WeilMatrix:
    if genus < 1:
        raise SizeMismatch("genus must be at least 1")
    validate_generator(g, genus, lattice.case, lattice.field_disc)
    return _generator_matrix(lattice, genus, g, threads)


def weil_word_matrix(lattice: Lattice, w: GroupWord, threads: int = 1) -> WeilMatrix:
    """Ordered product of the letter matrices"""
    _check_lattice_case(lattice, w.case, w.field_disc)
    matrices = [weil_generator_matrix(lattice, w.genus, g, threads) for g in w.letters]
    result = product(matrices, dimension(lattice, w.genus), threads)
    logger.debug(f"[WeilMatrix] word of length {len(w)} on {lattice!r}: {result!r}")
    return result


# ===== WEIL INDEX =====

def hermitian_gauss_kernel(lattice: Lattice) -> WeilMatrix:
    """|D|^(−1/2) Σ_ν e(−tr⟨μ, ν⟩) e_ν on a unitary lattice, genus 1"""
    if not lattice.is_unitary:
        raise WrongCase("the Hermitian kernel needs a unitary lattice")
    disc = discriminant_group(lattice)
    return _gauss_matrix(disc, 1, ExactScalar.one(), _hermitian_kernel_table(disc), 1)


def check_weil_index(lattice: Lattice, gamma: ExactScalar) -> None:
    """NoConsistentIndex unless γ·kernel equals ρ(S) of the trace form"""
    target = weil_generator_matrix(trace_form(lattice), 1, Generator(GeneratorKind.S))
    if hermitian_gauss_kernel(lattice).scale(gamma) != target:
        raise NoConsistentIndex(f"γ = {gamma.render()} does not reconcile the kernels of {lattice!r}")


@lru_cache(maxsize=64)
def _weil_index_exponent(lattice: Lattice) -> Fraction:
    kernel = hermitian_gauss_kernel(lattice)
    target = weil_generator_matrix(trace_form(lattice), 1, Generator(GeneratorKind.S))
    for k in range(8):
        if kernel.scale(e(Fraction(k, 8))) == target:
            logger.info(f"[WeilIndex] ✅ γ = e({k}/8) for {lattice!r}")
            return Fraction(k, 8)
    raise NoConsistentIndex(f"no 8th root of unity reconciles the kernels of {lattice!r}")


def unitary_weil_index(lattice: Lattice) -> ExactScalar:
    if not lattice.is_unitary:
        raise WrongCase("unitary_weil_index needs a unitary lattice")
    return e(_weil_index_exponent(lattice))


# ===== MILGRAM =====

def gauss_sum(lattice: Lattice) -> ExactScalar:
    """Σ_μ e(q(μ))"""
    disc = discriminant_group(lattice)
    total = ExactScalar.zero()
    for value in disc.q_values:
        total = total + e(value)
    return total


def milgram_value(lattice: Lattice) -> ExactScalar:
    """√|D| · e(sig/8)"""
    disc = discriminant_group(lattice)
    return ExactScalar.sqrt(disc.order) * e(Fraction(signature(lattice).difference, 8))


def is_unitary_matrix(matrix: WeilMatrix) -> bool:
    """M·M* = I, exactly"""
    return (matrix @ matrix.conj_transpose()).is_identity()
