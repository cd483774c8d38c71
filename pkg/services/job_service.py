"""
Job Service
One function per CLI subcommand; each loads its inputs, runs the library
operation and returns the rendered artifact
"""
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from cycles.enumeration import enumerate_reps, normalize_t, theta_expansion
from cycles.geometry import boundary_profile
from cycles.witt import witt_index
from driver import run_verification
from eisenstein.hurwitz import hurwitz_values, zagier_coeffs
from lattices.corpus import standard_corpus
from lattices.discriminant import discriminant_group
from lattices.lattice import Lattice
from lattices.signature import signature
from modform.serialization import load_expansion, serialize
from modform.slash import slash_check
from parsers.lattice_parser import load_lattice
from parsers.txt_parser import parse_index_text, parse_matrix_text
from parsers.word_parser import load_word
from tools.renderers import (
    render_discriminant,
    render_matrix,
    render_milgram,
    render_slash,
    render_suites,
    render_values,
    render_vectors,
    render_witt,
)
from utils.dataclasses import SuiteState
from utils.errors import UsageError
from utils.logging_utils import get_logger
from weil.representation import gauss_sum, milgram_value, weil_word_matrix

logger = get_logger(__name__)

Artifact = Tuple[str, bool]


def _integer_bound(bound: Fraction) -> int:
    if bound.denominator != 1:
        raise UsageError(f"--bound must be an integer here, got {bound}")
    return int(bound)


def disc_job(lattice_path: str) -> Artifact:
    """Discriminant group, q-values and signature"""
    lattice = load_lattice(lattice_path)
    return render_discriminant(lattice, discriminant_group(lattice), signature(lattice)), True


def weil_job(lattice_path: str, word_path: str, genus: Optional[int] = None, threads: int = 1) -> Artifact:
    """Exact matrix of ρ_{L,r}(w)"""
    lattice = load_lattice(lattice_path)
    w = load_word(word_path, genus)
    return render_matrix(weil_word_matrix(lattice, w, threads)), True


def milgram_job(lattice_path: str) -> Artifact:
    lattice = load_lattice(lattice_path)
    gauss, expected = gauss_sum(lattice), milgram_value(lattice)
    return render_milgram(gauss, expected), gauss == expected


def reps_job(lattice_path: str, t_text: str, mu_text: Optional[str] = None, listing: bool = False,
             threads: int = 1) -> Artifact:
    """
    |L_{T,μ}|, or the tuples themselves with `listing`

    μ defaults to the zero coset in every slot.
    """
    lattice = load_lattice(lattice_path)
    T = normalize_t(lattice, parse_matrix_text(t_text))
    mu = parse_index_text(mu_text) if mu_text else tuple(0 for _ in T)
    tuples = enumerate_reps(lattice, T, mu, threads)
    if listing:
        return render_vectors(tuples), True
    return f"count {len(tuples)}\n", True


def theta_job(lattice_path: str, genus: int, bound: Fraction, threads: int = 1) -> Artifact:
    lattice = load_lattice(lattice_path)
    return serialize(theta_expansion(lattice, genus, bound, threads)), True


def hurwitz_job(bound: Fraction, threads: int = 1) -> Artifact:
    return render_values(hurwitz_values(_integer_bound(bound), threads), "H"), True


def zagier_job(bound: Fraction, threads: int = 1) -> Artifact:
    return serialize(zagier_coeffs(_integer_bound(bound), threads)), True


def witt_job(lattice_path: str) -> Artifact:
    """Witt index with witness or local obstruction, plus the cusp profile"""
    lattice = load_lattice(lattice_path)
    report = witt_index(lattice)
    return render_witt(report, boundary_profile(lattice)), True


def slash_check_job(lattice_path: str, expansion_path: str, word_path: str, tol: float, precision: int,
                    threads: int = 1) -> Artifact:
    lattice = load_lattice(lattice_path)
    F = load_expansion(expansion_path)
    w = load_word(word_path, F.genus)
    report = slash_check(F, w, F.weight, lattice, tol=tol, precision=precision, threads=threads)
    return render_slash(report), report.passed


def verify_job(
    threads: int,
    precision: int,
    tol: float,
    seed: int = 0,
    lattice_paths: Sequence[str] = (),
    suites: Optional[Sequence[str]] = None,
) -> Artifact:
    """Run the property suites; extra lattices join the corpus"""
    corpus = {}
    for path in lattice_paths:
        lattice: Lattice = load_lattice(path)
        corpus[lattice.label or path] = lattice
    clash = set(corpus) & set(standard_corpus())
    if clash:
        raise UsageError(f"lattice labels {sorted(clash)} shadow corpus lattices")
    state = SuiteState(threads=threads, precision=precision, tol=tol, seed=seed, corpus=corpus)
    runner = run_verification(state, suites)
    while True:
        try:
            update = next(runner)
        except StopIteration as finished:
            state = finished.value
            break
        logger.info(f"[Verify] {update['progress']:>3}% {update['message']}")
    return render_suites(state), state.all_passed()
