"""
Text renderers for CLI artifacts

Every renderer returns a string with a trailing newline and depends only on
its input, so artifacts are byte-identical across runs and thread counts.
"""
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence

from arith.cyclotomic import ExactScalar
from cycles.geometry import BoundaryProfile
from cycles.witt import WittReport
from lattices.discriminant import DiscriminantGroup
from lattices.lattice import Lattice
from lattices.signature import Signature
from modform.slash import SlashReport
from utils.dataclasses import SuiteState
from weil.matrices import WeilMatrix


def _lines(lines: Iterable[str]) -> str:
    return "\n".join(lines) + "\n"


def _vector(v: Sequence[Fraction]) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def verdict(passed: bool) -> str:
    return "PASS" if passed else "FAIL"


def render_scalar(s: ExactScalar) -> str:
    """(N:c0,…; d; k)"""
    return s.render()


def render_matrix(matrix: WeilMatrix) -> str:
    """One `ν μ value` line per nonzero entry, row-major"""
    lines = [f"# dim {matrix.dim} nonzero {matrix.nonzero_count()}"]
    for i, row in enumerate(matrix.rows()):
        for j, v in enumerate(row):
            if not v.is_zero():
                lines.append(f"{i} {j} {v.render()}")
    return _lines(lines)


def render_discriminant(lattice: Lattice, disc: DiscriminantGroup, sig: Signature) -> str:
    lines = [
        f"lattice {lattice.label or lattice.fingerprint()}",
        f"case {lattice.case.value}",
        f"rank {lattice.rank}",
        f"signature {sig.positive} {sig.negative}",
        f"order {disc.order}",
        "divisors " + (" ".join(str(d) for d in disc.elementary_divisors) or "-"),
    ]
    for i, coords in enumerate(disc.elements):
        lines.append(f"{i} {_vector(coords)} q={disc.q_values[i]}")
    return _lines(lines)


def render_milgram(gauss: ExactScalar, expected: ExactScalar) -> str:
    return _lines([
        f"gauss_sum {gauss.render()}",
        f"milgram {expected.render()}",
        f"verdict {verdict(gauss == expected)}",
    ])


def render_vectors(tuples: Sequence[Sequence[Sequence[Fraction]]]) -> str:
    lines = [f"count {len(tuples)}"]
    lines += [" ".join(_vector(v) for v in x) for x in tuples]
    return _lines(lines)


def render_values(values: Dict[int, Fraction], name: str) -> str:
    return _lines(f"{name}({n}) {values[n]}" for n in sorted(values))


def render_witt(report: WittReport, profile: Optional[BoundaryProfile] = None) -> str:
    lines = [
        f"rank {report.rank}",
        f"signature {report.signature.positive} {report.signature.negative}",
        f"witt_index {report.witt_index}",
        f"status {report.status.value}",
        "witness " + (_vector(report.isotropic_witness) if report.isotropic_witness else "-"),
        "obstruction " + (str(report.obstruction) if report.obstruction is not None else "-"),
    ]
    if profile is not None:
        lines += [
            f"compact {int(profile.compact)}",
            f"zero_dimensional_cusps {int(profile.zero_dimensional_cusps)}",
            f"one_dimensional_cusps {int(profile.one_dimensional_cusps)}",
        ]
    return _lines(lines)


def render_slash(report: SlashReport) -> str:
    lines = [
        f"word {report.word}",
        f"weight {report.weight}",
        f"mode {'exact' if report.exact else 'interval'}",
        f"precision {report.precision}",
    ]
    for sample in report.samples:
        tau = " ".join(f"{z.a},{z.b}" for row in sample.tau for z in row)
        lines.append(f"sample [{tau}] defect {sample.defect:.3e} tail {sample.tail:.3e}")
    if report.failure:
        lines.append(f"failure {report.failure}")
    lines.append(f"max_defect {report.max_defect:.3e}")
    lines.append(f"verdict {verdict(report.passed)}")
    return _lines(lines)


def render_suites(state: SuiteState) -> str:
    lines = []
    for result in state.results.values():
        lines.append(f"{result.name} checked {result.checked} {verdict(result.passed)}")
        lines += [f"  {failure}" for failure in result.failures]
    lines.append(f"verdict {verdict(state.all_passed())}")
    return _lines(lines)
