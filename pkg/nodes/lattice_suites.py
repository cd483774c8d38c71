"""
Milgram Suite Node
Checks Σ_μ e(q(μ)) = √|L*/L|·e(sig/8) exactly on the lattice corpus
"""
from typing import Iterable, Optional, Tuple

from lattices.corpus import hermitian_corpus, random_corpus, standard_corpus
from lattices.lattice import Lattice, trace_form
from utils.dataclasses import Node, SuiteState
from weil.representation import gauss_sum, milgram_value

RANDOM_LATTICES = 10


class MilgramSuite(Node):
    """
    Node for the Gauss-sum identity on discriminant forms
    """

    def __init__(self, random_lattices: int = RANDOM_LATTICES):
        super().__init__("MilgramSuite")
        self.random_lattices = random_lattices

    def collect_cases(self, state: SuiteState) -> Iterable[Tuple[str, Lattice]]:
        lattices = dict(standard_corpus())
        lattices.update(random_corpus(state.seed, self.random_lattices))
        for name, lattice in hermitian_corpus().items():
            lattices[f"tr({name})"] = trace_form(lattice)
        lattices.update(state.corpus)
        return sorted(lattices.items())

    def describe(self, case) -> str:
        return case[0]

    def check_case(self, state: SuiteState, case) -> Optional[str]:
        name, lattice = case
        gauss, expected = gauss_sum(lattice), milgram_value(lattice)
        if gauss != expected:
            return f"{name}: Σ e(q) = {gauss.render()} but √|D|·e(sig/8) = {expected.render()}"
        return None
