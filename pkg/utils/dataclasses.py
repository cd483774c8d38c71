"""
Data classes for suite state management and node abstraction
"""
from abc import ABC, abstractmethod
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional

from utils.errors import WeilKitError
from utils.logging_utils import get_logger

logger = get_logger(__name__)


class Case(Enum):
    """
    Lattice flavours
    """
    ORTHOGONAL = "orthogonal"
    UNITARY = "unitary"


class GeneratorKind(Enum):
    """
    Letters of a group word
    """
    M = "m"
    N = "n"
    S = "S"


class WittStatus(Enum):
    """
    How far a Witt index computation got
    """
    EXACT = "exact"
    INCONCLUSIVE = "inconclusive"


class SuiteResult:
    """
    Outcome of one verification suite
    """

    def __init__(self, name: str, checked: int = 0, failures: Optional[List[str]] = None):
        self.name = name
        self.checked = checked
        self.failures = failures or []

    @property
    def passed(self) -> bool:
        return not self.failures

    def __repr__(self):
        return (f"SuiteResult(name={self.name}, checked={self.checked}, "
                f"failures={len(self.failures)})")


class SuiteState:
    """
    Shared inputs and collected results of a verification run
    """

    def __init__(
        self,
        threads: int = 1,
        precision: int = 53,
        tol: float = 1e-6,
        seed: int = 0,
        corpus: Optional[Dict[str, Any]] = None
    ):
        self.threads = threads
        self.precision = precision
        self.tol = tol
        self.seed = seed

        # Named lattices: {name: Lattice}
        self.corpus: Dict[str, Any] = corpus or {}

        # Suite results in execution order: {suite name: SuiteResult}
        self.results: Dict[str, SuiteResult] = {}

    def add_result(self, result: SuiteResult) -> None:
        self.results[result.name] = result

    def get_result(self, name: str) -> Optional[SuiteResult]:
        return self.results.get(name)

    def all_passed(self) -> bool:
        return all(r.passed for r in self.results.values())

    def __repr__(self):
        return (f"SuiteState(threads={self.threads}, precision={self.precision}, "
                f"lattices={len(self.corpus)}, suites={len(self.results)})")


class Node(ABC):
    """Abstract base class for all verification suites"""

    def __init__(self, name: str):
        self.name = name

    @abstractmethod
    def collect_cases(self, state: SuiteState) -> Iterable[Any]:
        """Generate the inputs this suite checks"""
        pass

    @abstractmethod
    def check_case(self, state: SuiteState, case: Any) -> Optional[str]:
        """Check one input; returns a failure message or None"""
        pass

    def describe(self, case: Any) -> str:
        return repr(case)

    def execute(self, state: SuiteState) -> SuiteState:
        """Run every case and record a SuiteResult on the state"""
        result = SuiteResult(self.name)
        for case in self.collect_cases(state):
            try:
                failure = self.check_case(state, case)
            except WeilKitError as e:
                failure = f"{self.describe(case)}: {e.name}: {e}"
            result.checked += 1
            if failure:
                logger.warning(f"[{self.name}] ❌ {failure}")
                result.failures.append(failure)
        if result.passed:
            logger.info(f"[{self.name}] ✅ {result.checked} checks passed")
        state.add_result(result)
        return state
