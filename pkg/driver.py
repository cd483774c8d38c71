"""
Driver function for the end-to-end verification flow
"""

from typing import Dict, Generator, List, Optional, Sequence

from nodes.cycle_suites import EnumerationOracleSuite, EquivarianceSuite, WittSuite
from nodes.lattice_suites import MilgramSuite
from nodes.modular_suites import HurwitzSuite, ThetaModularitySuite
from nodes.weil_suites import FactorizationSuite, UnitaryRestrictionSuite, WeilRelationSuite
from utils.dataclasses import Node, SuiteState
from utils.errors import UsageError
from utils.logging_utils import get_logger

logger = get_logger(__name__)


def default_suites() -> List[Node]:
    """Every property suite, cheapest first"""
    return [
        MilgramSuite(),
        FactorizationSuite(),
        WeilRelationSuite(),
        UnitaryRestrictionSuite(),
        HurwitzSuite(),
        WittSuite(),
        EquivarianceSuite(),
        EnumerationOracleSuite(),
        ThetaModularitySuite(),
    ]


def select_suites(names: Optional[Sequence[str]] = None) -> List[Node]:
    suites = default_suites()
    if not names:
        return suites
    by_name: Dict[str, Node] = {suite.name: suite for suite in suites}
    unknown = [name for name in names if name not in by_name]
    if unknown:
        raise UsageError(f"unknown suites {unknown}; choose from {sorted(by_name)}")
    return [by_name[name] for name in names]


def run_verification(
    state: SuiteState,
    suites: Optional[Sequence[str]] = None
) -> Generator[dict, None, SuiteState]:
    """
    Run the selected suites against a shared state, yielding progress updates

    Returns the state with one SuiteResult per suite.
    """

    logger.info(f"[Driver] 🚀 Starting verification with {state!r}")
    yield {
        "status": "started",
        "message": "🚀 Starting verification",
        "progress": 0
    }

    nodes = select_suites(suites)
    progress_per_suite = 100 / len(nodes)

    for idx, node in enumerate(nodes, 1):
        base_progress = (idx - 1) * progress_per_suite
        yield {
            "status": "processing",
            "message": f"🔷 Running {node.name} ({idx}/{len(nodes)})",
            "progress": int(base_progress)
        }

        state = node.execute(state)

        result = state.get_result(node.name)
        glyph = "✅" if result.passed else "❌"
        yield {
            "status": "processing",
            "message": f"{glyph} {node.name}: {result.checked} checks, {len(result.failures)} failures",
            "progress": int(base_progress + progress_per_suite)
        }

    passed = state.all_passed()
    logger.info(f"[Driver] {'✅' if passed else '❌'} Verification complete")
    yield {
        "status": "complete" if passed else "failed",
        "message": "✅ All suites passed" if passed else "❌ Some suites failed",
        "progress": 100
    }

    return state
