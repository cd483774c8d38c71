"""
Generic decorators for precision escalation
"""
import functools
from typing import Callable, Optional

from utils import constants
from utils.logging_utils import get_logger

logger = get_logger(__name__)


def escalate_precision(max_attempts: Optional[int] = None, validation_method: str = "needs_more_precision"):
    """
    Repeat an interval computation with doubled precision

    Args:
        max_attempts: Maximum number of attempts (default: PRECISION_ESCALATIONS + 1)
        validation_method: Name of a method on the returned report; when it
                           returns True the result is blamed on interval width
                           and the call is repeated at twice the precision

    Usage:
        @escalate_precision(max_attempts=3)
        def slash_check(F, w, weight, lattice, *, precision=53):
            ...
            return report   # report.needs_more_precision() -> bool
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, precision: int = constants.DEFAULT_PRECISION, **kwargs):
            attempts = max_attempts or constants.PRECISION_ESCALATIONS + 1
            result = None
            for attempt in range(1, attempts + 1):
                result = func(*args, precision=precision, **kwargs)
                validator = getattr(result, validation_method, None)
                if validator is None or not validator():
                    if attempt > 1:
                        logger.info(f"[{func.__name__}] ✓ Settled at {precision} bits on attempt {attempt}")
                    return result
                if attempt < attempts:
                    logger.info(f"[{func.__name__}] ✗ Interval width dominates at {precision} bits, retrying")
                    precision *= 2
                else:
                    logger.warning(f"[{func.__name__}] All {attempts} precision attempts exhausted")
            return result

        return wrapper
    return decorator
