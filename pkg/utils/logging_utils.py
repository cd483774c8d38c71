"""
Logging setup

Human-readable lines by default, JSON lines through python-json-logger on request.
Everything goes to stderr; stdout is reserved for artifacts.
"""
import logging
import sys
from typing import Optional

from pythonjsonlogger.json import JsonFormatter

from utils.constants import LOG_JSON, LOG_LEVEL

_HUMAN_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"
_JSON_FIELDS = "%(asctime)s %(levelname)s %(name)s %(message)s"


def configure_logging(level: Optional[str] = None, json_format: Optional[bool] = None) -> None:
    """
    Configure the root logger once

    Args:
        level: Logging level name, defaults to WEILKIT_LOG_LEVEL
        json_format: Emit JSON lines, defaults to WEILKIT_LOG_JSON
    """

    level = (level or LOG_LEVEL).upper()
    json_format = LOG_JSON if json_format is None else json_format

    handler = logging.StreamHandler(sys.stderr)
    if json_format:
        handler.setFormatter(JsonFormatter(_JSON_FIELDS))
    else:
        handler.setFormatter(logging.Formatter(_HUMAN_FORMAT))

    root = logging.getLogger()
    for existing in list(root.handlers):
        root.removeHandler(existing)
    root.addHandler(handler)
    root.setLevel(level)


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
