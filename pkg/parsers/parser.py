"""
Combined parser - routes to the appropriate reader based on file extension
"""
import json
import os
from typing import Any, Callable, Dict

import yaml

from parsers.txt_parser import parse_lattice_text, parse_txt, parse_word_text, render_lattice_text
from utils.errors import ParseError
from utils.file_utils import save_file
from utils.logging_utils import get_logger

logger = get_logger(__name__)

JSON_EXTENSIONS = (".json",)
YAML_EXTENSIONS = (".yaml", ".yml")
TXT_EXTENSIONS = (".txt",)

_TEXT_READERS: Dict[str, Callable[[str], Dict[str, Any]]] = {
    "lattice": parse_lattice_text,
    "word": parse_word_text,
}


def _extension(path: str) -> str:
    return os.path.splitext(path)[1].lower()


def read_document(file_path: str, kind: str) -> Any:
    """
    Load a lattice or word document into plain data

    Args:
        file_path: .json, .yaml/.yml or .txt file
        kind: "lattice" or "word"
    """
    if not os.path.exists(file_path):
        raise ParseError(f"File not found: {file_path}")
    extension = _extension(file_path)
    text = parse_txt(file_path)
    try:
        if extension in JSON_EXTENSIONS:
            data = json.loads(text)
        elif extension in YAML_EXTENSIONS:
            data = yaml.safe_load(text)
        elif extension in TXT_EXTENSIONS:
            data = _TEXT_READERS[kind](text)
        else:
            raise ParseError(f"Unsupported file type: {file_path}")
    except (json.JSONDecodeError, yaml.YAMLError) as e:
        raise ParseError(f"Error parsing {file_path}: {e}") from e
    logger.debug(f"[Parser] read {kind} document {file_path}")
    return data


def write_document(data: Dict[str, Any], file_path: str) -> None:
    """Write a lattice document in the format its extension names"""
    extension = _extension(file_path)
    if extension in JSON_EXTENSIONS:
        text = json.dumps(data, indent=2, ensure_ascii=False) + "\n"
    elif extension in YAML_EXTENSIONS:
        text = yaml.safe_dump(data, sort_keys=False, allow_unicode=True)
    elif extension in TXT_EXTENSIONS:
        text = render_lattice_text(data)
    else:
        raise ParseError(f"Unsupported file type: {file_path}")
    save_file(text, file_path)
