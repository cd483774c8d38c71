"""
Plain-text lattice and word documents

Lattice file: optional `case`, `field_disc` and `label` lines, then one Gram
row per line. Entries written `a:b` make the rows a Hermitian `gram_h`.

    # A2
    label A2
    2 1
    1 2

Word file: optional `genus`, `case` and `field_disc` lines, then one letter
per line, matrix rows separated by `;`.

    S
    n 1
    m 0 1 ; 1 0
"""
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from utils.errors import ParseError

LATTICE_KEYS = ("case", "field_disc", "label")
WORD_KEYS = ("genus", "case", "field_disc")


def parse_txt(file_path: str) -> str:
    """
    Read a text file, UTF-8 first and latin-1 as fallback

    Raises:
        ParseError: If the file cannot be read
    """
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            return f.read()
    except UnicodeDecodeError:
        try:
            with open(file_path, "r", encoding="latin-1") as f:
                return f.read()
        except OSError as e:
            raise ParseError(f"Failed to read {file_path}: {e}") from e
    except OSError as e:
        raise ParseError(f"Failed to read {file_path}: {e}") from e


def _content_lines(text: str) -> List[str]:
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    return lines


def _header(line: str, keys) -> Any:
    parts = line.split(None, 1)
    if parts[0] in keys:
        if len(parts) != 2:
            raise ParseError(f"`{parts[0]}` needs a value")
        return parts[0], parts[1].strip()
    return None


def _int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError as e:
        raise ParseError(f"`{key}` must be an integer, got {value!r}") from e


def _entry(token: str) -> Any:
    if ":" in token:
        parts = token.split(":")
        if len(parts) != 2:
            raise ParseError(f"bad pair entry {token!r}")
        return [parts[0], parts[1]]
    return token


def parse_lattice_text(text: str) -> Dict[str, Any]:
    """Document dict for LatticeDocument"""
    doc: Dict[str, Any] = {}
    rows: List[List[Any]] = []
    for line in _content_lines(text):
        pair = _header(line, LATTICE_KEYS)
        if pair and not rows:
            key, value = pair
            doc[key] = _int(value, key) if key == "field_disc" else value
            continue
        rows.append([_entry(t) for t in line.split()])
    if not rows:
        raise ParseError("no Gram rows found")
    hermitian = any(isinstance(v, list) for row in rows for v in row)
    if hermitian or doc.get("case") == "unitary":
        doc["case"] = "unitary"
        doc["gram_h"] = [[v if isinstance(v, list) else [v, "0"] for v in row] for row in rows]
    else:
        doc["gram"] = rows
    return doc


def parse_word_text(text: str) -> Dict[str, Any]:
    """Document dict for WordDocument"""
    doc: Dict[str, Any] = {"letters": []}
    for line in _content_lines(text):
        pair = _header(line, WORD_KEYS)
        if pair:
            key, value = pair
            doc[key] = value if key == "case" else _int(value, key)
            continue
        kind, _, rest = line.partition(" ")
        if kind == "S":
            if rest.strip():
                raise ParseError("S takes no payload")
            doc["letters"].append({"kind": "S"})
            continue
        rows = [[_entry(t) for t in chunk.split()] for chunk in rest.split(";")]
        doc["letters"].append({"kind": kind, "payload": rows})
    return doc


def parse_matrix_text(text: str) -> List[List[Any]]:
    """`1 1/2 ; 1/2 1` to rows of Fractions, `a:b` entries to (a, b) pairs"""
    rows = []
    for chunk in text.split(";"):
        row = []
        for token in chunk.replace(",", " ").split():
            entry = _entry(token)
            try:
                row.append(tuple(Fraction(x) for x in entry) if isinstance(entry, list) else Fraction(entry))
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError(f"bad matrix entry {token!r}") from e
        rows.append(row)
    if not rows or any(not row for row in rows):
        raise ParseError(f"empty matrix row in {text!r}")
    return rows


def parse_index_text(text: str) -> Tuple[int, ...]:
    """`0,1` or `0 1` to a component tuple"""
    return tuple(_int(token, "mu") for token in text.replace(",", " ").split())


def _render_entry(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return f"{v[0]}:{v[1]}"
    return str(v)


def render_lattice_text(doc: Dict[str, Any]) -> str:
    lines = []
    if doc.get("label"):
        lines.append(f"label {doc['label']}")
    if doc.get("case") == "unitary":
        lines.append("case unitary")
        lines.append(f"field_disc {doc['field_disc']}")
        rows = doc["gram_h"]
    else:
        rows = doc["gram"]
    lines += [" ".join(_render_entry(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"
