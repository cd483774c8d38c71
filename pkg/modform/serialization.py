"""
Line-oriented expansion documents

    # weilkit-expansion v1
    genus 1
    weight 4
    case orthogonal
    field_disc -
    lattice 3f2a…
    truncation 2
    mock 0
    exponent_scale 1
    components 1
    records 3
    0 ; 0 ; 1
    1 ; 0 ; 240
    2 ; 0 ; 2160

Records are `T row-major ; μ ; coefficient`, sorted by (tr T, T, μ).
Unitary entries of T are written `a:b` for a + b·ω.
"""
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from arith.quadratic import KElement, QuadraticField
from modform.expansion import Key, QExpansion, build_expansion
from utils import constants
from utils.dataclasses import Case
from utils.errors import FormatError, ParseError
from utils.file_utils import load_file, save_file
from utils.logging_utils import get_logger

logger = get_logger(__name__)

HEADER_FIELDS = (
    "genus", "weight", "case", "field_disc", "lattice", "truncation",
    "mock", "exponent_scale", "components", "records",
)
NONE = "-"


# ===== WRITING =====

def _entry(v) -> str:
    if isinstance(v, KElement):
        return f"{v.a}:{v.b}"
    return str(Fraction(v))


def _record_line(key: Key, c: Fraction) -> str:
    T, mu = key
    entries = " ".join(_entry(v) for row in T for v in row)
    return f"{entries} ; {' '.join(str(i) for i in mu)} ; {c}"


def serialize(F: QExpansion) -> str:
    header = {
        "genus": str(F.genus),
        "weight": str(F.weight),
        "case": F.case.value,
        "field_disc": NONE if F.field_disc is None else str(F.field_disc),
        "lattice": F.lattice_hash or NONE,
        "truncation": str(F.truncation),
        "mock": "1" if F.mock else "0",
        "exponent_scale": str(F.exponent_scale),
        "components": str(F.components),
        "records": str(len(F)),
    }
    lines = [constants.EXPANSION_MAGIC]
    lines += [f"{name} {header[name]}" for name in HEADER_FIELDS]
    lines += [_record_line(key, c) for key, c in F.coefficients]
    return "\n".join(lines) + "\n"


# ===== READING =====

def _fraction(text: str, what: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad {what} {text!r}") from exc


def _integer(text: str, what: str) -> int:
    value = _fraction(text, what)
    if value.denominator != 1:
        raise FormatError(f"{what} must be an integer, got {text!r}")
    return int(value)


def _read_header(lines: List[str]) -> Dict[str, str]:
    if not lines or lines[0].strip() != constants.EXPANSION_MAGIC:
        raise FormatError("missing expansion header")
    if len(lines) < len(HEADER_FIELDS) + 1:
        raise FormatError("truncated expansion header")
    header = {}
    for name, line in zip(HEADER_FIELDS, lines[1:]):
        parts = line.split()
        if len(parts) != 2 or parts[0] != name:
            raise FormatError(f"expected header field {name!r}, got {line!r}")
        header[name] = parts[1]
    return header


def _parse_entry(text: str, field: Optional[QuadraticField]):
    if field is None:
        if ":" in text:
            raise FormatError(f"unitary entry {text!r} in an orthogonal document")
        return _fraction(text, "entry")
    parts = text.split(":")
    if len(parts) != 2:
        raise FormatError(f"unitary entries are written a:b, got {text!r}")
    return field.element(_fraction(parts[0], "entry"), _fraction(parts[1], "entry"))


def _parse_record(line: str, genus: int, field: Optional[QuadraticField]) -> Tuple[Key, Fraction]:
    parts = [p.strip() for p in line.split(";")]
    if len(parts) != 3:
        raise FormatError(f"records have three fields, got {line!r}")
    entries = parts[0].split()
    if len(entries) != genus * genus:
        raise FormatError(f"record {line!r} does not match genus {genus}")
    values = [_parse_entry(x, field) for x in entries]
    T = tuple(tuple(values[i * genus:(i + 1) * genus]) for i in range(genus))
    mu = tuple(_integer(x, "component") for x in parts[1].split())
    if len(mu) != genus:
        raise FormatError(f"component tuple of {line!r} does not match genus {genus}")
    return (T, mu), _fraction(parts[2], "coefficient")


def deserialize(text: str) -> QExpansion:
    """Parse a document; raises FormatError unless it is canonical"""
    lines = [line for line in text.splitlines() if line.strip()]
    header = _read_header(lines)
    genus = _integer(header["genus"], "genus")
    if genus < 1:
        raise FormatError("genus must be positive")
    try:
        case = Case(header["case"])
    except ValueError as exc:
        raise FormatError(f"unknown case {header['case']!r}") from exc
    field_disc = None if header["field_disc"] == NONE else _integer(header["field_disc"], "field_disc")
    if (case is Case.UNITARY) != (field_disc is not None):
        raise FormatError("field_disc is required exactly for unitary expansions")
    try:
        field = QuadraticField(field_disc) if field_disc is not None else None
    except ParseError as exc:
        raise FormatError(str(exc)) from exc
    if header["mock"] not in ("0", "1"):
        raise FormatError(f"mock flag must be 0 or 1, got {header['mock']!r}")
    body = lines[len(HEADER_FIELDS) + 1:]
    if len(body) != _integer(header["records"], "record count"):
        raise FormatError(f"header announces {header['records']} records, found {len(body)}")
    records = [_parse_record(line, genus, field) for line in body]
    data = dict(records)
    if len(data) != len(records):
        raise FormatError("duplicate record keys")
    if any(c == 0 for _, c in records):
        raise FormatError("zero coefficients are not stored")
    F = build_expansion(
        data,
        genus=genus,
        weight=_fraction(header["weight"], "weight"),
        case=case,
        truncation=_fraction(header["truncation"], "truncation"),
        components=_integer(header["components"], "components"),
        lattice_hash="" if header["lattice"] == NONE else header["lattice"],
        mock=header["mock"] == "1",
        exponent_scale=_integer(header["exponent_scale"], "exponent_scale"),
        field_disc=field_disc,
    )
    if list(F.coefficients) != records:
        raise FormatError("records are not in canonical order")
    logger.debug(f"[Serialization] read {F!r}")
    return F


def save_expansion(F: QExpansion, path: str) -> None:
    save_file(serialize(F), path)


def load_expansion(path: str) -> QExpansion:
    try:
        text = load_file(path)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc
    if text is None:
        raise FormatError(f"File not found: {path}")
    return deserialize(text)
