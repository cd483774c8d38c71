"""
Lattice documents to validated Lattice objects and back
"""
import os
from fractions import Fraction
from typing import Any, Dict, Mapping, Union

import yaml
from pydantic import ValidationError

from lattices.lattice import Lattice, orthogonal_lattice, unitary_lattice
from parsers.documents import LatticeDocument
from parsers.parser import read_document, write_document
from utils.errors import ParseError
from utils.logging_utils import get_logger

logger = get_logger(__name__)

Source = Union[str, Mapping[str, Any], LatticeDocument]


def _document(source: Source) -> LatticeDocument:
    if isinstance(source, LatticeDocument):
        return source
    if isinstance(source, str):
        if os.path.exists(source):
            source = read_document(source, "lattice")
        else:
            try:
                source = yaml.safe_load(source)
            except yaml.YAMLError as e:
                raise ParseError(f"lattice document is neither a file nor YAML/JSON: {e}") from e
    if not isinstance(source, Mapping):
        raise ParseError("a lattice document is a mapping")
    try:
        return LatticeDocument.model_validate(dict(source))
    except ValidationError as e:
        raise ParseError(f"malformed lattice document: {e.errors()[0]['msg']}") from e


def load_lattice(source: Source) -> Lattice:
    """
    Validate a lattice document

    Accepts a path (.json, .yaml/.yml, .txt), YAML/JSON text, a mapping or a
    LatticeDocument. Raises ParseError, NotEven or Degenerate.
    """
    doc = _document(source)
    if doc.case == "orthogonal":
        lattice = orthogonal_lattice([[Fraction(v) for v in row] for row in doc.gram], doc.label)
    else:
        gram_h = [[(Fraction(a), Fraction(b)) for a, b in row] for row in doc.gram_h]
        lattice = unitary_lattice(doc.field_disc, gram_h, doc.label)
        if doc.gram is not None and [[Fraction(v) for v in row] for row in doc.gram] != [list(r) for r in lattice.gram]:
            raise ParseError("gram does not match the trace form of gram_h")
    logger.info(f"[LatticeParser] ✅ loaded {lattice!r}")
    return lattice


def lattice_document(lattice: Lattice) -> Dict[str, Any]:
    """Canonical document; load_lattice(lattice_document(L)) == L"""
    doc: Dict[str, Any] = {"case": lattice.case.value}
    doc["gram"] = [[str(v) for v in row] for row in lattice.gram]
    if lattice.is_unitary:
        doc["field_disc"] = lattice.field_disc
        doc["gram_h"] = [[[str(e.a), str(e.b)] for e in row] for row in lattice.gram_h]
    if lattice.label:
        doc["label"] = lattice.label
    return doc


def save_lattice(lattice: Lattice, file_path: str) -> None:
    write_document(lattice_document(lattice), file_path)
