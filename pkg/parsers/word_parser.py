"""
Word documents to GroupWord
"""
import os
from fractions import Fraction
from typing import Any, Mapping, Optional, Union

import yaml
from pydantic import ValidationError

from arith.quadratic import QuadraticField
from parsers.documents import WordDocument
from parsers.parser import read_document
from utils.dataclasses import Case, GeneratorKind
from utils.errors import ParseError
from weil.generators import Generator, GroupWord, validate_word

Source = Union[str, Mapping[str, Any], WordDocument]


def _entry(v: Any, field: Optional[QuadraticField]) -> Any:
    try:
        if isinstance(v, (list, tuple)):
            if field is None or len(v) != 2:
                raise ParseError(f"pair entry {v!r} needs a unitary word")
            return field.element(Fraction(str(v[0])), Fraction(str(v[1])))
        value = Fraction(str(v))
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"bad payload entry {v!r}") from e
    if value.denominator != 1:
        raise ParseError(f"payload entry {v!r} is not an integer")
    return int(value)


def _document(source: Source) -> WordDocument:
    if isinstance(source, WordDocument):
        return source
    if isinstance(source, str):
        if os.path.exists(source):
            source = read_document(source, "word")
        else:
            try:
                source = yaml.safe_load(source)
            except yaml.YAMLError as e:
                raise ParseError(f"word document is neither a file nor YAML/JSON: {e}") from e
    if isinstance(source, list):
        source = {"letters": source}
    if not isinstance(source, Mapping):
        raise ParseError("a word document is a list of letters or a mapping")
    try:
        return WordDocument.model_validate(dict(source))
    except ValidationError as e:
        raise ParseError(f"malformed word document: {e.errors()[0]['msg']}") from e


def load_word(source: Source, genus: Optional[int] = None) -> GroupWord:
    """
    Read a word; `genus` overrides the document's genus

    Raises ParseError, SizeMismatch, NotUnimodular or WrongCase.
    """
    doc = _document(source)
    case = Case(doc.case)
    if case is Case.UNITARY and doc.field_disc is None:
        raise ParseError("unitary words need `field_disc`")
    field = QuadraticField(doc.field_disc) if case is Case.UNITARY else None
    letters = []
    for letter in doc.letters:
        payload = None
        if letter.payload is not None:
            payload = tuple(tuple(_entry(v, field) for v in row) for row in letter.payload)
        letters.append(Generator(GeneratorKind(letter.kind), payload))
    w = GroupWord(tuple(letters), genus or doc.genus, case, doc.field_disc)
    validate_word(w)
    return w
