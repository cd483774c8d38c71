"""
Pydantic models for lattice and word documents
"""
from fractions import Fraction
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

Rational = str
Pair = Tuple[Rational, Rational]


def _check_rational(value: str) -> str:
    try:
        Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {value!r}") from exc
    return value


class LatticeDocument(BaseModel):
    """
    `gram` entries are rationals written "p/q". Unitary lattices add
    `field_disc` and `gram_h`, whose entries are (a, b) for a + b·ω.
    """
    case: Literal["orthogonal", "unitary"] = "orthogonal"
    gram: Optional[List[List[Rational]]] = None
    field_disc: Optional[int] = None
    gram_h: Optional[List[List[Pair]]] = None
    label: str = ""

    @field_validator("gram", mode="before")
    @classmethod
    def _stringify_gram(cls, rows):
        if rows is None:
            return rows
        return [[_check_rational(str(v)) for v in row] for row in rows]

    @field_validator("gram_h", mode="before")
    @classmethod
    def _stringify_pairs(cls, rows):
        if rows is None:
            return rows
        out = []
        for row in rows:
            out_row = []
            for pair in row:
                if not isinstance(pair, (list, tuple)) or len(pair) != 2:
                    raise ValueError(f"gram_h entries are pairs, got {pair!r}")
                out_row.append((_check_rational(str(pair[0])), _check_rational(str(pair[1]))))
            out.append(out_row)
        return out

    @model_validator(mode="after")
    def _check_case_fields(self):
        if self.case == "orthogonal":
            if self.gram is None:
                raise ValueError("orthogonal lattices need `gram`")
            if self.field_disc is not None or self.gram_h is not None:
                raise ValueError("`field_disc` and `gram_h` belong to unitary lattices")
        elif self.field_disc is None or self.gram_h is None:
            raise ValueError("unitary lattices need `field_disc` and `gram_h`")
        return self


class LetterDocument(BaseModel):
    kind: Literal["m", "n", "S"]
    payload: Optional[List[List[object]]] = None

    @model_validator(mode="after")
    def _check_payload(self):
        if self.kind == "S" and self.payload is not None:
            raise ValueError("S takes no payload")
        if self.kind != "S" and self.payload is None:
            raise ValueError(f"{self.kind} needs a payload matrix")
        return self


class WordDocument(BaseModel):
    """Letters are applied left to right as the product g_1·…·g_k"""
    letters: List[LetterDocument] = Field(default_factory=list)
    genus: int = Field(default=1, ge=1)
    case: Literal["orthogonal", "unitary"] = "orthogonal"
    field_disc: Optional[int] = None
