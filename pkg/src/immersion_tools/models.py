"""
Pydantic models for the JSON formats read and written by immersion_tools.

Library types are plain values; these models sit at the file boundary and
convert with ``to_domain()`` / ``from_domain()``. Integer-matrix entries are
written as decimal strings so arbitrarily large values survive any JSON reader.
"""

from typing import Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, RootModel, field_validator, model_validator

from immersion_tools.ce_events import CEEvent, CEKind, UniversalValue
from immersion_tools.decomp import GeneratorWord
from immersion_tools.gf2core import Gf2Matrix, Gf2Vector, IntMatrix
from immersion_tools.hform import HForm, HValue, Transvection, TransvectionKind
from immersion_tools.mcg import MappingClassData
from immersion_tools.series import MElement, MonomialClass

__all__ = [
    "Gf2MatrixModel",
    "IntMatrixModel",
    "HFormModel",
    "TransvectionModel",
    "GeneratorWordModel",
    "MappingClassModel",
    "CEEventModel",
    "EventLogModel",
    "UniversalValueModel",
    "SymbolAssignmentModel",
    "MTermModel",
    "MElementModel",
    "OrthonormalBasisModel",
]

Bit = Literal[0, 1]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


# ===========================
# Matrices
# ===========================


class Gf2MatrixModel(_Strict):
    """GF(2) matrix: declared shape plus row-major 0/1 entries."""

    rows: int = Field(..., ge=1)
    cols: int = Field(..., ge=1)
    data: List[List[Bit]]

    @model_validator(mode="after")
    def check_shape(self) -> "Gf2MatrixModel":
        if len(self.data) != self.rows or any(len(row) != self.cols for row in self.data):
            raise ValueError(f"data must be {self.rows}x{self.cols}")
        return self

    def to_domain(self) -> Gf2Matrix:
        return Gf2Matrix(self.data)

    @classmethod
    def from_domain(cls, m: Gf2Matrix) -> "Gf2MatrixModel":
        return cls(rows=m.rows, cols=m.cols, data=m.to_rows())


class IntMatrixModel(_Strict):
    """Square integer matrix; entries are decimal strings (plain ints also accepted).

    A 0x0 matrix is allowed, it is the rational action for genus 1.
    """

    rows: int = Field(..., ge=0)
    cols: int = Field(..., ge=0)
    data: List[List[str]]

    @field_validator("data", mode="before")
    @classmethod
    def entries_to_strings(cls, v: object) -> object:
        if not isinstance(v, list):
            return v
        out = []
        for row in v:
            if not isinstance(row, list):
                return v
            out.append([str(int(x)) if isinstance(x, (int, str)) else x for x in row])
        return out

    @model_validator(mode="after")
    def check_shape(self) -> "IntMatrixModel":
        if self.rows != self.cols:
            raise ValueError("Integer matrix must be square")
        if len(self.data) != self.rows or any(len(row) != self.cols for row in self.data):
            raise ValueError(f"data must be {self.rows}x{self.cols}")
        return self

    def to_domain(self) -> IntMatrix:
        return IntMatrix([[int(x) for x in row] for row in self.data])

    @classmethod
    def from_domain(cls, m: IntMatrix) -> "IntMatrixModel":
        return cls(rows=m.n, cols=m.n, data=[[str(x) for x in row] for row in m.to_rows()])


# ===========================
# H-forms and words
# ===========================


class HFormModel(_Strict):
    """H-form: dimension, Gram rows and g on each stored basis vector in quarter units.

    Values may also be given rendered, e.g. ``"1/2"`` or ``"-1/2"``.
    """

    dim: int = Field(..., ge=1)
    gram: List[List[Bit]]
    values: List[int] = Field(..., description="g(b_i) in quarter units 0..3")

    @field_validator("values", mode="before")
    @classmethod
    def parse_rendered(cls, v: object) -> object:
        if isinstance(v, list):
            return [HValue.parse(x).quarter_units if isinstance(x, str) else x for x in v]
        return v

    @field_validator("values")
    @classmethod
    def check_range(cls, v: List[int]) -> List[int]:
        bad = [x for x in v if not 0 <= x <= 3]
        if bad:
            raise ValueError(f"Quarter-unit values must lie in 0..3, got {bad}")
        return v

    @model_validator(mode="after")
    def check_shape(self) -> "HFormModel":
        n = self.dim
        if len(self.values) != n:
            raise ValueError(f"Expected {n} values, got {len(self.values)}")
        if len(self.gram) != n or any(len(row) != n for row in self.gram):
            raise ValueError(f"Gram matrix must be {n}x{n}")
        return self

    def to_domain(self) -> HForm:
        return HForm(Gf2Matrix(self.gram), [HValue(v) for v in self.values])

    @classmethod
    def from_domain(cls, g: HForm) -> "HFormModel":
        return cls(
            dim=g.dim,
            gram=g.gram.to_rows(),
            values=[v.quarter_units for v in g.values],
        )


class TransvectionModel(_Strict):
    kind: TransvectionKind
    a: List[Bit]
    b: Optional[List[Bit]] = None

    @model_validator(mode="after")
    def check_vectors(self) -> "TransvectionModel":
        if self.kind is TransvectionKind.S:
            if self.b is None or len(self.b) != len(self.a):
                raise ValueError("S-letters need two vectors of equal length")
        elif self.b is not None:
            raise ValueError("T-letters take a single vector")
        return self

    def to_domain(self) -> Transvection:
        b = Gf2Vector(self.b) if self.b is not None else None
        return Transvection(self.kind, Gf2Vector(self.a), b)

    @classmethod
    def from_domain(cls, t: Transvection) -> "TransvectionModel":
        return cls(
            kind=t.kind,
            a=list(t.a.bits),
            b=list(t.b.bits) if t.b is not None else None,
        )


class GeneratorWordModel(_Strict):
    """Letters apply left to right."""

    dim: int = Field(..., ge=1)
    letters: List[TransvectionModel] = Field(default_factory=list)

    def to_domain(self) -> GeneratorWord:
        return GeneratorWord(tuple(x.to_domain() for x in self.letters), self.dim)

    @classmethod
    def from_domain(cls, w: GeneratorWord) -> "GeneratorWordModel":
        return cls(dim=w.dim, letters=[TransvectionModel.from_domain(t) for t in w.letters])


class OrthonormalBasisModel(_Strict):
    """Orthonormal basis vectors (stored-basis coordinates) with their g-values."""

    basis: List[List[Bit]]
    values: List[int]

    @classmethod
    def from_domain(cls, basis: List[Gf2Vector], values: List[HValue]) -> "OrthonormalBasisModel":
        return cls(
            basis=[list(e.bits) for e in basis],
            values=[v.quarter_units for v in values],
        )


# ===========================
# Mapping classes
# ===========================


class MappingClassModel(_Strict):
    genus: int = Field(..., ge=1)
    h_star: Gf2MatrixModel
    h_starstar: Optional[IntMatrixModel] = None

    @model_validator(mode="after")
    def check_dims(self) -> "MappingClassModel":
        if self.h_star.rows != self.genus or self.h_star.cols != self.genus:
            raise ValueError(f"h_star must be {self.genus}x{self.genus}")
        if self.h_starstar is not None and self.h_starstar.rows != self.genus - 1:
            raise ValueError(f"h_starstar must be {self.genus - 1}x{self.genus - 1}")
        return self

    def to_domain(self) -> MappingClassData:
        rational = self.h_starstar.to_domain() if self.h_starstar is not None else None
        return MappingClassData(self.h_star.to_domain(), rational)

    @classmethod
    def from_domain(cls, h: MappingClassData) -> "MappingClassModel":
        return cls(
            genus=h.genus,
            h_star=Gf2MatrixModel.from_domain(h.h_star),
            h_starstar=(
                IntMatrixModel.from_domain(h.h_starstar) if h.h_starstar is not None else None
            ),
        )


# ===========================
# Event logs and invariants
# ===========================


class CEEventModel(_Strict):
    """One event; ``sign`` defaults to +1 and is ignored for H and Q."""

    kind: CEKind
    sign: Literal[1, -1] = 1

    def to_domain(self) -> CEEvent:
        return CEEvent(self.kind, self.sign)

    @classmethod
    def from_domain(cls, e: CEEvent) -> "CEEventModel":
        return cls(kind=e.kind, sign=e.sign)


class EventLogModel(_Strict):
    events: List[CEEventModel] = Field(default_factory=list)

    def to_domain(self) -> List[CEEvent]:
        return [e.to_domain() for e in self.events]

    @classmethod
    def from_domain(cls, events: List[CEEvent]) -> "EventLogModel":
        return cls(events=[CEEventModel.from_domain(e) for e in events])


class UniversalValueModel(_Strict):
    t: int
    p: Literal[0, 1]
    q: Literal[0, 1]

    def to_domain(self) -> UniversalValue:
        return UniversalValue(self.t, self.p, self.q)

    @classmethod
    def from_domain(cls, v: UniversalValue) -> "UniversalValueModel":
        return cls(t=v.t_coeff, p=v.p_coeff, q=v.q_coeff)


class SymbolAssignmentModel(RootModel[Dict[str, List[int]]]):
    """Group element (residue tuple) for each CE symbol, e.g. ``{"T+": [1], ...}``."""


class MTermModel(_Strict):
    """Coefficient of the generator of class t^a p^b q^c."""

    a: int = Field(..., ge=0)
    b: int = Field(..., ge=0)
    c: int = Field(..., ge=0)
    coeff: int = Field(..., description="Integer for pure t, residue mod 2^(r+1) otherwise")


class MElementModel(_Strict):
    degree: int = Field(..., ge=0, description="Truncation degree")
    terms: List[MTermModel] = Field(default_factory=list)

    def to_domain(self) -> MElement:
        return MElement(
            [(MonomialClass(t.a, t.b, t.c), int(t.coeff)) for t in self.terms], self.degree
        )

    @classmethod
    def from_domain(cls, x: MElement) -> "MElementModel":
        return cls(
            degree=x.truncation_degree,
            terms=[
                MTermModel(a=cls_.a, b=cls_.b, c=cls_.c, coeff=coeff) for cls_, coeff in x.items()
            ],
        )
