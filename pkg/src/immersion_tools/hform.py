"""
H-forms on GF(2) vector spaces.

An H-form is a map ``g: E -> (1/2 Z)/2Z`` with ``g(x+y) = g(x) + g(y) + C(x, y)``
for a non-degenerate symmetric bilinear form ``C`` and at least one value of
``g`` equal to ±1/2. Values are stored in quarter units (Z/4): 1/2 ↦ 1, 1 ↦ 2,
-1/2 ↦ 3, 0 ↦ 0. Halves only appear when values are rendered.

An :class:`HForm` stores an arbitrary basis through its Gram matrix together
with ``g`` on each basis vector. Orthonormal data is derived on demand.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Literal, Optional, Sequence

import numpy as np
from pydantic import BaseModel

from immersion_tools.config import get_max_enum_dim
from immersion_tools.errors import (
    DimensionMismatch,
    DimensionTooLarge,
    IllegalGenerator,
    InternalExhaustion,
    InvalidForm,
)
from immersion_tools.gf2core import (
    Gf2Matrix,
    Gf2Vector,
    block_diag,
    identity,
    inverse,
    mat_mul,
    rank,
    transpose,
)

__all__ = [
    "HValue",
    "HForm",
    "FormViolation",
    "TransvectionKind",
    "Transvection",
    "evaluate",
    "bilinear",
    "validate",
    "orthonormalize",
    "orthonormal_change_of_basis",
    "transvection_matrix",
    "s_matrix",
    "apply_transvection",
    "is_orthogonal",
    "enumerate_group",
    "direct_sum",
]

logger = logging.getLogger(__name__)

_RENDER = {0: "0", 1: "1/2", 2: "1", 3: "-1/2"}


@dataclass(frozen=True, slots=True, order=True)
class HValue:
    """Element of H = (1/2 Z)/2Z in quarter units."""

    quarter_units: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "quarter_units", self.quarter_units % 4)

    @classmethod
    def parse(cls, text: str) -> "HValue":
        """Parse a rendered value such as ``"1/2"`` or ``"-1/2"``."""
        lookup = {v: k for k, v in _RENDER.items()}
        lookup["-1"] = 2
        try:
            return cls(lookup[text.strip()])
        except KeyError as exc:
            raise ValueError(f"Not an element of H: {text!r}") from exc

    @property
    def is_odd(self) -> bool:
        """True for ±1/2, the values outside Z/2."""
        return bool(self.quarter_units & 1)

    def __add__(self, other: "HValue") -> "HValue":
        return HValue(self.quarter_units + other.quarter_units)

    def __neg__(self) -> "HValue":
        return HValue(-self.quarter_units)

    def double(self) -> "HValue":
        return HValue(2 * self.quarter_units)

    def __str__(self) -> str:
        return _RENDER[self.quarter_units]


ZERO, HALF, ONE, MINUS_HALF = HValue(0), HValue(1), HValue(2), HValue(3)


class FormViolation(BaseModel):
    """First violated condition of an H-form."""

    condition: Literal["shape", "asymmetric", "degenerate", "parity", "no odd vector"]
    message: str


class HForm:
    """An H-form given by a Gram matrix and values on the stored basis."""

    def __init__(self, gram: Gf2Matrix, values: Sequence[HValue | int]) -> None:
        vals = tuple(v if isinstance(v, HValue) else HValue(int(v)) for v in values)
        if not gram.is_square() or gram.rows != len(vals):
            raise DimensionMismatch(
                f"Gram matrix {gram.shape} does not match {len(vals)} basis values"
            )
        self.gram = gram
        self.values = vals
        self._g = gram.array.astype(np.int64)

    @classmethod
    def from_orthonormal(cls, values: Sequence[HValue | int]) -> "HForm":
        return cls(identity(len(values)), values)

    @property
    def dim(self) -> int:
        return len(self.values)

    @cached_property
    def _orthonormal(self) -> tuple[Gf2Matrix, Gf2Matrix, tuple[HValue, ...]]:
        return _orthonormal_change_of_basis(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HForm):
            return NotImplemented
        return self.gram == other.gram and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.gram, self.values))

    def __repr__(self) -> str:
        return f"HForm(dim={self.dim}, values=({', '.join(map(str, self.values))}))"


# ===========================
# Evaluation
# ===========================


def _check_dim(g: HForm, x: Gf2Vector) -> None:
    if x.dim != g.dim:
        raise DimensionMismatch(f"Vector of dim {x.dim} for form of dim {g.dim}")


def bilinear(g: HForm, x: Gf2Vector, y: Gf2Vector) -> int:
    """C(x, y) in GF(2)."""
    _check_dim(g, x)
    _check_dim(g, y)
    return int(x.array.astype(np.int64) @ g._g @ y.array.astype(np.int64)) & 1


def evaluate(g: HForm, x: Gf2Vector) -> HValue:
    """g(x): the sum of basis values over supp(x) plus 2·C(b_i, b_j) for pairs i < j."""
    _check_dim(g, x)
    xi = x.array.astype(np.int64)
    support = x.support()
    diag = int(np.diagonal(g._g)[list(support)].sum()) if support else 0
    cross = (int(xi @ g._g @ xi) - diag) // 2
    return HValue(sum(g.values[i].quarter_units for i in support) + 2 * cross)


def validate(g: HForm) -> Optional[FormViolation]:
    """Return the first violated H-form condition, or None when ``g`` is valid."""
    gram = g.gram
    if not gram.is_square() or gram.rows != g.dim:
        return FormViolation(condition="shape", message="Gram matrix must be dim x dim")
    if gram != transpose(gram):
        return FormViolation(condition="asymmetric", message="Gram matrix is not symmetric")
    if rank(gram) < g.dim:
        return FormViolation(
            condition="degenerate",
            message=f"Gram matrix has rank {rank(gram)} < {g.dim}",
        )
    for i, value in enumerate(g.values):
        if value.is_odd != bool(gram[i, i]):
            return FormViolation(
                condition="parity",
                message=f"g(b_{i}) = {value} does not match C(b_{i}, b_{i}) = {gram[i, i]}",
            )
    if not any(gram[i, i] for i in range(g.dim)):
        return FormViolation(
            condition="no odd vector",
            message="C is alternating, so no vector has g-value ±1/2",
        )
    return None


def _require_valid(g: HForm) -> None:
    violation = validate(g)
    if violation is not None:
        raise InvalidForm(violation)


# ===========================
# Orthonormal bases
# ===========================


def _orthonormal_change_of_basis(g: HForm) -> tuple[Gf2Matrix, Gf2Matrix, tuple[HValue, ...]]:
    _require_valid(g)
    n = g.dim
    remaining = [Gf2Vector.basis(i, n) for i in range(n)]
    found: list[Gf2Vector] = []
    while remaining:
        odd = next((i for i, v in enumerate(remaining) if bilinear(g, v, v)), None)
        if odd is not None:
            e = remaining.pop(odd)
            remaining = [y + e if bilinear(g, y, e) else y for y in remaining]
            found.append(e)
            continue
        # the rest is alternating: trade a hyperbolic pair and one odd vector for three odd ones
        if not found:
            raise InternalExhaustion("Alternating remainder with no odd vector to absorb it")
        u = remaining[0]
        j = next((k for k in range(1, len(remaining)) if bilinear(g, u, remaining[k])), None)
        if j is None:
            raise InternalExhaustion("Degenerate remainder during orthonormalization")
        w = remaining[j]
        e = found.pop()
        found.extend([e + u, e + w, e + u + w])
        logger.debug("Absorbed hyperbolic pair %r, %r into odd vector %r", u, w, e)
        rest = [y for k, y in enumerate(remaining) if k not in (0, j)]
        remaining = [
            _add_if(_add_if(y, u, bilinear(g, y, w)), w, bilinear(g, y, u)) for y in rest
        ]
    basis = Gf2Matrix.from_columns(found)
    d = tuple(evaluate(g, e) for e in found)
    return basis, inverse(basis), d


def _add_if(y: Gf2Vector, v: Gf2Vector, flag: int) -> Gf2Vector:
    return y + v if flag else y


def orthonormal_change_of_basis(g: HForm) -> tuple[Gf2Matrix, Gf2Matrix, tuple[HValue, ...]]:
    """Return ``(P, P⁻¹, d)`` where the columns of ``P`` form an orthonormal basis."""
    return g._orthonormal


def orthonormalize(g: HForm) -> tuple[list[Gf2Vector], list[HValue]]:
    """Orthonormal basis e_1..e_n (stored-basis coordinates) and d_i = g(e_i).

    Raises:
        InvalidForm: if ``g`` fails :func:`validate`.
    """
    basis, _, d = g._orthonormal
    return basis.columns(), list(d)


# ===========================
# Transvections
# ===========================


class TransvectionKind(str, Enum):
    """Generator kinds: T_a and S_{a,b}."""

    T = "T"
    S = "S"


@dataclass(frozen=True, slots=True)
class Transvection:
    """A generator letter. ``b`` is None for kind T."""

    kind: TransvectionKind
    a: Gf2Vector
    b: Optional[Gf2Vector] = None

    @classmethod
    def t(cls, a: Gf2Vector) -> "Transvection":
        return cls(TransvectionKind.T, a)

    @classmethod
    def s(cls, a: Gf2Vector, b: Gf2Vector) -> "Transvection":
        return cls(TransvectionKind.S, a, b)

    def is_legal(self, g: HForm) -> bool:
        if self.kind is TransvectionKind.T:
            return self.a.is_zero() or evaluate(g, self.a) == ONE
        if self.b is None:
            return False
        return (
            evaluate(g, self.a) == ZERO
            and evaluate(g, self.b) == ZERO
            and evaluate(g, self.a + self.b) == ZERO
        )

    def support(self, coordinates: Gf2Matrix | None = None) -> set[int]:
        """Union of supports of a and b, optionally after a change of coordinates."""
        vectors = [self.a] if self.b is None else [self.a, self.b]
        if coordinates is not None:
            vectors = [coordinates(v) for v in vectors]
        return set().union(*(v.support() for v in vectors))

    def __str__(self) -> str:
        if self.kind is TransvectionKind.T:
            return f"T[{''.join(map(str, self.a.bits))}]"
        return f"S[{''.join(map(str, self.a.bits))},{''.join(map(str, self.b.bits))}]"


def _outer(g: HForm, a: Gf2Vector, b: Gf2Vector) -> np.ndarray:
    """Matrix of x ↦ C(x, b)·a."""
    return np.outer(a.array.astype(np.int64), g._g @ b.array.astype(np.int64))


def transvection_matrix(g: HForm, a: Gf2Vector) -> Gf2Matrix:
    """Matrix of T_a(x) = x + C(x, a)·a, without a legality check."""
    _check_dim(g, a)
    return Gf2Matrix((np.eye(g.dim, dtype=np.int64) + _outer(g, a, a)) & 1)


def s_matrix(g: HForm, a: Gf2Vector, b: Gf2Vector) -> Gf2Matrix:
    """Matrix of S_{a,b}(x) = x + C(x, b)·a + C(x, a)·b, without a legality check."""
    _check_dim(g, a)
    _check_dim(g, b)
    return Gf2Matrix((np.eye(g.dim, dtype=np.int64) + _outer(g, a, b) + _outer(g, b, a)) & 1)


def apply_transvection(g: HForm, t: Transvection) -> Gf2Matrix:
    """Matrix of a legal generator in the stored basis.

    Raises:
        IllegalGenerator: when T_a has g(a) ∉ {1} and a ≠ 0, or S_{a,b} has a nonzero
            g-value on a, b or a+b.
    """
    if not t.is_legal(g):
        raise IllegalGenerator(f"{t} is not orthogonal for {g!r}")
    if t.kind is TransvectionKind.T:
        return transvection_matrix(g, t.a)
    return s_matrix(g, t.a, t.b)


def is_orthogonal(g: HForm, m: Gf2Matrix) -> bool:
    """True iff ``m`` preserves g on every basis vector and C on every pair."""
    if not m.is_square() or m.rows != g.dim:
        raise DimensionMismatch(f"Matrix {m.shape} does not act on a space of dim {g.dim}")
    if any(evaluate(g, m.column(i)) != g.values[i] for i in range(g.dim)):
        return False
    mi = m.array.astype(np.int64)
    return bool(np.array_equal((mi.T @ g._g @ mi) & 1, g._g))


# ===========================
# Exhaustive enumeration
# ===========================


def enumerate_group(g: HForm) -> list[Gf2Matrix]:
    """All elements of O(E, g) in the stored basis, sorted by their entries.

    Backtracks over images of the orthonormal basis, restricting each image to
    vectors with the matching g-value that are orthogonal to earlier images.

    Raises:
        DimensionTooLarge: above the configured guard (at most 6).
        InvalidForm: if ``g`` is not a valid H-form.
    """
    limit = get_max_enum_dim()
    if g.dim > limit:
        raise DimensionTooLarge(f"enumerate_group supports dim <= {limit}, got {g.dim}")
    basis, basis_inv, d = orthonormal_change_of_basis(g)
    n = g.dim

    # in orthonormal coordinates g(x) is the plain sum of d_i over supp(x)
    by_value: dict[int, list[int]] = {}
    for x in range(1, 1 << n):
        q = sum(d[i].quarter_units for i in range(n) if x >> i & 1) % 4
        by_value.setdefault(q, []).append(x)

    images: list[int] = []
    found: list[list[int]] = []

    def extend(i: int) -> None:
        if i == n:
            found.append(list(images))
            return
        for x in by_value.get(d[i].quarter_units, []):
            if all((x & y).bit_count() & 1 == 0 for y in images):
                images.append(x)
                extend(i + 1)
                images.pop()

    extend(0)
    elements = []
    for cols in found:
        q = Gf2Matrix.from_columns([Gf2Vector.from_int(c, n) for c in cols])
        elements.append(mat_mul(mat_mul(basis, q), basis_inv))
    elements.sort(key=Gf2Matrix.sort_key)
    logger.debug("O(E, g) for %r has %d elements", g, len(elements))
    return elements


def direct_sum(g: HForm, h: HForm) -> HForm:
    """The H-form g ⊕ h on E ⊕ E', (x, x') ↦ g(x) + h(x')."""
    return HForm(block_diag(g.gram, h.gram), g.values + h.values)
