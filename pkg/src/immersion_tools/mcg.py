"""
Mapping classes of a non-orientable surface F = N_k through their homology actions.

A mapping class h is represented by ``h_*`` on H_1(F; Z/2) (a k×k GF(2) matrix)
and optionally ``h_**`` on H_1(F; Q) (a (k-1)×(k-1) integer matrix). For an
immersion i with H-form g, i and i∘h are regularly homotopic iff h_* preserves g,
and then the number of tangencies and of quadruple points in any generic regular
homotopy between them both have parity

    Ω(h) = rank(h_* - Id) + ε(det h_**)  (mod 2)

with ε(+1) = 0 and ε(-1) = 1.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import IntEnum
from typing import Optional, Sequence

from pydantic import BaseModel, Field, model_validator

from immersion_tools.ce_events import CEEvent, f1u
from immersion_tools.decomp import STABLE_DIM, decompose, psi, rewrite_s_free
from immersion_tools.errors import (
    DimensionMismatch,
    DomainError,
    IllegalGenerator,
    MissingRationalAction,
    NotOrthogonal,
    ParityViolation,
    SingularMatrix,
)
from immersion_tools.gf2core import (
    Gf2Matrix,
    Gf2Vector,
    IntMatrix,
    block_diag,
    det,
    det_sign,
    mat_mul,
    rank,
)
from immersion_tools.gf2core import identity as gf2_identity
from immersion_tools.hform import (
    ONE,
    ZERO,
    HForm,
    TransvectionKind,
    bilinear,
    evaluate,
    is_orthogonal,
    s_matrix,
    transvection_matrix,
)

__all__ = [
    "SurfaceDescriptor",
    "MappingClassData",
    "GoodMapKind",
    "GoodMap",
    "KleinEntry",
    "TangencyQuadrupleParity",
    "is_in_ng",
    "omega",
    "omega_parities",
    "good_map_z2_action",
    "klein_bottle_catalog",
    "klein_entry",
    "triple_invariant",
    "triple_point_change",
    "triple_points_after",
    "compose",
    "extend_by_identity",
    "good_map_factorization",
]

logger = logging.getLogger(__name__)


# ===========================
# Surfaces and mapping classes
# ===========================


class SurfaceDescriptor(BaseModel):
    """Closed non-orientable surface N_k of genus k.

    Attributes:
        genus: Number of crosscaps, so dim H_1(F; Z/2) = genus
        euler_char_parity: χ(F) mod 2, which equals genus mod 2 since χ(N_k) = 2 - k
    """

    genus: int = Field(ge=1)
    euler_char_parity: Optional[int] = Field(default=None, ge=0, le=1)

    @model_validator(mode="after")
    def check_parity(self) -> "SurfaceDescriptor":
        expected = self.genus % 2
        if self.euler_char_parity is None:
            self.euler_char_parity = expected
        elif self.euler_char_parity != expected:
            raise ValueError(
                f"N_{self.genus} has Euler characteristic parity {expected}, "
                f"got {self.euler_char_parity}"
            )
        return self

    @classmethod
    def projective_plane(cls) -> "SurfaceDescriptor":
        return cls(genus=1)

    @classmethod
    def klein_bottle(cls) -> "SurfaceDescriptor":
        return cls(genus=2)


@dataclass(frozen=True)
class MappingClassData:
    """Homology actions (h_*, h_**) of a mapping class."""

    h_star: Gf2Matrix
    h_starstar: Optional[IntMatrix] = None

    def __post_init__(self) -> None:
        if not self.h_star.is_square():
            raise DimensionMismatch(f"h_* must be square, got {self.h_star.shape}")
        if rank(self.h_star) < self.h_star.rows:
            raise SingularMatrix("h_* is not invertible over GF(2)")
        if self.h_starstar is not None:
            if self.h_starstar.n != self.genus - 1:
                raise DimensionMismatch(
                    f"h_** must be {self.genus - 1}x{self.genus - 1} for genus {self.genus}, "
                    f"got {self.h_starstar.n}x{self.h_starstar.n}"
                )
            if det(self.h_starstar) == 0:
                raise SingularMatrix("h_** has zero determinant")

    @property
    def genus(self) -> int:
        return self.h_star.rows

    @classmethod
    def identity(cls, genus: int) -> "MappingClassData":
        return cls(gf2_identity(genus), IntMatrix.identity(genus - 1))


def is_in_ng(g: HForm, h: MappingClassData) -> bool:
    """True iff h_* ∈ O(E, g), i.e. i and i∘h are regularly homotopic."""
    if g.dim != h.genus:
        raise DimensionMismatch(f"Form of dim {g.dim} for a mapping class of genus {h.genus}")
    return is_orthogonal(g, h.h_star)


def omega(h: MappingClassData) -> int:
    """Ω(h) = ψ(h_*) + ε(det h_**) mod 2.

    Raises:
        MissingRationalAction: if h_** was not supplied.
    """
    if h.h_starstar is None:
        raise MissingRationalAction("Ω needs the action h_** on rational homology")
    epsilon = 0 if det_sign(h.h_starstar) == 1 else 1
    return (psi(h.h_star) + epsilon) % 2


class TangencyQuadrupleParity(BaseModel):
    """Parities of tangency (P) and quadruple-point (Q) counts of a regular homotopy i ~ i∘h."""

    tangency_parity: int
    quadruple_parity: int


def omega_parities(h: MappingClassData) -> TangencyQuadrupleParity:
    value = omega(h)
    return TangencyQuadrupleParity(tangency_parity=value, quadruple_parity=value)


def compose(h1: MappingClassData, h2: MappingClassData) -> MappingClassData:
    """h1 ∘ h2 (apply h2 first). h_** is kept only when both factors carry it."""
    if h1.genus != h2.genus:
        raise DimensionMismatch(f"Cannot compose genus {h1.genus} with genus {h2.genus}")
    rational = None
    if h1.h_starstar is not None and h2.h_starstar is not None:
        rational = h1.h_starstar @ h2.h_starstar
    return MappingClassData(mat_mul(h1.h_star, h2.h_star), rational)


def extend_by_identity(h: MappingClassData, extra_genus: int) -> MappingClassData:
    """Extend h to N_{k+m} by the identity on m added crosscaps. Ω is unchanged."""
    if extra_genus < 0:
        raise DomainError(f"extra_genus must be >= 0, got {extra_genus}")
    if extra_genus == 0:
        return h
    rational = None
    if h.h_starstar is not None:
        rational = h.h_starstar.block_diag(IntMatrix.identity(extra_genus))
    return MappingClassData(block_diag(h.h_star, gf2_identity(extra_genus)), rational)


# ===========================
# Good maps
# ===========================


class GoodMapKind(IntEnum):
    """The five generator types of N_g."""

    SQUARED_TWIST = 1
    TWIST = 2
    NULL_TWIST = 3
    S_P = 4
    Y_MAP = 5


@dataclass(frozen=True)
class GoodMap:
    """A good map described by the homology classes of its circles."""

    kind: GoodMapKind
    c: Optional[Gf2Vector] = None
    d: Optional[Gf2Vector] = None

    def action(self, g: HForm) -> Gf2Matrix:
        return good_map_z2_action(g, self.kind, self.c, self.d)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise IllegalGenerator(message)


def good_map_z2_action(
    g: HForm,
    kind: GoodMapKind | int,
    c: Optional[Gf2Vector] = None,
    d: Optional[Gf2Vector] = None,
) -> Gf2Matrix:
    """Matrix induced on H_1(F; Z/2) by a good map.

    - kind 1, squared twist on an A-circle ([c]·[c] = 0): identity
    - kind 2, twist on a circle with g([c]) = 1: T_[c]
    - kind 3, twist on a null-homologous circle: identity
    - kind 4, S_P for a pair of pants with g([c]) = g([d]) = 0 and [c]·[d] = 0: S_[c],[d]
    - kind 5, Y-map: identity

    Raises:
        IllegalGenerator: when the class conditions for ``kind`` fail or data is missing.
    """
    kind = GoodMapKind(kind)
    if kind is GoodMapKind.Y_MAP:
        return gf2_identity(g.dim)
    _require(c is not None, f"Good map of kind {kind.value} needs a circle class c")
    if kind is GoodMapKind.SQUARED_TWIST:
        _require(bilinear(g, c, c) == 0, "Kind 1 needs an A-circle: [c]·[c] = 0")
        return gf2_identity(g.dim)
    if kind is GoodMapKind.TWIST:
        _require(evaluate(g, c) == ONE, f"Kind 2 needs g([c]) = 1, got {evaluate(g, c)}")
        return transvection_matrix(g, c)
    if kind is GoodMapKind.NULL_TWIST:
        _require(c.is_zero(), "Kind 3 needs a null-homologous circle")
        return gf2_identity(g.dim)
    _require(d is not None, "Kind 4 needs two circle classes c and d")
    _require(
        evaluate(g, c) == ZERO and evaluate(g, d) == ZERO,
        "Kind 4 needs g([c]) = g([d]) = 0",
    )
    _require(bilinear(g, c, d) == 0, "Kind 4 needs [c]·[d] = 0")
    return s_matrix(g, c, d)


def good_map_factorization(g: HForm, h_star: Gf2Matrix) -> list[GoodMap]:
    """Good maps whose induced actions, applied in order, compose to h_*.

    T-letters become twists (kind 2) and S-letters become S_P maps (kind 4). In
    dimension >= 9 the word is made S-free first. The factors with trivial
    action (kinds 1, 3 and 5) are geometric and never appear.
    """
    if not is_orthogonal(g, h_star):
        raise NotOrthogonal("h_* does not preserve the H-form")
    word = decompose(g, h_star)
    if g.dim >= STABLE_DIM:
        word = rewrite_s_free(g, word)
    maps = []
    for letter in word:
        if letter.kind is TransvectionKind.T:
            maps.append(GoodMap(GoodMapKind.TWIST, letter.a))
        else:
            maps.append(GoodMap(GoodMapKind.S_P, letter.a, letter.b))
    return maps


# ===========================
# The Klein bottle
# ===========================


@dataclass(frozen=True)
class KleinEntry:
    name: str
    description: str
    data: MappingClassData
    expected_omega: int


_SWAP = Gf2Matrix([[0, 1], [1, 0]])


def klein_bottle_catalog() -> list[KleinEntry]:
    """The four mapping classes of the Klein bottle, N(Kl) ≅ Z/2 ⊕ Z/2.

    u is the Y-map (h_* = Id, h_** = -1) and v the rotation swapping the two
    M-circles (h_* = swap, h_** = -1).
    """
    plus, minus = IntMatrix([[1]]), IntMatrix([[-1]])
    ident = gf2_identity(2)
    return [
        KleinEntry("id", "identity", MappingClassData(ident, plus), 0),
        KleinEntry("u", "Y-map", MappingClassData(ident, minus), 1),
        KleinEntry("v", "rotation swapping the M-circles", MappingClassData(_SWAP, minus), 0),
        KleinEntry("vu", "rotation after Y-map", MappingClassData(_SWAP, plus), 1),
    ]


def klein_entry(name: str) -> KleinEntry:
    """Catalog entry by name; ``v∘u`` and ``v*u`` are accepted for ``vu``."""
    key = name.strip().replace("∘", "").replace("*", "")
    for entry in klein_bottle_catalog():
        if entry.name == key:
            return entry
    raise KeyError(f"No Klein bottle mapping class named {name!r}")


# ===========================
# Triple points
# ===========================


def triple_invariant(n_triple: int, surface: SurfaceDescriptor) -> int:
    """T(i) = (N - c) / 2 for N triple points on a surface with χ ≡ c mod 2.

    Raises:
        ParityViolation: if N and c have different parity, or N < 0.
    """
    c = surface.euler_char_parity
    if n_triple < 0:
        raise ParityViolation(f"Triple-point count must be >= 0, got {n_triple}")
    if (n_triple - c) % 2:
        raise ParityViolation(
            f"{n_triple} triple points is impossible when χ(F) mod 2 = {c}"
        )
    return (n_triple - c) // 2


def triple_point_change(events: Sequence[CEEvent]) -> int:
    """Change in the number of triple points along a log: ±2 per T-event."""
    return 2 * f1u(events).t_coeff


def triple_points_after(n_before: int, events: Sequence[CEEvent]) -> int:
    """Triple-point count after a logged homotopy.

    Raises:
        DomainError: if the count would become negative.
    """
    after = n_before + triple_point_change(events)
    if after < 0:
        raise DomainError(f"Log removes more triple points than the {n_before} present")
    return after
