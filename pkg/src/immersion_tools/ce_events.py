"""
Codimension-1 event logs and the universal order-1 invariant.

A regular homotopy between generic immersions crosses finitely many CE strata.
Its log records the kind of each crossing and, for the co-oriented kinds E and
T, the crossing direction. The universal order-1 invariant takes values in
G_U = Z t ⊕ Z/2 p ⊕ Z/2 q:

    f1u(log) = (signed count of T) t + (#E + #H) p + (#Q) q

Values are normalised to 0 on the empty log. The invariant of an immersion is
only defined relative to a chosen base immersion, so differences of values are
the meaningful quantities.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from immersion_tools.abelian_groups import UNIVERSAL_GROUP, FinAbGroup, GroupElement
from immersion_tools.ce_symbols import SYMBOLS
from immersion_tools.errors import DomainError, MalformedFunction

__all__ = [
    "CEKind",
    "CEEvent",
    "UniversalValue",
    "f1u",
    "concat_logs",
    "reverse_log",
    "delta1_from_hom",
    "universal_assignment",
    "codim2_relations_check",
]

logger = logging.getLogger(__name__)


class CEKind(str, Enum):
    """Configuration types of codimension-1 strata."""

    E = "E"
    H = "H"
    T = "T"
    Q = "Q"

    @property
    def co_orientable(self) -> bool:
        return self in (CEKind.E, CEKind.T)


@dataclass(frozen=True)
class CEEvent:
    """One stratum crossing. ``sign`` is only meaningful for E and T."""

    kind: CEKind
    sign: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", CEKind(self.kind))
        if self.sign not in (1, -1):
            raise DomainError(f"Event sign must be +1 or -1, got {self.sign}")

    def reversed(self) -> "CEEvent":
        """The same crossing traversed backwards."""
        if self.kind.co_orientable:
            return CEEvent(self.kind, -self.sign)
        return self

    def __str__(self) -> str:
        if self.kind.co_orientable:
            return f"{self.kind.value}{'+' if self.sign > 0 else '-'}"
        return self.kind.value


@dataclass(frozen=True)
class UniversalValue:
    """Element t_coeff·t + p_coeff·p + q_coeff·q of G_U."""

    t_coeff: int = 0
    p_coeff: int = 0
    q_coeff: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "p_coeff", self.p_coeff % 2)
        object.__setattr__(self, "q_coeff", self.q_coeff % 2)

    @classmethod
    def from_element(cls, x: GroupElement) -> "UniversalValue":
        p, q, t = UNIVERSAL_GROUP.reduce(x)
        return cls(t, p, q)

    def to_element(self) -> GroupElement:
        return (self.p_coeff, self.q_coeff, self.t_coeff)

    @property
    def torsion_part(self) -> tuple[int, int]:
        return self.p_coeff, self.q_coeff

    def __add__(self, other: "UniversalValue") -> "UniversalValue":
        return UniversalValue(
            self.t_coeff + other.t_coeff,
            self.p_coeff + other.p_coeff,
            self.q_coeff + other.q_coeff,
        )

    def __neg__(self) -> "UniversalValue":
        return UniversalValue(-self.t_coeff, self.p_coeff, self.q_coeff)

    def __sub__(self, other: "UniversalValue") -> "UniversalValue":
        return self + (-other)

    def __str__(self) -> str:
        parts = []
        if self.t_coeff:
            parts.append({1: "t", -1: "-t"}.get(self.t_coeff, f"{self.t_coeff}t"))
        if self.p_coeff:
            parts.append("p")
        if self.q_coeff:
            parts.append("q")
        return " + ".join(parts) if parts else "0"


def f1u(events: Iterable[CEEvent]) -> UniversalValue:
    """Universal order-1 invariant of the homotopy recorded by ``events``.

    Example:
        >>> from immersion_tools.ce_events import CEEvent, f1u
        >>> str(f1u([CEEvent("T"), CEEvent("E"), CEEvent("T"), CEEvent("Q"), CEEvent("H")]))
        '2t + q'
    """
    t = p = q = 0
    for event in events:
        if event.kind is CEKind.T:
            t += event.sign
        elif event.kind is CEKind.Q:
            q += 1
        else:
            p += 1
    return UniversalValue(t, p, q)


def concat_logs(*logs: Sequence[CEEvent]) -> list[CEEvent]:
    return [event for log in logs for event in log]


def reverse_log(events: Sequence[CEEvent]) -> list[CEEvent]:
    """Log of the reversed homotopy: reversed order, E and T signs flipped."""
    return [event.reversed() for event in reversed(events)]


# ===========================
# Order-1 relation calculus
# ===========================


def delta1_from_hom(
    group: FinAbGroup,
    t_image: GroupElement,
    p_image: GroupElement,
    q_image: GroupElement,
) -> dict[str, GroupElement]:
    """Assignment on the eight CE symbols induced by a homomorphism G_U -> G.

    Raises:
        MalformedFunction: if the images of p or q are not 2-torsion.
    """
    p, q, t = (group.reduce(x) for x in (p_image, q_image, t_image))
    if not (group.is_two_torsion(p) and group.is_two_torsion(q)):
        raise MalformedFunction("Images of p and q must satisfy 2x = 0")
    image = {"T+": t, "H+": p, "Q+": q}
    return {name: image[SYMBOLS[name].reduced] for name in SYMBOLS}


def universal_assignment() -> dict[str, GroupElement]:
    """g1U over G_U: T± ↦ t, E±, H± ↦ p, Q± ↦ q."""
    return delta1_from_hom(UNIVERSAL_GROUP, (0, 0, 1), (1, 0, 0), (0, 1, 0))


def _normalise_assignment(
    group: FinAbGroup, assignment: Mapping[str, Sequence[int]]
) -> dict[str, GroupElement]:
    values: dict[str, GroupElement] = {}
    for spelling, value in assignment.items():
        name = SYMBOLS.canonical_name(spelling)
        if name is None:
            raise MalformedFunction(f"Unknown CE symbol {spelling!r}")
        values[name] = group.reduce(value)
    missing = sorted(set(SYMBOLS.keys()) - set(values))
    if missing:
        raise MalformedFunction(f"Assignment is missing symbols: {', '.join(missing)}")
    return values


def _relation_terms(e: str) -> list[list[tuple[int, str, bool]]]:
    """Relation families for degree label ``e`` as (coefficient, symbol, signed) terms.

    Terms with ``signed`` set carry an ambiguous ± and are tried with both signs.
    """
    o = "-" if e == "+" else "+"
    return [
        [(1, f"E{e}", False), (1, f"H{e}", True)],
        [(1, f"T{e}", False), (-1, f"T{o}", False)],
        [(1, f"T{o}", False), (-1, f"T{e}", False), (-1, f"E{o}", False), (1, f"E{e}", False)],
        [(-1, f"T{e}", False), (1, f"T{o}", False), (1, f"H{o}", True), (1, f"H{e}", True)],
        [(1, f"Q{e}", True), (1, f"Q{o}", True), (-1, f"T{e}", False), (1, f"T{o}", False)],
        [(5, f"Q{e}", True), (5, f"Q{o}", True)],
    ]


def codim2_relations_check(group: FinAbGroup, assignment: Mapping[str, Sequence[int]]) -> bool:
    """True iff an assignment on the eight CE symbols satisfies the order-1 relations.

    The assignment must also make H± and Q± 2-torsion; otherwise it is rejected.
    Every ± in a relation is resolved both ways.

    Raises:
        MalformedFunction: if a symbol is unknown or missing.
    """
    values = _normalise_assignment(group, assignment)
    for name in ("H+", "H-", "Q+", "Q-"):
        if not group.is_two_torsion(values[name]):
            logger.debug("Relation check failed: 2·%s != 0", name)
            return False
    for e in ("+", "-"):
        for index, relation in enumerate(_relation_terms(e), start=1):
            signed = [i for i, term in enumerate(relation) if term[2]]
            for signs in itertools.product((1, -1), repeat=len(signed)):
                flip = dict(zip(signed, signs))
                total = group.zero
                for i, (coeff, name, _) in enumerate(relation):
                    total = group.add(total, group.multiple(coeff * flip.get(i, 1), values[name]))
                if not group.is_zero(total):
                    logger.debug("Relation (%d) fails for e = %s, signs %s", index, e, signs)
                    return False
    return True
