"""
Finitely generated abelian groups given by invariant factors.

A group is ``Z/d_1 ⊕ ... ⊕ Z/d_k`` with ``d_1 | d_2 | ... | d_k``; a factor of 0
stands for Z, so free factors come last. Elements are tuples of residues, each
reduced into ``[0, d_i)`` (free components are unrestricted integers).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from immersion_tools.errors import DomainError, GuardViolation

__all__ = ["FinAbGroup", "GroupElement", "parse_group", "UNIVERSAL_GROUP"]

GroupElement = tuple[int, ...]


@dataclass(frozen=True)
class FinAbGroup:
    """Abelian group in invariant-factor form."""

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        factors = tuple(int(d) for d in self.factors)
        if any(d < 0 or d == 1 for d in factors):
            raise DomainError(f"Invariant factors must be 0 or >= 2, got {factors}")
        for left, right in zip(factors, factors[1:]):
            divides = right % left == 0 if left else right == 0
            if not divides:
                raise DomainError(f"Invariant factors must form a divisibility chain: {factors}")
        object.__setattr__(self, "factors", factors)

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> "FinAbGroup":
        """Group with the given cyclic factors in any order; requires a divisibility chain."""
        finite = sorted(d for d in orders if d != 0)
        free = [0] * sum(1 for d in orders if d == 0)
        return cls(tuple(finite + free))

    # -------------------------
    # Structure
    # -------------------------

    @property
    def rank(self) -> int:
        return len(self.factors)

    def is_finite(self) -> bool:
        return 0 not in self.factors

    def order(self) -> int:
        if not self.is_finite():
            raise GuardViolation(f"{self} is infinite")
        return math.prod(self.factors)

    def elements(self) -> Iterator[GroupElement]:
        """All elements in lexicographic order of residues."""
        if not self.is_finite():
            raise GuardViolation(f"Cannot enumerate the infinite group {self}")
        return itertools.product(*(range(d) for d in self.factors))

    def __str__(self) -> str:
        if not self.factors:
            return "0"
        return " + ".join("Z" if d == 0 else f"Z/{d}" for d in self.factors)

    # -------------------------
    # Arithmetic
    # -------------------------

    def reduce(self, x: Sequence[int]) -> GroupElement:
        if len(x) != self.rank:
            raise DomainError(f"Element {tuple(x)} has {len(x)} components, expected {self.rank}")
        return tuple(int(v) % d if d else int(v) for v, d in zip(x, self.factors))

    @property
    def zero(self) -> GroupElement:
        return (0,) * self.rank

    def add(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return self.reduce([a + b for a, b in zip(x, y)])

    def neg(self, x: GroupElement) -> GroupElement:
        return self.reduce([-a for a in x])

    def sub(self, x: GroupElement, y: GroupElement) -> GroupElement:
        return self.reduce([a - b for a, b in zip(x, y)])

    def multiple(self, k: int, x: GroupElement) -> GroupElement:
        return self.reduce([k * a for a in x])

    def is_zero(self, x: GroupElement) -> bool:
        return all(v == 0 for v in self.reduce(x))

    def is_two_torsion(self, x: GroupElement) -> bool:
        return self.is_zero(self.multiple(2, x))

    def two_torsion(self) -> list[GroupElement]:
        """Elements of G[2] = {x : 2x = 0}."""
        per_factor = [[0, d // 2] if d and d % 2 == 0 else [0] for d in self.factors]
        return [tuple(x) for x in itertools.product(*per_factor)]

    def divisible_by_power_of_two(self, x: GroupElement, r: int) -> bool:
        """True iff x = 2^r·a for some a.

        On Z/d the image of multiplication by 2^r is the subgroup generated by
        gcd(2^r, d), so the test is componentwise.
        """
        step = 1 << r
        return all(
            v % (math.gcd(step, d) if d else step) == 0
            for v, d in zip(self.reduce(x), self.factors)
        )

    def torsion_count(self, k: int) -> int:
        """|G[k]| = |{x : k·x = 0}| for k >= 1."""
        if k == 0:
            return self.order()
        return math.prod(math.gcd(k, d) if d else 1 for d in self.factors)

    def hom_count(self, source_factors: Sequence[int]) -> int:
        """|Hom(A, G)| for A = ⊕ Z/a over ``source_factors`` (0 meaning Z).

        Hom(Z/a, G) ≅ G[a] and Hom(Z, G) ≅ G.
        """
        if not self.is_finite() and any(a == 0 for a in source_factors):
            raise GuardViolation(f"Hom(Z, {self}) is infinite")
        return math.prod(self.torsion_count(a) for a in source_factors)


def parse_group(text: str) -> FinAbGroup:
    """Parse a comma-separated factor list such as ``"2,4"`` or ``"0,2,2"``.

    ``"1"`` and the empty string give the trivial group.
    """
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        orders = [int(p) for p in parts]
    except ValueError as exc:
        raise DomainError(f"Group factors must be integers, got {text!r}") from exc
    return FinAbGroup.from_orders([d for d in orders if d != 1])


#: G_U = Z/2 p ⊕ Z/2 q ⊕ Z t, components ordered (p, q, t).
UNIVERSAL_GROUP = FinAbGroup((2, 2, 0))
