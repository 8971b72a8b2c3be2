"""
Functions on unordered tuples of CE symbols: the spaces Δ_n(G) and E_n(G).

Every function in Δ_n is determined by its values on n-tuples over the reduced
alphabet Y = {T+, H+, Q+}, with tuples containing H+ or Q+ sent to 2-torsion.
E_n adds the relation H+H+Q+ = H+Q+Q+ (in any context) and the divisibility
condition f(z) ∈ 2^{r(z)}·G.

The tuples linked by H+H+Q+ = H+Q+Q+ are exactly those sharing a monomial class
of M_n (T+ ↦ t, H+ ↦ p, Q+ ↦ q), so :func:`count_en` enumerates each linked
component on its own and multiplies the counts.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from pydantic import BaseModel

from immersion_tools.abelian_groups import FinAbGroup, GroupElement
from immersion_tools.ce_symbols import SYMBOLS, Y_SYMBOLS
from immersion_tools.errors import GuardViolation, MalformedFunction
from immersion_tools.series import MonomialClass, degree_classes, m_structure

__all__ = [
    "SymbolTuple",
    "all_tuples",
    "delta_reduce",
    "tuple_repetition",
    "SymbolFunction",
    "is_in_en",
    "count_en",
    "en_closed_form_count",
    "hom_count_mn",
    "UniversalityReport",
    "universality_report",
    "pullback_function",
    "iter_hom_images",
    "MAX_COUNT_DEGREE",
    "MAX_COUNT_GROUP_ORDER",
]

logger = logging.getLogger(__name__)

MAX_COUNT_DEGREE = 4
MAX_COUNT_GROUP_ORDER = 16


@dataclass(frozen=True, order=True)
class SymbolTuple:
    """Unordered tuple over Y, stored as multiplicities of (T+, H+, Q+)."""

    t: int = 0
    h: int = 0
    q: int = 0

    @classmethod
    def of(cls, symbols: Iterable[str]) -> "SymbolTuple":
        counts = dict.fromkeys(Y_SYMBOLS, 0)
        for symbol in symbols:
            if symbol not in counts:
                raise MalformedFunction(f"{symbol!r} is not in the reduced alphabet Y")
            counts[symbol] += 1
        return cls(*counts.values())

    @property
    def size(self) -> int:
        return self.t + self.h + self.q

    @property
    def symbols(self) -> tuple[str, ...]:
        return ("T+",) * self.t + ("H+",) * self.h + ("Q+",) * self.q

    @property
    def needs_two_torsion(self) -> bool:
        return self.h + self.q > 0

    @property
    def repetition(self) -> int:
        return max(0, self.h - 1) + max(0, self.q - 1)

    @property
    def monomial_class(self) -> MonomialClass:
        return MonomialClass(self.t, self.h, self.q)

    def __str__(self) -> str:
        return "[" + ",".join(self.symbols) + "]"


def all_tuples(n: int) -> list[SymbolTuple]:
    return sorted(
        SymbolTuple.of(combo) for combo in itertools.combinations_with_replacement(Y_SYMBOLS, n)
    )


def delta_reduce(raw: Iterable[str]) -> SymbolTuple:
    """Reduce a multiset over the eight CE symbols to Y: T± ↦ T+, E±/H± ↦ H+, Q± ↦ Q+."""
    try:
        return SymbolTuple.of(SYMBOLS.reduce(symbol) for symbol in raw)
    except KeyError as exc:
        raise MalformedFunction(str(exc)) from exc


def tuple_repetition(z: SymbolTuple) -> int:
    return z.repetition


@dataclass
class SymbolFunction:
    """A function z ↦ f(z) ∈ G on n-tuples over Y."""

    n: int
    group: FinAbGroup
    table: dict[SymbolTuple, GroupElement] = field(default_factory=dict)

    def __post_init__(self) -> None:
        normal = {}
        for z, value in self.table.items():
            if z.size != self.n:
                raise MalformedFunction(f"Tuple {z} has size {z.size}, expected {self.n}")
            normal[z] = self.group.reduce(value)
        self.table = normal

    def __getitem__(self, z: SymbolTuple) -> GroupElement:
        return self.table[z]

    def missing(self) -> list[SymbolTuple]:
        return [z for z in all_tuples(self.n) if z not in self.table]


# ===========================
# Membership
# ===========================


def _linked(z: SymbolTuple) -> SymbolTuple | None:
    """The tuple z' with one H+ of an H+H+Q+ sub-tuple replaced by Q+."""
    if z.h >= 2 and z.q >= 1:
        return SymbolTuple(z.t, z.h - 1, z.q + 1)
    return None


def _value_allowed(group: FinAbGroup, z: SymbolTuple, value: GroupElement) -> bool:
    return group.divisible_by_power_of_two(value, z.repetition)


def is_in_en(f: SymbolFunction) -> bool:
    """True iff f satisfies H+H+Q+ = H+Q+Q+ and f(z) ∈ 2^{r(z)}·G for all z.

    Raises:
        MalformedFunction: if the table is incomplete, or violates the Δ_n
            condition that tuples containing H+ or Q+ take 2-torsion values.
    """
    missing = f.missing()
    if missing:
        raise MalformedFunction(
            f"Table misses {len(missing)} tuple(s), e.g. {missing[0]}"
        )
    for z, value in f.table.items():
        if z.needs_two_torsion and not f.group.is_two_torsion(value):
            raise MalformedFunction(f"f({z}) = {value} is not 2-torsion")
    for z, value in f.table.items():
        partner = _linked(z)
        if partner is not None and f.table[partner] != value:
            return False
        if not _value_allowed(f.group, z, value):
            return False
    return True


# ===========================
# Counting
# ===========================


def _components(n: int) -> list[list[SymbolTuple]]:
    parent = {z: z for z in all_tuples(n)}

    def find(z: SymbolTuple) -> SymbolTuple:
        while parent[z] != z:
            z = parent[z]
        return z

    for z in parent:
        partner = _linked(z)
        if partner is not None:
            parent[find(z)] = find(partner)
    groups: dict[SymbolTuple, list[SymbolTuple]] = {}
    for z in parent:
        groups.setdefault(find(z), []).append(z)
    return [sorted(members) for _, members in sorted(groups.items())]


def _check_count_guard(group: FinAbGroup, n: int) -> None:
    if not group.is_finite():
        raise GuardViolation(f"E_n counting needs a finite group, got {group}")
    if not 0 <= n <= MAX_COUNT_DEGREE:
        raise GuardViolation(f"E_n counting supports 0 <= n <= {MAX_COUNT_DEGREE}, got {n}")
    if group.order() > MAX_COUNT_GROUP_ORDER:
        raise GuardViolation(
            f"E_n counting supports |G| <= {MAX_COUNT_GROUP_ORDER}, got {group.order()}"
        )


def count_en(group: FinAbGroup, n: int) -> int:
    """|E_n(G)| by enumerating value tables.

    Each component of the H+H+Q+ = H+Q+Q+ relation graph is enumerated over
    all Δ_n-consistent value assignments; the total is the product.

    Raises:
        GuardViolation: for infinite groups, n > 4 or |G| > 16.
    """
    _check_count_guard(group, n)
    everything = list(group.elements())
    torsion = group.two_torsion()
    total = 1
    for members in _components(n):
        choices = [torsion if z.needs_two_torsion else everything for z in members]
        index = {z: i for i, z in enumerate(members)}
        count = 0
        for values in itertools.product(*choices):
            ok = all(
                _value_allowed(group, z, values[index[z]])
                and (_linked(z) is None or values[index[_linked(z)]] == values[index[z]])
                for z in members
            )
            count += ok
        logger.debug("Component %s admits %d values", [str(z) for z in members], count)
        total *= count
    return total


def en_closed_form_count(group: FinAbGroup, n: int) -> int:
    """Π over degree-n classes of |G| (pure t) or |G[2] ∩ 2^r·G| (otherwise)."""
    _check_count_guard(group, n)
    total = 1
    for cls in degree_classes(n):
        if cls.is_pure_t:
            total *= group.order()
        else:
            total *= sum(
                1
                for x in group.two_torsion()
                if group.divisible_by_power_of_two(x, cls.repetition)
            )
    return total


def hom_count_mn(group: FinAbGroup, n: int) -> int:
    """|Hom(M_n, G)| from the cyclic decomposition of M_n."""
    return group.hom_count(m_structure(n).orders)


class UniversalityReport(BaseModel):
    """Three independent counts for E_n(G) against Hom(M_n, G)."""

    group: str
    degree: int
    en_count: int
    hom_count: int
    closed_form: int
    matches: bool
    consistent: bool


def universality_report(group: FinAbGroup, n: int) -> UniversalityReport:
    """Compare |E_n(G)| (enumerated and closed form) with |Hom(M_n, G)|.

    ``matches`` records whether E_n(G) and Hom(M_n, G) have the same size;
    ``consistent`` whether enumeration and closed form agree.
    """
    en = count_en(group, n)
    hom = hom_count_mn(group, n)
    closed = en_closed_form_count(group, n)
    report = UniversalityReport(
        group=str(group),
        degree=n,
        en_count=en,
        hom_count=hom,
        closed_form=closed,
        matches=en == hom,
        consistent=en == closed,
    )
    if not report.matches:
        logger.info(
            "|E_%d(%s)| = %d differs from |Hom(M_%d, G)| = %d", n, group, en, n, hom
        )
    return report


# ===========================
# Pullbacks of homomorphisms
# ===========================


def pullback_function(
    group: FinAbGroup, n: int, images: Mapping[MonomialClass, Sequence[int]]
) -> SymbolFunction:
    """SymbolFunction z ↦ 2^{r(z)}·φ(ζ_{class(z)}) for φ: M_n -> G given on generators.

    Raises:
        MalformedFunction: if a generator image is missing or violates 2^{r+1}ζ = 0.
    """
    normal: dict[MonomialClass, GroupElement] = {}
    for cls in degree_classes(n):
        if cls not in images:
            raise MalformedFunction(f"No image for generator {cls.label()}")
        image = group.reduce(images[cls])
        if cls.modulus and not group.is_zero(group.multiple(cls.modulus, image)):
            raise MalformedFunction(
                f"Image of {cls.label()} does not satisfy {cls.modulus}·x = 0"
            )
        normal[cls] = image
    table = {
        z: group.multiple(2**z.repetition, normal[z.monomial_class]) for z in all_tuples(n)
    }
    return SymbolFunction(n, group, table)


def iter_hom_images(group: FinAbGroup, n: int) -> Iterator[dict[MonomialClass, GroupElement]]:
    """Every homomorphism M_n -> G as a map on the ζ-generators."""
    _check_count_guard(group, n)
    classes = degree_classes(n)
    everything = list(group.elements())
    choices = [
        [x for x in everything if not cls.modulus or group.is_zero(group.multiple(cls.modulus, x))]
        for cls in classes
    ]
    logger.debug("Hom(M_%d, %s) has %d elements", n, group, math.prod(map(len, choices)))
    for values in itertools.product(*choices):
        yield dict(zip(classes, values))
