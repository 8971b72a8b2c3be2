"""
Graded structures K ⊆ L ⊆ M and the universal power series F.

L is the commutative ring on t, p, q with 2p = 2q = 0 and p²q = pq². K is its
pure-t subring (a genuine polynomial ring over Z). M is the K-module obtained by
adjoining, for each monomial class f with repetition r(f), a generator ζ_f with
2^r ζ_f = f. Consequently:

- a pure-t class carries an integer coefficient
- any other class carries a coefficient in Z/2^{r+1} on ζ_f
- the plain monomial f is the element 2^r·ζ_f

Elements are kept truncated at a fixed degree. F: G_U -> M is built from the
series F(t) = Σ tⁿ, F(-t) = 1 - t, F(p) = Σ ζ_{pⁿ}, F(q) = Σ ζ_{qⁿ} and
F(p+q) = 1 + p + q + Σ_{n≥2} (ζ_{pⁿ} + ζ_{qⁿ} + ζ_{pq^{n-1}}), with
F(k + s) = F(k)·F(s) through the K-action.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from pydantic import BaseModel

from immersion_tools.abelian_groups import FinAbGroup
from immersion_tools.ce_events import CEEvent, UniversalValue, f1u
from immersion_tools.config import get_max_series_degree
from immersion_tools.errors import DomainError, GuardViolation

__all__ = [
    "MonomialClass",
    "canonicalize",
    "repetition",
    "degree_classes",
    "MElement",
    "MComponent",
    "MStructure",
    "m_structure",
    "k_action",
    "k_series_mul",
    "k_power",
    "k_multiply",
    "f_series",
    "f_n",
    "universal_invariant",
]

logger = logging.getLogger(__name__)


# ===========================
# Monomial classes
# ===========================


@dataclass(frozen=True)
class MonomialClass:
    """Class of t^a p^b q^c under p²q = pq², stored canonically."""

    a: int
    b: int = 0
    c: int = 0

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c) < 0:
            raise DomainError(f"Monomial exponents must be >= 0, got {(self.a, self.b, self.c)}")
        if self.b >= 1 and self.c >= 1:
            object.__setattr__(self, "c", self.b + self.c - 1)
            object.__setattr__(self, "b", 1)

    @property
    def degree(self) -> int:
        return self.a + self.b + self.c

    @property
    def repetition(self) -> int:
        return max(0, self.b - 1) + max(0, self.c - 1)

    @property
    def is_pure_t(self) -> bool:
        return self.b == 0 and self.c == 0

    @property
    def modulus(self) -> int:
        """Order of ζ for this class; 0 stands for infinite order."""
        return 0 if self.is_pure_t else 2 ** (self.repetition + 1)

    def sort_key(self) -> tuple[int, int, int, int]:
        return (self.degree, -self.a, -self.b, self.c)

    def monomial(self) -> str:
        parts = []
        for var, exp in (("t", self.a), ("p", self.b), ("q", self.c)):
            if exp == 1:
                parts.append(var)
            elif exp > 1:
                parts.append(f"{var}^{exp}")
        return "".join(parts) or "1"

    def label(self) -> str:
        """Name of the generator of this class in M."""
        if self.repetition == 0:
            return self.monomial()
        return f"zeta[{self.monomial()}]"

    def shifted(self, m: int) -> "MonomialClass":
        return MonomialClass(self.a + m, self.b, self.c)


def canonicalize(a: int, b: int, c: int) -> MonomialClass:
    """Canonical class of t^a p^b q^c: (a, 1, b+c-1) when b, c >= 1.

    Example:
        >>> canonicalize(0, 2, 1)
        MonomialClass(a=0, b=1, c=2)
    """
    return MonomialClass(a, b, c)


def repetition(cls: MonomialClass) -> int:
    """r = max(0, b-1) + max(0, c-1); constant on each class."""
    return cls.repetition


def degree_classes(n: int) -> list[MonomialClass]:
    """All canonical classes of degree n, sorted."""
    classes = {MonomialClass(a, b, n - a - b) for a in range(n + 1) for b in range(n - a + 1)}
    return sorted(classes, key=MonomialClass.sort_key)


# ===========================
# Module elements
# ===========================


class MElement:
    """Truncated element of M: a finite sum of coefficient·generator terms."""

    __slots__ = ("_terms", "truncation_degree")

    def __init__(
        self,
        terms: Mapping[MonomialClass, int] | Iterable[tuple[MonomialClass, int]],
        truncation_degree: int,
    ) -> None:
        if truncation_degree < 0:
            raise DomainError(f"Truncation degree must be >= 0, got {truncation_degree}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        reduced: dict[MonomialClass, int] = {}
        for cls, coeff in items:
            if cls.degree > truncation_degree:
                continue
            reduced[cls] = reduced.get(cls, 0) + int(coeff)
        normal = {}
        for cls, coeff in reduced.items():
            if cls.modulus:
                coeff %= cls.modulus
            if coeff:
                normal[cls] = coeff
        self._terms = dict(sorted(normal.items(), key=lambda item: item[0].sort_key()))
        self.truncation_degree = truncation_degree

    # -------------------------
    # Constructors
    # -------------------------

    @classmethod
    def zero(cls, truncation_degree: int) -> "MElement":
        return cls({}, truncation_degree)

    @classmethod
    def one(cls, truncation_degree: int) -> "MElement":
        return cls({MonomialClass(0): 1}, truncation_degree)

    @classmethod
    def zeta(cls, mono: MonomialClass, truncation_degree: int, coeff: int = 1) -> "MElement":
        return cls({mono: coeff}, truncation_degree)

    @classmethod
    def monomial(cls, mono: MonomialClass, truncation_degree: int, coeff: int = 1) -> "MElement":
        """The plain monomial, which is 2^r·ζ in M."""
        return cls({mono: coeff * 2**mono.repetition}, truncation_degree)

    @classmethod
    def from_universal(cls, v: UniversalValue, truncation_degree: int = 1) -> "MElement":
        """Image of v ∈ G_U = L_1 = M_1."""
        return cls(
            {
                MonomialClass(1): v.t_coeff,
                MonomialClass(0, 1): v.p_coeff,
                MonomialClass(0, 0, 1): v.q_coeff,
            },
            truncation_degree,
        )

    # -------------------------
    # Access
    # -------------------------

    @property
    def terms(self) -> dict[MonomialClass, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[MonomialClass, int]]:
        return iter(self._terms.items())

    def coefficient(self, mono: MonomialClass) -> int:
        return self._terms.get(mono, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def homogeneous_part(self, n: int) -> "MElement":
        return MElement({c: v for c, v in self._terms.items() if c.degree == n}, n)

    def truncate(self, degree: int) -> "MElement":
        return MElement(self._terms, min(degree, self.truncation_degree))

    # -------------------------
    # Arithmetic
    # -------------------------

    def __add__(self, other: "MElement") -> "MElement":
        merged = list(self._terms.items()) + list(other._terms.items())
        return MElement(merged, min(self.truncation_degree, other.truncation_degree))

    def __neg__(self) -> "MElement":
        return MElement({c: -v for c, v in self._terms.items()}, self.truncation_degree)

    def __sub__(self, other: "MElement") -> "MElement":
        return self + (-other)

    def scale(self, k: int) -> "MElement":
        return MElement({c: k * v for c, v in self._terms.items()}, self.truncation_degree)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MElement):
            return NotImplemented
        return (
            self.truncation_degree == other.truncation_degree and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.truncation_degree, tuple(self._terms.items())))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        out = ""
        for cls, coeff in self._terms.items():
            label = cls.label()
            size = abs(coeff)
            if label == "1":
                term = str(size)
            elif size == 1:
                term = label
            else:
                term = f"{size}{label}"
            if not out:
                out = term if coeff > 0 else f"-{term}"
            else:
                out += f" + {term}" if coeff > 0 else f" - {term}"
        return out

    def __repr__(self) -> str:
        return f"MElement({self}, truncation_degree={self.truncation_degree})"


# ===========================
# Structure of M_n
# ===========================


class MComponent(BaseModel):
    """One cyclic summand of M_n. ``order`` 0 means Z."""

    order: int
    generator: str

    def render(self) -> str:
        return "Z" if self.order == 0 else f"Z/{self.order}"


class MStructure(BaseModel):
    """Cyclic decomposition of M_n: Z first, then torsion by increasing order."""

    degree: int
    components: list[MComponent]

    @property
    def orders(self) -> list[int]:
        return [c.order for c in self.components]

    def to_group(self) -> FinAbGroup:
        return FinAbGroup.from_orders(self.orders)

    def render(self) -> str:
        return " + ".join(c.render() for c in self.components)


def m_structure(n: int) -> MStructure:
    """M_n ≅ Z ⊕ ⊕_{classes with b+c >= 1} Z/2^{r+1}.

    Raises:
        GuardViolation: if n is negative or above the configured series-degree guard.
    """
    limit = get_max_series_degree()
    if not 0 <= n <= limit:
        raise GuardViolation(f"m_structure supports 0 <= n <= {limit}, got {n}")
    classes = degree_classes(n)
    ordered = sorted(
        enumerate(classes), key=lambda item: (item[1].modulus, item[0])
    )
    return MStructure(
        degree=n,
        components=[MComponent(order=cls.modulus, generator=cls.label()) for _, cls in ordered],
    )


# ===========================
# K-action and K-series
# ===========================


def k_action(m: int, elem: MElement) -> MElement:
    """t^m · elem: shift every t-degree by m, dropping terms above the truncation."""
    if m < 0:
        raise DomainError(f"K acts by nonnegative powers of t, got t^{m}")
    return MElement(
        [(cls.shifted(m), coeff) for cls, coeff in elem.items()], elem.truncation_degree
    )


def k_series_mul(x: Sequence[int], y: Sequence[int], degree: int) -> list[int]:
    """Product of two pure-t series, truncated at ``degree``."""
    out = [0] * (degree + 1)
    for i, xi in enumerate(x[: degree + 1]):
        if not xi:
            continue
        for j, yj in enumerate(y[: degree + 1 - i]):
            out[i + j] += xi * yj
    return out


def k_power(base: Sequence[int], exponent: int, degree: int) -> list[int]:
    """base^exponent by repeated truncated multiplication."""
    result = [1] + [0] * degree
    for _ in range(exponent):
        result = k_series_mul(result, base, degree)
    return result


def k_multiply(k: Sequence[int], elem: MElement) -> MElement:
    """Σ k_i t^i · elem for a pure-t series k."""
    total = MElement.zero(elem.truncation_degree)
    for i, ki in enumerate(k[: elem.truncation_degree + 1]):
        if ki:
            total = total + k_action(i, elem).scale(ki)
    return total


# ===========================
# The universal series
# ===========================


def _k_part(n1: int, degree: int) -> list[int]:
    if n1 >= 0:
        base = [1] * (degree + 1)
    else:
        base = ([1, -1] + [0] * degree)[: degree + 1]
    return k_power(base, abs(n1), degree)


def _s_part(p: int, q: int, degree: int) -> MElement:
    if not (p or q):
        return MElement.one(degree)
    if p and q:
        terms = [(MonomialClass(0), 1)]
        if degree >= 1:
            terms += [(MonomialClass(0, 1), 1), (MonomialClass(0, 0, 1), 1)]
        for n in range(2, degree + 1):
            terms += [
                (MonomialClass(0, n), 1),
                (MonomialClass(0, 0, n), 1),
                (MonomialClass(0, 1, n - 1), 1),
            ]
        return MElement(terms, degree)
    return MElement(
        [(MonomialClass(0, n if p else 0, 0 if p else n), 1) for n in range(degree + 1)], degree
    )


def f_series(v: UniversalValue, degree: int) -> MElement:
    """F(v) truncated at ``degree``.

    Example:
        >>> str(f_series(UniversalValue(1, 1, 0), 2))
        '1 + t + p + t^2 + tp + zeta[p^2]'
    """
    if degree < 0:
        raise DomainError(f"Series degree must be >= 0, got {degree}")
    return k_multiply(_k_part(v.t_coeff, degree), _s_part(v.p_coeff, v.q_coeff, degree))


def f_n(v: UniversalValue, n: int) -> MElement:
    """F_n(v): the degree-n part of F(v)."""
    return f_series(v, n).homogeneous_part(n)


def universal_invariant(events: Sequence[CEEvent], n: int) -> MElement:
    """F_n ∘ f1u, the universal order-n invariant of a logged homotopy."""
    value = f1u(events)
    logger.debug("f1u = %s, projecting F to degree %d", value, n)
    return f_n(value, n)
