"""
Generator words for O(E, g).

:func:`decompose` writes any orthogonal map as a word in the generators T_a
(g(a) = 1) and S_{a,b} (g(a) = g(b) = g(a+b) = 0). It fixes the orthonormal
basis vectors one at a time from the last index down. :func:`rewrite_s_free`
removes S-letters in dimension >= 9 with S_{a,b} = T_s T_{s+a} T_{s+b} T_{s+a+b}.

Letters of a :class:`GeneratorWord` apply left to right: the first letter acts
first, so the word's matrix is ``L_k ··· L_1 · L_0``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator

from immersion_tools.errors import (
    DimensionMismatch,
    DimensionTooSmall,
    InternalExhaustion,
    NoSupportRoom,
    NotOrthogonal,
)
from immersion_tools.gf2core import (
    Gf2Matrix,
    Gf2Vector,
    block_diag,
    identity,
    mat_add,
    mat_mul,
    rank,
)
from immersion_tools.hform import (
    HALF,
    ONE,
    HForm,
    Transvection,
    TransvectionKind,
    apply_transvection,
    direct_sum,
    is_orthogonal,
    orthonormal_change_of_basis,
    s_matrix,
    transvection_matrix,
)

__all__ = [
    "GeneratorWord",
    "word_product",
    "decompose",
    "rewrite_s_free",
    "psi",
    "stabilize",
    "decompose_stable",
    "STABLE_DIM",
]

logger = logging.getLogger(__name__)

#: Dimension from which T-generators alone generate O(E, g).
STABLE_DIM = 9


@dataclass(frozen=True)
class GeneratorWord:
    """An ordered product of generator letters, applied left to right."""

    letters: tuple[Transvection, ...]
    dim: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        for letter in self.letters:
            vectors = [letter.a] if letter.b is None else [letter.a, letter.b]
            if any(v.dim != self.dim for v in vectors):
                raise DimensionMismatch(f"Letter {letter} does not live in dimension {self.dim}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Transvection]:
        return iter(self.letters)

    def is_s_free(self) -> bool:
        return all(letter.kind is TransvectionKind.T for letter in self.letters)

    def __str__(self) -> str:
        return " · ".join(str(letter) for letter in self.letters) or "(empty word)"


def word_product(g: HForm, w: GeneratorWord) -> Gf2Matrix:
    """Matrix of the word; each letter is checked for legality."""
    if w.dim != g.dim:
        raise DimensionMismatch(f"Word of dim {w.dim} for form of dim {g.dim}")
    result = identity(g.dim)
    for letter in w.letters:
        result = mat_mul(apply_transvection(g, letter), result)
    return result


def psi(m: Gf2Matrix) -> int:
    """ψ(m) = rank(m - Id) mod 2."""
    if not m.is_square():
        raise DimensionMismatch(f"psi needs a square matrix, got {m.shape}")
    return rank(mat_add(m, identity(m.rows))) % 2


# ===========================
# Decomposition
# ===========================


class _Reducer:
    """Composes generators on the left of a map in orthonormal coordinates."""

    def __init__(self, d: tuple, current: Gf2Matrix) -> None:
        self.d = d
        self.n = len(d)
        self.form = HForm.from_orthonormal(d)
        self.current = current
        self.steps: list[Transvection] = []

    def e(self, *indices: int) -> Gf2Vector:
        return Gf2Vector.from_support(indices, self.n)

    def apply_t(self, a: Gf2Vector) -> None:
        self._apply(Transvection.t(a), transvection_matrix(self.form, a))

    def apply_s(self, a: Gf2Vector, b: Gf2Vector) -> None:
        self._apply(Transvection.s(a, b), s_matrix(self.form, a, b))

    def _apply(self, letter: Transvection, matrix: Gf2Matrix) -> None:
        if not letter.is_legal(self.form):
            raise InternalExhaustion(f"Constructed illegal generator {letter}")
        self.current = mat_mul(matrix, self.current)
        self.steps.append(letter)

    def fix(self, k: int) -> None:
        """Compose generators so the current map fixes e_k, keeping e_{k+1}.. fixed."""
        ek = self.e(k)
        v = self.current.column(k)
        if v == ek:
            return
        if v[k] == 0:
            # Case A: C(v, e_k) = 0 so g(e_k + v) = 1
            self.apply_t(ek + v)
            return
        if k == 0:
            raise InternalExhaustion("Image of e_1 differs from e_1 inside span{e_1}")
        support = set(v.support())
        outside = [i for i in range(k) if i not in support]
        if not outside:
            raise InternalExhaustion(f"supp(v) covers e_1..e_{k + 1}")
        match = next((i for i in outside if self.d[i] == self.d[k]), None)
        if match is not None:
            # route through e_match: v -> e_match -> e_k
            self.apply_t(v + self.e(match))
            self.apply_t(self.e(match) + ek)
            return
        a, b = self._s_configuration(outside[0], k, sorted(support - {k}))
        logger.debug("Case B at e_%d: S-letter a=%r b=%r", k + 1, a, b)
        self.apply_s(a, b)
        self.apply_t(ek + self.current.column(k))

    def _s_configuration(
        self, free: int, k: int, rest: list[int]
    ) -> tuple[Gf2Vector, Gf2Vector]:
        sigma = self.d[k]
        same = [i for i in rest if self.d[i] == sigma]
        opposite = [i for i in rest if self.d[i] != sigma]
        if same and opposite:
            return self.e(free, same[0]), self.e(opposite[0], k)
        if len(same) >= 4:
            return self.e(free, same[0]), self.e(same[1], same[2], same[3], k)
        if len(opposite) >= 4:
            return self.e(free, *opposite[:3]), self.e(opposite[3], k)
        raise InternalExhaustion(
            f"No S-configuration for e_{k + 1}: {len(same)} equal and "
            f"{len(opposite)} opposite values in supp(v)"
        )


def decompose(g: HForm, m: Gf2Matrix) -> GeneratorWord:
    """Write an orthogonal map as a word of T- and S-generators.

    The word's product equals ``m`` exactly and has at most two letters per
    basis index. Every S-letter uses at most six orthonormal basis vectors.

    Raises:
        NotOrthogonal: if ``m`` does not preserve ``g``.
        InternalExhaustion: if no case of the construction applies (a bug).
    """
    if not is_orthogonal(g, m):
        raise NotOrthogonal("Matrix does not preserve the H-form")
    basis, basis_inv, d = orthonormal_change_of_basis(g)
    reducer = _Reducer(d, mat_mul(mat_mul(basis_inv, m), basis))
    for k in range(g.dim - 1, -1, -1):
        reducer.fix(k)
    if reducer.current != identity(g.dim):
        raise InternalExhaustion("Reduction finished without reaching the identity")

    # every generator is an involution, so the reduction steps read backwards give m
    letters = []
    for step in reversed(reducer.steps):
        a = basis(step.a)
        b = basis(step.b) if step.b is not None else None
        letters.append(Transvection(step.kind, a, b))
    logger.debug("Decomposed into %d letters", len(letters))
    return GeneratorWord(tuple(letters), g.dim)


def rewrite_s_free(g: HForm, w: GeneratorWord) -> GeneratorWord:
    """Replace every S_{a,b} by four T-letters, keeping the product.

    Raises:
        DimensionTooSmall: if ``g.dim < 9``.
        NoSupportRoom: if an S-letter leaves fewer than three free basis vectors.
    """
    if g.dim < STABLE_DIM:
        raise DimensionTooSmall(f"S-free rewriting needs dim >= {STABLE_DIM}, got {g.dim}")
    basis, basis_inv, d = orthonormal_change_of_basis(g)
    letters: list[Transvection] = []
    for letter in w.letters:
        if letter.kind is TransvectionKind.T:
            letters.append(letter)
            continue
        used = letter.support(basis_inv)
        free = [i for i in range(g.dim) if i not in used][:3]
        if len(free) < 3:
            raise NoSupportRoom(f"{letter} leaves only {len(free)} free basis vectors")
        s = _unit_in_span(d, free, g.dim)
        s = basis(s)
        a, b = letter.a, letter.b
        # S = T_s ∘ T_{s+a} ∘ T_{s+b} ∘ T_{s+a+b}; the rightmost factor acts first
        letters.extend(Transvection.t(x) for x in (s + a + b, s + b, s + a, s))
    return GeneratorWord(tuple(letters), g.dim)


def _unit_in_span(d: tuple, free: list[int], n: int) -> Gf2Vector:
    """Lowest combination of the free orthonormal vectors with g-value 1."""
    for mask in range(1, 1 << len(free)):
        chosen = [free[j] for j in range(len(free)) if mask >> j & 1]
        if sum(d[i].quarter_units for i in chosen) % 4 == ONE.quarter_units:
            return Gf2Vector.from_support(chosen, n)
    raise InternalExhaustion("Three ±1/2 values always contain a pair summing to 1")


# ===========================
# Stabilisation
# ===========================


def stabilize(m: Gf2Matrix, extra_dim: int) -> Gf2Matrix:
    """m ⊕ Id on E ⊕ E'; ψ is unchanged."""
    if extra_dim == 0:
        return m
    return block_diag(m, identity(extra_dim))


def decompose_stable(g: HForm, m: Gf2Matrix) -> tuple[HForm, GeneratorWord]:
    """T-only word for m ⊕ Id after stabilising g to dimension >= 9.

    The complement is orthonormal with all values 1/2.
    """
    extra = max(0, STABLE_DIM - g.dim)
    big = direct_sum(g, HForm.from_orthonormal([HALF] * extra)) if extra else g
    word = decompose(big, stabilize(m, extra))
    return big, rewrite_s_free(big, word)
