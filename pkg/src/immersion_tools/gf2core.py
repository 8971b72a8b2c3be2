"""
Exact linear algebra over GF(2) and exact integer determinants.

GF(2) vectors and matrices are immutable wrappers around read-only ``uint8``
numpy arrays. Elimination (rank, inverse, kernel) runs on bit-packed rows held
as Python ints, with the lowest-index pivot chosen at every step so reduced forms
are reproducible. Integer matrices hold arbitrary-precision Python ints and their
determinants are computed by fraction-free (Bareiss) elimination.

Matrices act on column vectors: column ``j`` of a matrix is the image of the
``j``-th basis vector.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator, Sequence

import numpy as np

from immersion_tools.errors import DimensionMismatch, SingularMatrix

__all__ = [
    "Gf2Vector",
    "Gf2Matrix",
    "IntMatrix",
    "rank",
    "mat_mul",
    "mat_add",
    "mat_vec",
    "transpose",
    "identity",
    "zeros",
    "inverse",
    "kernel",
    "block_diag",
    "det",
    "det_sign",
]

logger = logging.getLogger(__name__)


def _frozen_bits(data: object, ndim: int) -> np.ndarray:
    """Coerce ``data`` into a read-only uint8 array of 0/1 entries."""
    raw = np.asarray(data, dtype=np.int64)
    if raw.ndim != ndim:
        raise DimensionMismatch(f"Expected a {ndim}-dimensional array, got shape {raw.shape}")
    if raw.size and not np.isin(raw, (0, 1)).all():
        raise ValueError("GF(2) entries must be exactly 0 or 1")
    arr = raw.astype(np.uint8)
    arr.setflags(write=False)
    return arr


class Gf2Vector:
    """A fixed-length vector over GF(2)."""

    __slots__ = ("_bits",)

    def __init__(self, bits: Iterable[int] | np.ndarray) -> None:
        arr = _frozen_bits(list(bits) if not isinstance(bits, np.ndarray) else bits, 1)
        if arr.shape[0] < 1:
            raise DimensionMismatch("Gf2Vector dimension must be at least 1")
        self._bits = arr

    @classmethod
    def zero(cls, dim: int) -> "Gf2Vector":
        return cls(np.zeros(dim, dtype=np.uint8))

    @classmethod
    def basis(cls, index: int, dim: int) -> "Gf2Vector":
        bits = np.zeros(dim, dtype=np.uint8)
        bits[index] = 1
        return cls(bits)

    @classmethod
    def from_int(cls, value: int, dim: int) -> "Gf2Vector":
        """Build a vector whose entry ``i`` is bit ``i`` of ``value``."""
        return cls([(value >> i) & 1 for i in range(dim)])

    @classmethod
    def from_support(cls, support: Iterable[int], dim: int) -> "Gf2Vector":
        bits = np.zeros(dim, dtype=np.uint8)
        for i in support:
            bits[i] ^= 1
        return cls(bits)

    @property
    def dim(self) -> int:
        return int(self._bits.shape[0])

    @property
    def array(self) -> np.ndarray:
        return self._bits

    @property
    def bits(self) -> tuple[int, ...]:
        return tuple(int(b) for b in self._bits)

    def support(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self._bits))

    def weight(self) -> int:
        return int(self._bits.sum())

    def is_zero(self) -> bool:
        return not self._bits.any()

    def to_int(self) -> int:
        return sum(1 << i for i in self.support())

    def dot(self, other: "Gf2Vector") -> int:
        """Standard dot product mod 2."""
        self._check(other)
        return int(np.bitwise_and(self._bits, other._bits).sum() & 1)

    def _check(self, other: "Gf2Vector") -> None:
        if self.dim != other.dim:
            raise DimensionMismatch(f"Vector dimensions differ: {self.dim} vs {other.dim}")

    def __add__(self, other: "Gf2Vector") -> "Gf2Vector":
        self._check(other)
        return Gf2Vector(np.bitwise_xor(self._bits, other._bits))

    __sub__ = __add__

    def __getitem__(self, index: int) -> int:
        return int(self._bits[index])

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __len__(self) -> int:
        return self.dim

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Vector):
            return NotImplemented
        return self.dim == other.dim and bool(np.array_equal(self._bits, other._bits))

    def __hash__(self) -> int:
        return hash((self.dim, self._bits.tobytes()))

    def __repr__(self) -> str:
        return f"Gf2Vector({''.join(str(b) for b in self.bits)})"


class Gf2Matrix:
    """A rows × cols matrix over GF(2), stored row-major."""

    __slots__ = ("_data",)

    def __init__(self, data: Sequence[Sequence[int]] | np.ndarray) -> None:
        arr = _frozen_bits(data, 2)
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DimensionMismatch(f"Gf2Matrix needs rows, cols >= 1, got {arr.shape}")
        self._data = arr

    @classmethod
    def from_columns(cls, columns: Sequence[Gf2Vector]) -> "Gf2Matrix":
        if not columns:
            raise DimensionMismatch("At least one column is required")
        return cls(np.stack([c.array for c in columns], axis=1))

    @classmethod
    def from_row_masks(cls, masks: Sequence[int], cols: int) -> "Gf2Matrix":
        return cls([[(m >> j) & 1 for j in range(cols)] for m in masks])

    @property
    def rows(self) -> int:
        return int(self._data.shape[0])

    @property
    def cols(self) -> int:
        return int(self._data.shape[1])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def array(self) -> np.ndarray:
        return self._data

    def is_square(self) -> bool:
        return self.rows == self.cols

    def row_masks(self) -> list[int]:
        """Rows packed into ints, bit ``j`` holding column ``j``."""
        return [sum(1 << int(j) for j in np.flatnonzero(row)) for row in self._data]

    def column(self, j: int) -> Gf2Vector:
        return Gf2Vector(self._data[:, j])

    def columns(self) -> list[Gf2Vector]:
        return [self.column(j) for j in range(self.cols)]

    def to_rows(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._data]

    def sort_key(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._data.flatten())

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        return mat_mul(self, other)

    def __add__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        return mat_add(self, other)

    def __call__(self, x: Gf2Vector) -> Gf2Vector:
        return mat_vec(self, x)

    def __getitem__(self, index: tuple[int, int]) -> int:
        return int(self._data[index])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Gf2Matrix):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._data, other._data))

    def __hash__(self) -> int:
        return hash((self.shape, self._data.tobytes()))

    def __repr__(self) -> str:
        body = "; ".join("".join(str(int(x)) for x in row) for row in self._data)
        return f"Gf2Matrix[{body}]"


# ===========================
# GF(2) operations
# ===========================


def identity(n: int) -> Gf2Matrix:
    return Gf2Matrix(np.eye(n, dtype=np.uint8))


def zeros(rows: int, cols: int | None = None) -> Gf2Matrix:
    return Gf2Matrix(np.zeros((rows, cols if cols is not None else rows), dtype=np.uint8))


def transpose(m: Gf2Matrix) -> Gf2Matrix:
    return Gf2Matrix(m.array.T)


def mat_mul(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    """Product ``a·b`` over GF(2)."""
    if a.cols != b.rows:
        raise DimensionMismatch(f"Cannot multiply {a.shape} by {b.shape}")
    prod = (a.array.astype(np.int64) @ b.array.astype(np.int64)) & 1
    return Gf2Matrix(prod)


def mat_add(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    if a.shape != b.shape:
        raise DimensionMismatch(f"Cannot add {a.shape} and {b.shape}")
    return Gf2Matrix(np.bitwise_xor(a.array, b.array))


def mat_vec(m: Gf2Matrix, x: Gf2Vector) -> Gf2Vector:
    if m.cols != x.dim:
        raise DimensionMismatch(f"Cannot apply {m.shape} matrix to vector of dim {x.dim}")
    return Gf2Vector((m.array.astype(np.int64) @ x.array.astype(np.int64)) & 1)


def _eliminate(masks: list[int], width: int) -> tuple[list[int], list[int]]:
    """Forward-eliminate bit rows; return (echelon rows, pivot columns).

    Pivot search scans columns left to right and takes the lowest row index
    carrying the column bit.
    """
    rows = list(masks)
    pivots: list[int] = []
    pivot_row = 0
    for col in range(width):
        bit = 1 << col
        found = next((r for r in range(pivot_row, len(rows)) if rows[r] & bit), None)
        if found is None:
            continue
        rows[pivot_row], rows[found] = rows[found], rows[pivot_row]
        for r in range(pivot_row + 1, len(rows)):
            if rows[r] & bit:
                rows[r] ^= rows[pivot_row]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(rows):
            break
    return rows, pivots


def rank(m: Gf2Matrix) -> int:
    """GF(2) row rank of ``m``."""
    _, pivots = _eliminate(m.row_masks(), m.cols)
    return len(pivots)


def inverse(m: Gf2Matrix) -> Gf2Matrix:
    """Inverse over GF(2) by Gauss-Jordan elimination on the augmented matrix."""
    if not m.is_square():
        raise DimensionMismatch(f"Only square matrices are invertible, got {m.shape}")
    n = m.rows
    rows = [mask | (1 << (n + i)) for i, mask in enumerate(m.row_masks())]
    for col in range(n):
        bit = 1 << col
        found = next((r for r in range(col, n) if rows[r] & bit), None)
        if found is None:
            raise SingularMatrix("Matrix is not invertible over GF(2)")
        rows[col], rows[found] = rows[found], rows[col]
        for r in range(n):
            if r != col and rows[r] & bit:
                rows[r] ^= rows[col]
    return Gf2Matrix.from_row_masks([r >> n for r in rows], n)


def kernel(m: Gf2Matrix) -> list[Gf2Vector]:
    """Basis of ``{x : m·x = 0}``, one vector per free column in increasing order."""
    rows, pivots = _eliminate(m.row_masks(), m.cols)
    # back-substitute to reduced echelon form
    for i in range(len(pivots) - 1, -1, -1):
        bit = 1 << pivots[i]
        for r in range(i):
            if rows[r] & bit:
                rows[r] ^= rows[i]
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        support = {f}
        for i, p in enumerate(pivots):
            if rows[i] >> f & 1:
                support.add(p)
        basis.append(Gf2Vector.from_support(sorted(support), m.cols))
    return basis


def block_diag(a: Gf2Matrix, b: Gf2Matrix) -> Gf2Matrix:
    out = np.zeros((a.rows + b.rows, a.cols + b.cols), dtype=np.uint8)
    out[: a.rows, : a.cols] = a.array
    out[a.rows :, a.cols :] = b.array
    return Gf2Matrix(out)


# ===========================
# Integer matrices
# ===========================


class IntMatrix:
    """A square matrix of arbitrary-precision integers. The 0×0 matrix is allowed."""

    __slots__ = ("_entries",)

    def __init__(self, entries: Sequence[Sequence[int]]) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise DimensionMismatch("IntMatrix must be square")
        self._entries = rows

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def n(self) -> int:
        return len(self._entries)

    @property
    def entries(self) -> tuple[tuple[int, ...], ...]:
        return self._entries

    def to_rows(self) -> list[list[int]]:
        return [list(row) for row in self._entries]

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.n != other.n:
            raise DimensionMismatch(f"Cannot multiply {self.n}x{self.n} by {other.n}x{other.n}")
        cols = list(zip(*other._entries))
        return IntMatrix(
            [[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self._entries]
        )

    __matmul__ = matmul

    def block_diag(self, other: "IntMatrix") -> "IntMatrix":
        n, k = self.n, other.n
        out = [[0] * (n + k) for _ in range(n + k)]
        for i in range(n):
            out[i][:n] = self._entries[i]
        for i in range(k):
            out[n + i][n:] = other._entries[i]
        return IntMatrix(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self._entries == other._entries

    def __hash__(self) -> int:
        return hash(self._entries)

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()})"


def det(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = m.n
    if n == 0:
        return 1
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_sign(m: IntMatrix) -> int:
    """Sign (+1 or -1) of ``det(m)``; raises SingularMatrix when it vanishes."""
    value = det(m)
    if value == 0:
        raise SingularMatrix("Rational action has zero determinant")
    return 1 if value > 0 else -1
