"""Dense linear algebra over GF(q).

Matrices are row-major ``uint8`` arrays of element codes wrapped in
:class:`MatrixGF`.  Elimination always pivots on the first nonzero entry in
column order, so the reduced row echelon form is identical for identical
input.  Over GF(2) rows are packed into Python ints and reduced with XOR.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch
from .gf import FieldSpec


@dataclass(frozen=True, eq=False)
class MatrixGF:
    field: FieldSpec
    data: np.ndarray

    def __post_init__(self):
        data = np.asarray(self.data, dtype=np.int64)
        if data.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {data.shape}")
        if data.size and (data.min() < 0 or data.max() >= self.field.q):
            raise ValueError(f"entries must lie in 0..{self.field.q - 1}")
        data = data.astype(np.uint8)
        data.setflags(write=False)
        object.__setattr__(self, "data", data)

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[int]], cols: int | None = None):
        rows = [list(r) for r in rows]
        if not rows:
            return cls(field, np.zeros((0, cols or 0), dtype=np.uint8))
        return cls(field, np.array(rows, dtype=np.int64))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> MatrixGF:
        return cls(field, np.zeros((rows, cols), dtype=np.uint8))

    @classmethod
    def identity(cls, field: FieldSpec, k: int) -> MatrixGF:
        return cls(field, np.eye(k, dtype=np.uint8))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    def transpose(self) -> MatrixGF:
        return MatrixGF(self.field, self.data.T)

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixGF):
            return NotImplemented
        return (self.field.q == other.field.q and self.shape == other.shape
                and bool(np.array_equal(self.data, other.data)))

    def __hash__(self):
        return hash((self.field.q, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixGF(GF({self.field.q}), {self.tolist()})"


def _pack_rows(data: np.ndarray) -> list[int]:
    # column 0 is the most significant bit so "first nonzero column" = highest set bit
    cols = data.shape[1]
    weights = [1 << (cols - 1 - j) for j in range(cols)]
    return [sum(w for w, x in zip(weights, row) if x) for row in data.tolist()]


def _unpack_rows(rows: list[int], cols: int) -> np.ndarray:
    out = np.zeros((len(rows), cols), dtype=np.uint8)
    for i, r in enumerate(rows):
        for j in range(cols):
            if r >> (cols - 1 - j) & 1:
                out[i, j] = 1
    return out


def _rref_gf2(data: np.ndarray) -> tuple[np.ndarray, list[int]]:
    rows, cols = data.shape
    packed = _pack_rows(data)
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        bit = 1 << (cols - 1 - c)
        p = next((i for i in range(r, rows) if packed[i] & bit), None)
        if p is None:
            continue
        packed[r], packed[p] = packed[p], packed[r]
        pr = packed[r]
        for i in range(rows):
            if i != r and packed[i] & bit:
                packed[i] ^= pr
        pivots.append(c)
        r += 1
    return _unpack_rows(packed, cols), pivots


def _rref_generic(f: FieldSpec, data: np.ndarray) -> tuple[np.ndarray, list[int]]:
    A = data.copy()
    rows, cols = A.shape
    mul, sub, inv = f.mul_table, f.sub_table, f.inv_table
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = mul[inv[A[r, c]], A[r]]
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = sub[A[others], mul[A[others, c][:, None], A[r][None, :]]]
        pivots.append(c)
        r += 1
    return A, pivots


def rref(m: MatrixGF) -> tuple[MatrixGF, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns.  The input is untouched."""
    if m.rows == 0 or m.cols == 0:
        return MatrixGF(m.field, m.data.copy()), 0, []
    if m.field.q == 2:
        out, pivots = _rref_gf2(m.data)
    else:
        out, pivots = _rref_generic(m.field, m.data)
    return MatrixGF(m.field, out), len(pivots), pivots


def rank(m: MatrixGF) -> int:
    if m.field.q == 2:
        return rank_bits(_pack_rows(m.data))
    return rref(m)[1]


def rank_bits(vectors: Iterable[int]) -> int:
    """Rank over GF(2) of vectors packed into ints (any bit order)."""
    basis: list[int] = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def nullspace_basis(m: MatrixGF) -> MatrixGF:
    """Rows form a basis (in rref) of ``{x : m @ x = 0}``."""
    f = m.field
    cols = m.cols
    R, r, pivots = rref(m)
    free = [j for j in range(cols) if j not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for t, j in enumerate(free):
        basis[t, j] = 1
        for i, pc in enumerate(pivots):
            basis[t, pc] = f.neg_table[R.data[i, j]]
    if len(free) == 0:
        return MatrixGF.zeros(f, 0, cols)
    return rref(MatrixGF(f, basis))[0]


def span_dim(f: FieldSpec, vectors: Sequence[Sequence[int]], k: int | None = None) -> int:
    """Dimension of the linear span of ``vectors`` (0 for an empty list)."""
    vectors = [tuple(v) for v in vectors]
    lengths = {len(v) for v in vectors}
    if k is not None:
        lengths.add(k)
    if len(lengths) > 1:
        raise DimensionMismatch(f"vectors of differing lengths {sorted(lengths)}")
    if not vectors:
        return 0
    return rank(MatrixGF.from_rows(f, vectors))


def matmul(A: MatrixGF, B: MatrixGF) -> MatrixGF:
    f = A.field
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    if f.is_prime:
        prod = (A.data.astype(np.int64) @ B.data.astype(np.int64)) % f.p
        return MatrixGF(f, prod)
    acc = np.zeros((A.rows, B.cols), dtype=np.uint8)
    for i in range(A.cols):
        acc = f.add_table[acc, f.mul_table[A.data[:, i][:, None], B.data[i][None, :]]]
    return MatrixGF(f, acc)


def solve_left(G: MatrixGF, D: MatrixGF) -> MatrixGF | None:
    """Return X with ``X @ G == D`` when G has full row rank, else None if inconsistent."""
    f = G.field
    k, l = G.rows, D.rows
    if D.cols != G.cols:
        raise DimensionMismatch(f"row length {D.cols} != {G.cols}")
    aug = MatrixGF(f, np.concatenate([G.data.T, D.data.T], axis=1))
    R, r, pivots = rref(aug)
    if any(p >= k for p in pivots) or pivots[:k] != list(range(k)):
        return None
    return MatrixGF(f, R.data[:k, k:].T)
