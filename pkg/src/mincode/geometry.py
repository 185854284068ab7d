"""The projective space PG(F_q^k).

Points are 1-dimensional subspaces, represented by the vector whose first
nonzero coordinate is 1.  The global point index is the position of that
representative in lexicographic order of coordinate tuples; for q = 2 the
index of the point with coordinate bits ``v`` (first coordinate most
significant) is simply ``v - 1``.

Point sets and subspace incidences are bit masks over point indices (Python
ints), so intersections and containment are single integer operations.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionMismatch, Overflow, TooLarge, ZeroVector
from .gf import FieldSpec, field_new
from .linalg import MatrixGF, rank_bits, rref

MAX_VECTORS = 1 << 20


def gaussian_binomial(k: int, l: int, q: int) -> int:
    """Number of l-dimensional (equivalently codim-l) subspaces of F_q^k."""
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got k={k}, l={l}")
    num = den = 1
    for i in range(l):
        num *= q ** (k - i) - 1
        den *= q ** (l - i) - 1
    value = num // den
    if value >= 1 << 63:
        raise Overflow(f"[{k};{l}]_{q} exceeds the 64-bit range")
    return value


def mask_from_bool(arr: np.ndarray) -> int:
    return int.from_bytes(np.packbits(np.asarray(arr, dtype=bool), bitorder="little").tobytes(),
                          "little")


def mask_indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def normalize(f: FieldSpec, v: Sequence[int]) -> tuple[int, ...]:
    lead = next((x for x in v if x), 0)
    if lead == 0:
        raise ZeroVector("the zero vector is not a projective point")
    s = f.inv(lead)
    return tuple(f.mul(s, x) for x in v)


@dataclass(frozen=True, eq=False)
class SubspaceRecord:
    """A projective subspace of codimension ``codim``.

    ``dual_basis`` rows (in rref) are linear forms vanishing on the subspace;
    ``incident`` is the bit mask of the points lying in it.
    """

    codim: int
    dual_basis: MatrixGF
    incident: int

    @property
    def num_points(self) -> int:
        return self.incident.bit_count()

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(self.dual_basis.data.ravel().tolist())

    def contains(self, other: SubspaceRecord) -> bool:
        return other.incident & ~self.incident == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, SubspaceRecord):
            return NotImplemented
        return self.codim == other.codim and self.dual_basis == other.dual_basis

    def __hash__(self):
        return hash((self.codim, self.key))

    def __repr__(self) -> str:
        return f"SubspaceRecord(codim={self.codim}, dual={self.dual_basis.tolist()})"


class ProjectiveSpace:
    """Cached point indexing and incidence data for PG(F_q^k)."""

    def __init__(self, f: FieldSpec, k: int):
        if k < 1:
            raise ValueError("k must be at least 1")
        if f.q ** k > MAX_VECTORS:
            raise TooLarge(f"PG(F_{f.q}^{k}) has too many vectors to index")
        self.field, self.k, self.q = f, k, f.q
        q = f.q
        pts = [v for v in itertools.product(range(q), repeat=k) if next((x for x in v if x), 0) == 1]
        self.points: tuple[tuple[int, ...], ...] = tuple(pts)
        self.num_points = len(pts)
        self.full_mask = (1 << self.num_points) - 1
        self.point_array = np.array(pts, dtype=np.uint8).reshape(self.num_points, k)
        self.point_array.setflags(write=False)
        # vector code: base-q digits, first coordinate most significant
        self.place = [q ** (k - 1 - i) for i in range(k)]
        vec_index = np.full(q ** k, -1, dtype=np.int64)
        for idx, p in enumerate(pts):
            for s in range(1, q):
                vec_index[self.encode(tuple(f.mul(s, x) for x in p))] = idx
        self.vec_index = vec_index
        self.point_codes = [self.encode(p) for p in pts]
        self._index = {p: i for i, p in enumerate(pts)}

    def __repr__(self) -> str:
        return f"PG(F_{self.q}^{self.k})"

    def encode(self, v: Sequence[int]) -> int:
        return sum(int(c) * w for c, w in zip(v, self.place))

    def point_index(self, v: Sequence[int]) -> int:
        if len(v) != self.k:
            raise DimensionMismatch(f"vector of length {len(v)} in PG(F_q^{self.k})")
        idx = int(self.vec_index[self.encode(v)])
        if idx < 0:
            raise ZeroVector("the zero vector is not a projective point")
        return idx

    def rank_of_mask(self, mask: int) -> int:
        """Dimension of the span of the points in ``mask``."""
        if not mask:
            return 0
        if self.q == 2:
            return rank_bits(i + 1 for i in mask_indices(mask))
        rows = self.point_array[mask_indices(mask)]
        return rref(MatrixGF(self.field, rows))[1]

    def incidence(self, dual: np.ndarray) -> int:
        """Mask of points annihilated by every row of ``dual`` (l x k)."""
        if dual.shape[0] == 0:
            return self.full_mask
        return mask_from_bool(~self._products(dual[None]).any(axis=2)[0])

    def _products(self, duals: np.ndarray) -> np.ndarray:
        # duals: (S, l, k) -> (S, N, l) array of <point, form> values
        f = self.field
        P = self.point_array
        if f.is_prime:
            return np.einsum("nk,slk->snl", P.astype(np.int64), duals.astype(np.int64)) % f.p
        acc = np.zeros((duals.shape[0], P.shape[0], duals.shape[1]), dtype=np.uint8)
        for i in range(self.k):
            acc = f.add_table[acc, f.mul_table[P[None, :, i, None], duals[:, None, :, i]]]
        return acc

    def subspaces(self, l: int) -> tuple[SubspaceRecord, ...]:
        return _subspaces(self.q, self.k, l)

    def hyperplanes(self) -> tuple[SubspaceRecord, ...]:
        return _subspaces(self.q, self.k, 1)


@lru_cache(maxsize=None)
def space(q: int, k: int) -> ProjectiveSpace:
    return ProjectiveSpace(field_new(q), k)


def _rref_shapes(q: int, k: int, l: int) -> list[np.ndarray]:
    out = []
    for pivots in itertools.combinations(range(k), l):
        free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, k) if j not in pivots]
        base = np.zeros((l, k), dtype=np.uint8)
        for i, p in enumerate(pivots):
            base[i, p] = 1
        for values in itertools.product(range(q), repeat=len(free)):
            m = base.copy()
            for (i, j), x in zip(free, values):
                m[i, j] = x
            out.append(m)
    out.sort(key=lambda m: tuple(m.ravel().tolist()))
    return out


@lru_cache(maxsize=None)
def _subspaces(q: int, k: int, l: int) -> tuple[SubspaceRecord, ...]:
    if not 0 <= l <= k:
        raise ValueError(f"codimension {l} out of range for k={k}")
    pg = space(q, k)
    f = pg.field
    duals = _rref_shapes(q, k, l)
    if l == 0:
        return (SubspaceRecord(0, MatrixGF.zeros(f, 0, k), pg.full_mask),)
    stacked = np.stack(duals)
    records = []
    chunk = max(1, 2_000_000 // (pg.num_points * l))
    for start in range(0, len(duals), chunk):
        prods = pg._products(stacked[start:start + chunk])
        inc = ~prods.any(axis=2)
        for d, row in zip(duals[start:start + chunk], inc):
            records.append(SubspaceRecord(l, MatrixGF(f, d), mask_from_bool(row)))
    return tuple(records)


def pg_points(f: FieldSpec, k: int) -> list[tuple[int, ...]]:
    return list(space(f.q, k).points)


def point_index(f: FieldSpec, k: int, v: Sequence[int]) -> int:
    return space(f.q, k).point_index(v)


def hyperplanes(f: FieldSpec, k: int) -> list[SubspaceRecord]:
    if k < 2:
        raise ValueError("hyperplanes need k >= 2")
    return list(space(f.q, k).hyperplanes())


def subspaces_codim(f: FieldSpec, k: int, l: int) -> Iterator[SubspaceRecord]:
    """Each codim-l subspace once, ordered by its rref dual basis."""
    if not 0 <= l <= k:
        raise ValueError(f"need 0 <= l <= k, got k={k}, l={l}")
    return iter(space(f.q, k).subspaces(l))


def subspace_from_dual(f: FieldSpec, k: int, dual: MatrixGF) -> SubspaceRecord:
    """Record for the subspace annihilated by the rows of ``dual``."""
    if dual.cols != k:
        raise DimensionMismatch(f"dual basis has {dual.cols} columns, expected {k}")
    R, r, _ = rref(dual)
    R = MatrixGF(f, R.data[:r])
    return SubspaceRecord(r, R, space(f.q, k).incidence(R.data))


@dataclass(frozen=True)
class PointSet:
    """A set (bit mask) or multiset (multiplicity vector) of points of PG(F_q^k)."""

    field: FieldSpec
    k: int
    kind: str
    membership: int | tuple[int, ...]

    @classmethod
    def from_indices(cls, f: FieldSpec, k: int, indices: Sequence[int]) -> PointSet:
        n = space(f.q, k).num_points
        counts = [0] * n
        for i in indices:
            counts[i] += 1
        if max(counts, default=0) <= 1:
            return cls(f, k, "set", sum(1 << i for i in set(indices)))
        return cls(f, k, "multiset", tuple(counts))

    @property
    def cardinality(self) -> int:
        if self.kind == "set":
            return self.membership.bit_count()
        return sum(self.membership)

    @property
    def support_mask(self) -> int:
        if self.kind == "set":
            return self.membership
        return sum(1 << i for i, c in enumerate(self.membership) if c)

    def multiplicity(self, i: int) -> int:
        if self.kind == "set":
            return self.membership >> i & 1
        return self.membership[i]

    def count_in(self, mask: int) -> int:
        """Points (with multiplicity) lying in the subspace with incidence ``mask``."""
        if self.kind == "set":
            return (self.membership & mask).bit_count()
        return sum(self.membership[i] for i in mask_indices(mask))

    def indices(self) -> list[int]:
        return mask_indices(self.support_mask)
