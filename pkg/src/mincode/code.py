"""Linear codes as point multisets of PG(F_q^k).

Column i of a generator matrix G spans a point <G_i>.  A nonzero codeword
m @ G vanishes exactly on the columns lying in the hyperplane with dual
vector m, and an l-dimensional subcode with coefficient matrix M vanishes on
the columns inside the codim-l subspace {x : M x = 0}.  Minimality of a
codeword (resp. support-minimality of a subcode) is then a rank condition on
the points of the code inside that subspace.

M(C) counts minimal codewords per hyperplane, i.e. up to nonzero scalar
multiples; the number of minimal codewords themselves is (q - 1) * M(C).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import NotACodeword, RankDeficient, TooLarge, ZeroColumn
from .geometry import (PointSet, ProjectiveSpace, SubspaceRecord, mask_indices, space,
                       subspace_from_dual)
from .gf import FieldSpec
from .linalg import MatrixGF, matmul, rank, solve_left

ORACLE_LIMIT = 1 << 20


@dataclass(frozen=True, eq=False)
class LinearCode:
    field: FieldSpec
    gen: MatrixGF
    columns: tuple[int, ...]
    points: PointSet

    @property
    def k(self) -> int:
        return self.gen.rows

    @property
    def n(self) -> int:
        return self.gen.cols

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def is_projective(self) -> bool:
        return self.points.kind == "set"

    @property
    def space(self) -> ProjectiveSpace:
        return space(self.field.q, self.k)

    @property
    def mask(self) -> int:
        """Bit mask of the distinct points of the code."""
        return self.points.support_mask

    def __repr__(self) -> str:
        return f"LinearCode([{self.n},{self.k}]_{self.q})"


@dataclass(frozen=True)
class MinimalityReport:
    hyperplane: SubspaceRecord
    support: tuple[int, ...]
    weight: int
    minimal: bool
    witness_codim2: SubspaceRecord | None = None


def code_from_matrix(f: FieldSpec, gen: MatrixGF | list[list[int]]) -> LinearCode:
    if not isinstance(gen, MatrixGF):
        gen = MatrixGF.from_rows(f, gen)
    k, n = gen.shape
    if k < 1 or rank(gen) < k:
        raise RankDeficient(f"generator matrix of {k} rows has rank {rank(gen)}")
    if n < k:
        raise RankDeficient(f"{k} rows cannot be independent in length {n}")
    zero = [j for j in range(n) if not gen.data[:, j].any()]
    if zero:
        raise ZeroColumn(f"zero column(s) {zero}: effective length must equal n")
    pg = space(f.q, k)
    columns = tuple(pg.point_index(gen.data[:, j].tolist()) for j in range(n))
    return LinearCode(f, gen, columns, PointSet.from_indices(f, k, columns))


def code_from_points(f: FieldSpec, k: int, points: int | list[int]) -> LinearCode:
    """Projective code whose columns are the given points in index order."""
    indices = mask_indices(points) if isinstance(points, int) else sorted(set(points))
    pg = space(f.q, k)
    gen = MatrixGF(f, pg.point_array[indices].T.reshape(k, len(indices)))
    return code_from_matrix(f, gen)


def reduce_to_projective(c: LinearCode) -> tuple[LinearCode, int]:
    """Drop repeated projective columns (keeping first occurrences)."""
    if c.is_projective:
        return c, 0
    seen: set[int] = set()
    keep = []
    for j, p in enumerate(c.columns):
        if p not in seen:
            seen.add(p)
            keep.append(j)
    reduced = code_from_matrix(c.field, MatrixGF(c.field, c.gen.data[:, keep]))
    return reduced, c.n - len(keep)


# --- minimal codewords -------------------------------------------------------

def count_minimal_mask(pg: ProjectiveSpace, mask: int) -> int:
    """M(C) for the projective code with point mask ``mask`` in ``pg``."""
    target = pg.k - 1
    return sum(pg.rank_of_mask(mask & h.incident) == target for h in pg.hyperplanes())


def nonminimal_hyperplanes_mask(pg: ProjectiveSpace, mask: int) -> list[SubspaceRecord]:
    target = pg.k - 1
    return [h for h in pg.hyperplanes() if pg.rank_of_mask(mask & h.incident) != target]


def _witness(pg: ProjectiveSpace, h: SubspaceRecord, section: int) -> SubspaceRecord:
    for u in pg.subspaces(2):
        if u.incident & ~h.incident == 0 and section & ~u.incident == 0:
            return u
    raise AssertionError("non-minimal hyperplane without a codim-2 witness")


def is_minimal_hyperplane(c: LinearCode, h: SubspaceRecord) -> MinimalityReport:
    pg = c.space
    section = c.mask & h.incident
    support = tuple(i for i, p in enumerate(c.columns) if not h.incident >> p & 1)
    minimal = pg.rank_of_mask(section) == c.k - 1
    witness = None if minimal else _witness(pg, h, section)
    return MinimalityReport(h, support, len(support), minimal, witness)


def minimality_reports(c: LinearCode) -> list[MinimalityReport]:
    return [is_minimal_hyperplane(c, h) for h in c.space.hyperplanes()]


def count_minimal(c: LinearCode) -> int:
    return count_minimal_mask(c.space, c.mask)


def min_distance(c: LinearCode) -> int:
    return c.n - max(c.points.count_in(h.incident) for h in c.space.hyperplanes())


def weight_of_hyperplane(c: LinearCode, h: SubspaceRecord) -> int:
    return c.n - c.points.count_in(h.incident)


# --- brute-force oracles -----------------------------------------------------

def _all_messages(q: int, k: int) -> np.ndarray:
    return np.array(list(itertools.product(range(q), repeat=k)), dtype=np.uint8).reshape(-1, k)


def _combine(f: FieldSpec, coeffs: np.ndarray, rows: np.ndarray) -> np.ndarray:
    acc = np.zeros((coeffs.shape[0], rows.shape[1]), dtype=np.uint8)
    for i in range(rows.shape[0]):
        acc = f.add_table[acc, f.mul_table[coeffs[:, i][:, None], rows[i][None, :]]]
    return acc


def _support_masks(c: LinearCode, limit: int) -> list[int]:
    """Support mask of every codeword, indexed by the base-q code of its message."""
    if c.q ** c.k > limit:
        raise TooLarge(f"{c.q}^{c.k} codewords exceed the oracle limit {limit}")
    nonzero = _combine(c.field, _all_messages(c.q, c.k), c.gen.data) != 0
    return [int.from_bytes(np.packbits(row, bitorder="little").tobytes(), "little")
            for row in nonzero]


def _has_proper_subset(supports: list[int]) -> dict[int, bool]:
    """For each distinct support, whether another distinct support lies strictly inside it."""
    distinct = sorted(set(supports))
    if not distinct:
        return {}
    words = max(1, (distinct[-1].bit_length() + 63) // 64)
    raw = b"".join(s.to_bytes(8 * words, "little") for s in distinct)
    arr = np.frombuffer(raw, dtype=np.uint64).reshape(len(distinct), words)
    nonzero = arr.any(axis=1)
    out = np.zeros(len(arr), dtype=bool)
    step = max(1, (1 << 22) // (len(arr) * words))
    for start in range(0, len(arr), step):
        block = arr[start:start + step, None, :]
        subset = ((arr[None, :, :] & ~block) == 0).all(axis=2)
        equal = (arr[None, :, :] == block).all(axis=2)
        out[start:start + step] = (subset & ~equal & nonzero[None, :]).any(axis=1)
    return dict(zip(distinct, out.tolist()))


def oracle_count_minimal(c: LinearCode, limit: int = ORACLE_LIMIT) -> int:
    """M(C) by enumerating codewords and comparing supports pairwise."""
    supports = _support_masks(c, limit)
    covered = _has_proper_subset(supports)
    total = sum(1 for s in supports if s and not covered[s])
    if total % (c.q - 1):
        raise AssertionError("minimal codewords are not closed under scalars")
    return total // (c.q - 1)


def _message_subspaces(q: int, k: int, l: int):
    """Every l-dim subspace of F_q^k as a tuple of rref basis rows."""
    for pivots in itertools.combinations(range(k), l):
        slots = [(i, j) for i in range(l) for j in range(pivots[i] + 1, k) if j not in pivots]
        for values in itertools.product(range(q), repeat=len(slots)):
            rows = [[0] * k for _ in range(l)]
            for i, p in enumerate(pivots):
                rows[i][p] = 1
            for (i, j), v in zip(slots, values):
                rows[i][j] = v
            yield rows


def oracle_subcode_supports(c: LinearCode, l: int, limit: int = ORACLE_LIMIT) -> list[int]:
    """Support mask of every l-dimensional subcode, enumerated directly."""
    masks = _support_masks(c, limit)
    place = [c.q ** (c.k - 1 - i) for i in range(c.k)]
    out = []
    for rows in _message_subspaces(c.q, c.k, l):
        s = 0
        for r in rows:
            s |= masks[sum(x * w for x, w in zip(r, place))]
        out.append(s)
    return out


def oracle_count_support_minimal(c: LinearCode, l: int, limit: int = ORACLE_LIMIT) -> int:
    supports = oracle_subcode_supports(c, l, limit)
    covered = _has_proper_subset(supports)
    return sum(1 for s in supports if not covered[s])


def oracle_ghw(c: LinearCode, l: int, limit: int = ORACLE_LIMIT) -> int:
    return min(s.bit_count() for s in oracle_subcode_supports(c, l, limit))


# --- subcodes -----------------------------------------------------------------

def subspace_of_subcode(c: LinearCode, d_basis: MatrixGF) -> SubspaceRecord:
    """The codim-l subspace W = {x : M x = 0} where ``d_basis == M @ G``."""
    l = d_basis.rows
    if rank(d_basis) < l:
        raise RankDeficient(f"subcode basis of {l} rows is dependent")
    coeffs = solve_left(c.gen, d_basis)
    if coeffs is None or matmul(coeffs, c.gen) != d_basis:
        raise NotACodeword("a basis row does not lie in the code")
    return subspace_from_dual(c.field, c.k, coeffs)


def subcode_of_subspace(c: LinearCode, w: SubspaceRecord) -> MatrixGF:
    return matmul(w.dual_basis, c.gen)


def subcode_support(c: LinearCode, w: SubspaceRecord) -> tuple[tuple[int, ...], int]:
    support = tuple(i for i, p in enumerate(c.columns) if not w.incident >> p & 1)
    return support, len(support)


def is_support_minimal(c: LinearCode, w: SubspaceRecord) -> bool:
    return c.space.rank_of_mask(c.mask & w.incident) == c.k - w.codim


def count_support_minimal_mask(pg: ProjectiveSpace, mask: int, l: int) -> int:
    target = pg.k - l
    return sum(pg.rank_of_mask(mask & w.incident) == target for w in pg.subspaces(l))


def count_support_minimal(c: LinearCode, l: int) -> int:
    """M^l(C), counting subcodes (equivalently codim-l subspaces)."""
    if not 1 <= l <= c.k:
        raise ValueError(f"need 1 <= l <= k, got l={l}")
    return count_support_minimal_mask(c.space, c.mask, l)


def ghw(c: LinearCode, l: int) -> int:
    """Generalized Hamming weight d_l = n - max |P cap W| over codim-l W."""
    if not 1 <= l <= c.k:
        raise ValueError(f"need 1 <= l <= k, got l={l}")
    return c.n - max(c.points.count_in(w.incident) for w in c.space.subspaces(l))


def weight_hierarchy(c: LinearCode) -> list[int]:
    return [ghw(c, l) for l in range(1, c.k + 1)]
