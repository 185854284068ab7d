"""alpha_q(k, r): the fewest points needed to hit r hyperplane-minus-subspace pieces.

A cover of size r is a choice of r distinct codim-l subspaces H_1..H_r and
codim-(l+1) subspaces U_i <= H_i; its cardinality is |U (H_i minus U_i)|.
A projective code whose point set avoids such a union has at least r
non-minimal codewords (l = 1) or non-support-minimal subcodes (l > 1), which
turns exact alpha values into lower bounds on M(C) and, inside the windows
where consecutive alphas differ, into exact values of m_q(n, k).

Only alpha values that are exact (closed form or exhaustive search) feed the
bounds; the dual-arc construction is an upper bound and is tagged as such.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np

from .code import LinearCode, code_from_points, nonminimal_hyperplanes_mask
from .errors import DegenerateComplement, OutOfRange, TooLarge
from .geometry import SubspaceRecord, gaussian_binomial, space, subspace_from_dual
from .gf import field_new
from .linalg import MatrixGF, span_dim

CLOSED = "closed"
BRUTE = "brute"
CONSTRUCTION = "construction-upper-bound"

BRUTE_MAX_SUBSPACES = 40
BRUTE_MAX_R = 4
# refuse runs whose unpruned tree, after fixing the first pair, has more vectorized leaf steps
BRUTE_MAX_WORK = 5 * 10**5


@dataclass(frozen=True)
class AlphaConfig:
    q: int
    k: int
    r: int
    l: int = 1

    def __post_init__(self):
        field_new(self.q)
        if self.k < 2:
            raise OutOfRange(f"k={self.k}: alpha needs k >= 2")
        if not 1 <= self.l <= self.k - 1:
            raise OutOfRange(f"codimension l={self.l} must satisfy 1 <= l < k")
        if not 0 <= self.r <= gaussian_binomial(self.k, self.l, self.q):
            raise OutOfRange(f"r={self.r} outside 0..[{self.k};{self.l}]_{self.q}")


@dataclass(frozen=True)
class CoverWitness:
    q: int
    k: int
    l: int
    hyperplanes: tuple[SubspaceRecord, ...]
    inner: tuple[SubspaceRecord, ...]
    union_points: int = field(default=0)

    @classmethod
    def build(cls, q: int, k: int, l: int, hyperplanes, inner) -> CoverWitness:
        union = 0
        for h, u in zip(hyperplanes, inner):
            union |= h.incident & ~u.incident
        w = cls(q, k, l, tuple(hyperplanes), tuple(inner), union)
        w.validate()
        return w

    @property
    def r(self) -> int:
        return len(self.hyperplanes)

    @property
    def cardinality(self) -> int:
        return self.union_points.bit_count()

    def validate(self) -> None:
        if len(self.hyperplanes) != len(self.inner):
            raise ValueError("witness needs one inner subspace per hyperplane")
        if len(set(self.hyperplanes)) != len(self.hyperplanes):
            raise ValueError("witness hyperplanes must be pairwise distinct")
        union = 0
        for h, u in zip(self.hyperplanes, self.inner):
            if h.codim != self.l or u.codim != self.l + 1:
                raise ValueError("witness subspaces have the wrong codimension")
            if not h.contains(u):
                raise ValueError(f"{u} is not contained in {h}")
            union |= h.incident & ~u.incident
        if union != self.union_points:
            raise ValueError("union_points does not match the witness pairs")


def alpha_closed(q: int, k: int, r: int) -> int | None:
    """Closed-form alpha_q(k, r) where known, else None."""
    AlphaConfig(q, k, r)
    if r == 0:
        return 0
    if k == 2:
        return r
    if r == 1:
        return q ** (k - 2)
    if r == 2:
        return 2 * q ** (k - 2) - q ** (k - 3)
    if r <= (q + 1 if q % 2 == 0 else q):
        return r * q ** (k - 2) - comb(r, 2) * q ** (k - 3)
    return None


def _brute_work(n_sub: int, n_inner: int, r: int) -> int:
    # leaves after fixing the first pair, with the last level evaluated in one vector op
    return comb(n_sub - 1, max(r - 2, 0)) * n_inner ** max(r - 2, 0)


def alpha_brute(q: int, k: int, r: int, l: int = 1, *,
                max_subspaces: int = BRUTE_MAX_SUBSPACES, max_r: int = BRUTE_MAX_R,
                max_work: int = BRUTE_MAX_WORK) -> tuple[int, CoverWitness]:
    """Exact alpha^l_q(k, r) by exhaustive branch and bound, with an optimal witness.

    The group PGL(k, q) is transitive on flags U < W, so the first pair is fixed.
    """
    AlphaConfig(q, k, r, l)
    pg = space(q, k)
    if r == 0:
        return 0, CoverWitness.build(q, k, l, (), ())
    subs = pg.subspaces(l)
    inner = pg.subspaces(l + 1)
    if len(subs) > max_subspaces or r > max_r:
        raise TooLarge(f"alpha brute force guard: [{k};{l}]_{q}={len(subs)}, r={r}")
    pairs = [(wi, u) for wi, w in enumerate(subs) for u in inner if w.contains(u)]
    per_w = len(pairs) // len(subs)
    if _brute_work(len(subs), per_w, r) > max_work:
        raise TooLarge(f"alpha brute force would visit too many covers (q={q}, k={k}, r={r})")

    words = (pg.num_points + 63) // 64
    w_of = np.array([wi for wi, _ in pairs])
    diffs_int = [subs[wi].incident & ~u.incident for wi, u in pairs]
    diffs = np.array([[(d >> (64 * j)) & ((1 << 64) - 1) for j in range(words)]
                      for d in diffs_int], dtype=np.uint64)

    def to_words(x: int) -> np.ndarray:
        return np.array([(x >> (64 * j)) & ((1 << 64) - 1) for j in range(words)], dtype=np.uint64)

    best = [pg.num_points + 1, None]

    def leaf_counts(cur: int, last_w: int):
        sel = np.nonzero(w_of > last_w)[0]
        if sel.size == 0:
            return sel, np.zeros(0, dtype=np.int64)
        merged = diffs[sel] | to_words(cur)[None, :]
        return sel, np.bitwise_count(merged).sum(axis=1, dtype=np.int64)

    def dfs(picks: list[int], cur: int, remaining: int):
        last_w = int(w_of[picks[-1]])
        sel, counts = leaf_counts(cur, last_w)
        if sel.size == 0:
            return
        if remaining == 1:
            j = int(np.argmin(counts))
            if counts[j] < best[0]:
                best[0], best[1] = int(counts[j]), picks + [int(sel[j])]
            return
        if counts.min() >= best[0]:
            return
        for j in np.argsort(counts, kind="stable"):
            if counts[j] >= best[0]:
                break
            c = int(sel[j])
            if w_of[c] + remaining - 1 >= len(subs):
                continue
            dfs(picks + [c], cur | diffs_int[c], remaining - 1)

    first = 0
    if r == 1:
        best[0], best[1] = diffs_int[first].bit_count(), [first]
    else:
        dfs([first], diffs_int[first], r - 1)
    if best[1] is None:
        raise OutOfRange(f"no cover with r={r} distinct subspaces")
    chosen = [pairs[c] for c in best[1]]
    witness = CoverWitness.build(q, k, l, [subs[wi] for wi, _ in chosen], [u for _, u in chosen])
    assert witness.cardinality == best[0]
    return best[0], witness


@lru_cache(maxsize=None)
def alpha_value(q: int, k: int, r: int, l: int = 1, *,
                max_subspaces: int = BRUTE_MAX_SUBSPACES) -> tuple[int, str] | None:
    """Certified (exact) alpha^l_q(k, r) with its provenance, or None if unavailable."""
    if l == 1:
        closed = alpha_closed(q, k, r)
        if closed is not None:
            return closed, CLOSED
    try:
        return alpha_brute(q, k, r, l, max_subspaces=max_subspaces)[0], BRUTE
    except TooLarge:
        return None


def arc(q: int) -> list[tuple[int, int, int]]:
    """The conic {(1, t, t^2)} + (0, 0, 1), plus the nucleus (0, 1, 0) when q is even."""
    f = field_new(q)
    points = [(1, t, f.mul(t, t)) for t in range(q)] + [(0, 0, 1)]
    if q % 2 == 0:
        points.append((0, 1, 0))
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            for m in range(j + 1, len(points)):
                if span_dim(f, [points[i], points[j], points[m]]) != 3:
                    raise AssertionError(f"arc points {i}, {j}, {m} are collinear")
    return points


def construction_size(q: int, k: int, r: int) -> int:
    return r * q ** (k - 2) - comb(r, 2) * q ** (k - 3)


def alpha_construction(q: int, k: int, r: int) -> CoverWitness:
    """Cover of size r q^(k-2) - C(r,2) q^(k-3) built from a dual (r+1)-arc.

    Everything lives over X = {x_1 = x_2 = x_3 = 0}.  The arc points, read as
    lines a x_1 + b x_2 + c x_3 = 0 of the quotient plane, form a dual arc
    L_1..L_{r+1}; H_i is the preimage of L_i and U_i the preimage of the point
    L_i cap L_{r+1}.
    """
    f = field_new(q)
    limit = q + 1 if q % 2 == 0 else q
    if k < 3 or r < 0 or r > max(limit, 2):
        raise OutOfRange(f"dual-arc construction needs k >= 3 and r <= {max(limit, 2)}")
    lines = arc(q)[:r + 1]
    pad = (0,) * (k - 3)
    hyps, inner = [], []
    for i in range(r):
        li, last = lines[i] + pad, lines[r] + pad
        hyps.append(subspace_from_dual(f, k, MatrixGF.from_rows(f, [li])))
        inner.append(subspace_from_dual(f, k, MatrixGF.from_rows(f, [li, last])))
    witness = CoverWitness.build(q, k, 1, hyps, inner)
    if witness.cardinality != construction_size(q, k, r):
        raise AssertionError(f"construction produced {witness.cardinality} points")
    return witness


def complement_code(q: int, k: int, witness: CoverWitness) -> LinearCode:
    """Projective code on the points outside the witness union."""
    pg = space(q, k)
    mask = pg.full_mask & ~witness.union_points
    if pg.rank_of_mask(mask) < k:
        raise DegenerateComplement("complement of the witness does not span F_q^k")
    code = code_from_points(field_new(q), k, mask)
    if witness.l == 1:
        bad = set(nonminimal_hyperplanes_mask(pg, mask))
        missing = [h for h in witness.hyperplanes if h not in bad]
        if missing:
            raise AssertionError(f"witness hyperplanes {missing} are minimal in the complement")
    return code


def minimal_code_length_bound(q: int, k: int) -> int:
    """Shortest length of a projective [n, k]_q code all of whose codewords are minimal."""
    if k < 2:
        raise OutOfRange("k must be at least 2")
    return gaussian_binomial(k, 1, q) - q ** (k - 2) + 1


def _least_r(q: int, k: int, l: int, n: int, subs: int) -> tuple[int | None, bool]:
    """Least r with n > [k;1]_q - alpha^l(k, r) over certified alphas; also whether any was certified.

    A code with r non-support-minimal codim-l subspaces misses a whole cover,
    so n <= [k;1]_q - alpha^l(k, r).
    """
    total = gaussian_binomial(k, 1, q)
    r_cap = BRUTE_MAX_R if l > 1 else max(BRUTE_MAX_R, q + 1)
    certified = False
    for r in range(1, min(subs, r_cap) + 1):
        value = alpha_value(q, k, r, l)
        if value is None:
            continue
        certified = True
        if n > total - value[0]:
            return r, True
    return None, certified


def bound_M(q: int, k: int, n: int) -> int:
    """Lower bound on M(C) for every projective [n, k]_q code (0 if nothing certifies)."""
    total = gaussian_binomial(k, 1, q)
    if not k <= n <= total:
        raise OutOfRange(f"n={n} outside {k}..{total}")
    if k == 1:
        return 1
    r, _ = _least_r(q, k, 1, n, total)
    return 0 if r is None else total - r + 1


def exact_m_window(q: int, k: int, n: int) -> tuple[int, int] | None:
    """``(m_q(n, k), r)`` when n lies in a window alpha(r-1) ... alpha(r), else None."""
    total = gaussian_binomial(k, 1, q)
    if not (2 <= k <= n <= total):
        raise OutOfRange(f"need 2 <= k <= n <= {total}")
    prev = 0
    for r in range(1, total + 1):
        if n > total - prev:
            return None
        value = alpha_value(q, k, r)
        if value is None:
            return None
        if total - value[0] < n:
            return total - r + 1, r
        prev = value[0]
    return None


def exact_m(q: int, k: int, n: int) -> int | None:
    window = exact_m_window(q, k, n)
    return None if window is None else window[0]


def bound_Ml(q: int, k: int, l: int, n: int) -> int:
    """Lower bound on M^l(C) for projective [n, k]_q codes from exhaustive alpha^l."""
    total = gaussian_binomial(k, 1, q)
    if not 1 <= l <= k:
        raise OutOfRange(f"need 1 <= l <= k, got l={l}")
    if not k <= n <= total:
        raise OutOfRange(f"n={n} outside {k}..{total}")
    if l == 1:
        return bound_M(q, k, n)
    if l == k:
        return 1  # the whole code is the only k-dimensional subcode
    subs = gaussian_binomial(k, l, q)
    r, certified = _least_r(q, k, l, n, subs)
    if not certified:
        raise TooLarge(f"no alpha^{l}_{q}({k}, r) value is within the brute-force guard")
    return 0 if r is None else subs - r + 1
